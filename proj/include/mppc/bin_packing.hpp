#pragma once

#include <vector>

namespace mppc {

// Ordered partition of item indices into capacity-feasible groups.
struct Packing {
    std::vector<std::vector<int>> bins;
    std::vector<double> loads;

    int bin_count() const { return static_cast<int>(bins.size()); }
};

// Classic first-fit decreasing. Ties between equal sizes break toward the
// lower item index. Throws SizeLimitError-style Error when an item exceeds Q.
Packing pack_ffd(const std::vector<double>& quantities, double capacity);

// Modified first-fit decreasing (Johnson-Garey). Items are classified as
// large (> Q/2), medium (Q/3, Q/2], small (Q/6, Q/3] and tiny (<= Q/6);
// medium and paired small items are placed into the large-item bins before
// the remaining items fall through to FFD. Bin count <= floor(71/60 OPT) + 1.
Packing pack_mffd(const std::vector<double>& quantities, double capacity);

// de la Vega-Lueker asymptotic PTAS. Items <= eta*Q are set aside, the rest
// are rounded by linear grouping into at most ceil(1/eta^2) size classes,
// the grouped instance is packed exactly, and the small items are re-added
// first-fit in decreasing order. Bin count <= (1+eta) OPT + 1.
// When the exact grouped-instance search would exceed its state budget the
// packer falls back to MFFD and reports it through `used_fallback`.
Packing pack_aptas(const std::vector<double>& quantities, double capacity, double eta,
                   bool* used_fallback = nullptr);

// Optimal bin count by branch and bound (volume lower bound, identical-
// residual pruning). Guarded to n <= 20.
Packing pack_exact(const std::vector<double>& quantities, double capacity);

} // namespace mppc
