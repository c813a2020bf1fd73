#include "mppc/bin_packing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "mppc/errors.hpp"

namespace mppc {

namespace {

constexpr double kLoadTol = 1e-9;

void require_sizes(const std::vector<double>& quantities, double capacity) {
    if (capacity <= 0.0) throw ParameterError("bin capacity must be positive");
    for (std::size_t i = 0; i < quantities.size(); ++i) {
        if (quantities[i] < 0.0)
            throw ParameterError("negative item size at index " + std::to_string(i));
        if (quantities[i] > capacity + kLoadTol)
            throw ValidationError("item " + std::to_string(i) + " larger than bin capacity");
    }
}

// Indices sorted by decreasing size, equal sizes by lower index.
std::vector<int> decreasing_order(const std::vector<double>& quantities) {
    std::vector<int> order(quantities.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (quantities[a] != quantities[b]) return quantities[a] > quantities[b];
        return a < b;
    });
    return order;
}

bool fits(const Packing& packing, int bin, double size, double capacity) {
    return packing.loads[bin] + size <= capacity + kLoadTol;
}

void place(Packing& packing, int bin, int item, double size) {
    packing.bins[bin].push_back(item);
    packing.loads[bin] += size;
}

int open_bin(Packing& packing) {
    packing.bins.emplace_back();
    packing.loads.push_back(0.0);
    return packing.bin_count() - 1;
}

void first_fit(Packing& packing, const std::vector<int>& items,
               const std::vector<double>& quantities, double capacity) {
    for (int item : items) {
        int target = -1;
        for (int bin = 0; bin < packing.bin_count(); ++bin)
            if (fits(packing, bin, quantities[item], capacity)) {
                target = bin;
                break;
            }
        if (target < 0) target = open_bin(packing);
        place(packing, target, item, quantities[item]);
    }
}

// Exact cover of a rounded instance given as (size, count) classes.
// Returns -1 when the memoized search would exceed the state budget.
class GroupedExactPacker {
public:
    GroupedExactPacker(std::vector<double> sizes, std::vector<int> counts, double capacity)
        : sizes_(std::move(sizes)), counts_(std::move(counts)), capacity_(capacity) {}

    static constexpr long kStateBudget = 10'000'000;

    long state_space() const {
        long states = 1;
        for (int c : counts_) {
            states *= static_cast<long>(c) + 1;
            if (states > kStateBudget) return states;
        }
        return states;
    }

    // Per-class counts packed per bin, one vector per bin.
    std::vector<std::vector<int>> solve() {
        const int classes = static_cast<int>(sizes_.size());
        strides_.assign(classes, 1);
        for (int c = 1; c < classes; ++c)
            strides_[c] = strides_[c - 1] * (counts_[c - 1] + 1);
        best_.assign(static_cast<std::size_t>(state_space()), -1);

        long start = 0;
        for (int c = 0; c < classes; ++c) start += strides_[c] * counts_[c];
        bins_needed(start);

        std::vector<std::vector<int>> bins;
        long state = start;
        while (state != 0) {
            const auto& config = choice_.at(state);
            bins.push_back(config);
            long next = state;
            for (int c = 0; c < classes; ++c) next -= strides_[c] * config[c];
            state = next;
        }
        return bins;
    }

private:
    int bins_needed(long state) {
        if (state == 0) return 0;
        if (best_[state] >= 0) return best_[state];
        int best = std::numeric_limits<int>::max();
        std::vector<int> config(sizes_.size(), 0);
        std::vector<int> remaining(sizes_.size());
        long s = state;
        for (std::size_t c = 0; c < sizes_.size(); ++c) {
            remaining[c] = static_cast<int>(s % (counts_[c] + 1));
            s /= counts_[c] + 1;
        }
        int first = 0;
        while (first < static_cast<int>(remaining.size()) && remaining[first] == 0) ++first;
        enumerate_configs(state, remaining, config, first, first, 0.0, best);
        best_[state] = best;
        return best;
    }

    // Enumerates the bin holding an item of the first nonempty class (every
    // packing has one), restricted to maximal configurations: a leftover
    // item that still fits could always be moved in without adding a bin.
    void enumerate_configs(long state, const std::vector<int>& remaining,
                           std::vector<int>& config, int first, int cls, double load,
                           int& best) {
        if (cls == static_cast<int>(sizes_.size())) {
            for (std::size_t c = 0; c < sizes_.size(); ++c)
                if (remaining[c] > config[c] &&
                    sizes_[c] <= capacity_ - load + kLoadTol)
                    return; // not maximal
            long next = state;
            for (std::size_t c = 0; c < sizes_.size(); ++c)
                next -= strides_[c] * config[c];
            const int sub = bins_needed(next);
            if (sub + 1 < best) {
                best = sub + 1;
                choice_[state] = config;
            }
            return;
        }
        const int max_here = std::min(
            remaining[cls],
            static_cast<int>(std::floor((capacity_ - load + kLoadTol) / sizes_[cls])));
        const int lo = cls == first ? 1 : 0;
        for (int take = max_here; take >= lo; --take) {
            config[cls] = take;
            enumerate_configs(state, remaining, config, first, cls + 1,
                              load + take * sizes_[cls], best);
        }
        config[cls] = 0;
    }

    std::vector<double> sizes_;
    std::vector<int> counts_;
    double capacity_;
    std::vector<long> strides_;
    std::vector<int> best_;
    std::map<long, std::vector<int>> choice_;
};

} // namespace

Packing pack_ffd(const std::vector<double>& quantities, double capacity) {
    require_sizes(quantities, capacity);
    Packing packing;
    first_fit(packing, decreasing_order(quantities), quantities, capacity);
    return packing;
}

Packing pack_mffd(const std::vector<double>& quantities, double capacity) {
    require_sizes(quantities, capacity);
    Packing packing;

    const auto order = decreasing_order(quantities);
    std::vector<int> large, medium, small;
    std::unordered_set<int> placed;
    for (int item : order) {
        const double q = quantities[item];
        if (q > capacity / 2.0)
            large.push_back(item);
        else if (q > capacity / 3.0)
            medium.push_back(item);
        else if (q > capacity / 6.0)
            small.push_back(item);
    }

    // One bin per large item, largest first.
    for (int item : large) place(packing, open_bin(packing), item, quantities[item]);

    auto take = [&](std::vector<int>& pool, int pos) {
        const int item = pool[pos];
        pool.erase(pool.begin() + pos);
        placed.insert(item);
        return item;
    };

    // Forward pass: a medium item per large bin where the smallest medium
    // fits; place the largest medium that fits.
    std::vector<bool> got_medium(packing.bin_count(), false);
    for (int bin = 0; bin < packing.bin_count(); ++bin) {
        if (medium.empty()) break;
        if (!fits(packing, bin, quantities[medium.back()], capacity)) continue;
        for (std::size_t m = 0; m < medium.size(); ++m)
            if (fits(packing, bin, quantities[medium[m]], capacity)) {
                const int item = take(medium, static_cast<int>(m));
                place(packing, bin, item, quantities[item]);
                got_medium[bin] = true;
                break;
            }
    }

    // Backward pass over medium-free large bins: the two smallest remaining
    // small items, when they fit together, enter as (smallest, largest that
    // still fits).
    for (int bin = packing.bin_count() - 1; bin >= 0; --bin) {
        if (got_medium[bin] || small.size() < 2) continue;
        const double two_smallest =
            quantities[small[small.size() - 1]] + quantities[small[small.size() - 2]];
        if (packing.loads[bin] + two_smallest > capacity + kLoadTol) continue;
        const int smallest = take(small, static_cast<int>(small.size()) - 1);
        place(packing, bin, smallest, quantities[smallest]);
        for (std::size_t m = 0; m < small.size(); ++m)
            if (fits(packing, bin, quantities[small[m]], capacity)) {
                const int item = take(small, static_cast<int>(m));
                place(packing, bin, item, quantities[item]);
                break;
            }
    }

    // Forward sweep placing the largest remaining item that fits per bin.
    std::vector<int> rest;
    for (int item : order)
        if (!placed.contains(item) && quantities[item] <= capacity / 2.0) rest.push_back(item);
    for (int bin = 0; bin < packing.bin_count(); ++bin) {
        bool progressed = true;
        while (progressed && !rest.empty()) {
            progressed = false;
            if (!fits(packing, bin, quantities[rest.back()], capacity)) break;
            for (std::size_t m = 0; m < rest.size(); ++m)
                if (fits(packing, bin, quantities[rest[m]], capacity)) {
                    const int item = rest[m];
                    rest.erase(rest.begin() + m);
                    place(packing, bin, item, quantities[item]);
                    progressed = true;
                    break;
                }
        }
    }

    // FFD for whatever is left.
    first_fit(packing, rest, quantities, capacity);
    return packing;
}

Packing pack_aptas(const std::vector<double>& quantities, double capacity, double eta,
                   bool* used_fallback) {
    require_sizes(quantities, capacity);
    if (used_fallback) *used_fallback = false;
    if (!(eta > 0.0 && eta < 1.0)) throw ParameterError("eta must lie in (0, 1)");

    const auto order = decreasing_order(quantities);
    std::vector<int> large, small;
    for (int item : order)
        (quantities[item] > eta * capacity ? large : small).push_back(item);

    Packing packing;
    if (!large.empty()) {
        // Linear grouping: groups of ceil(n_L eta^2) along the sorted large
        // items; the first group gets a bin per item, later groups round up
        // to their largest member.
        const int group_size =
            std::max(1, static_cast<int>(std::ceil(large.size() * eta * eta)));
        std::vector<double> class_sizes;
        std::vector<int> class_counts;
        std::vector<std::vector<int>> class_members;
        for (std::size_t start = group_size; start < large.size(); start += group_size) {
            const std::size_t end = std::min(large.size(), start + group_size);
            class_sizes.push_back(quantities[large[start]]);
            class_counts.push_back(static_cast<int>(end - start));
            class_members.emplace_back(large.begin() + start, large.begin() + end);
        }

        GroupedExactPacker exact(class_sizes, class_counts, capacity);
        if (!class_sizes.empty() && exact.state_space() > GroupedExactPacker::kStateBudget) {
            if (used_fallback) *used_fallback = true;
            return pack_mffd(quantities, capacity);
        }

        for (std::size_t i = 0; i < large.size() && i < static_cast<std::size_t>(group_size); ++i)
            place(packing, open_bin(packing), large[i], quantities[large[i]]);

        if (!class_sizes.empty()) {
            // Consume real items per class in sorted order; actual sizes are
            // never above the rounded class size, so every bin stays feasible.
            for (const auto& config : exact.solve()) {
                const int bin = open_bin(packing);
                for (std::size_t c = 0; c < config.size(); ++c)
                    for (int k = 0; k < config[c]; ++k) {
                        const int item = class_members[c].back();
                        class_members[c].pop_back();
                        place(packing, bin, item, quantities[item]);
                    }
            }
        }
    }

    first_fit(packing, small, quantities, capacity);
    return packing;
}

namespace {

// Bin-completion search over item subsets: the largest remaining item is
// packed into a maximal feasible bin (an optimal solution with a maximal
// top bin always exists, since moving a fitting item into it never adds a
// bin), and the residual subsets are memoized.
class BinCompletion {
public:
    BinCompletion(std::vector<double> sizes, double capacity)
        : sizes_(std::move(sizes)), capacity_(capacity) {}

    // Bin contents as positions into the sorted size list.
    std::vector<std::vector<int>> solve() {
        const std::uint32_t full =
            sizes_.size() == 32 ? ~0u : (std::uint32_t{1} << sizes_.size()) - 1;
        bins_needed(full);
        std::vector<std::vector<int>> bins;
        for (std::uint32_t mask = full; mask != 0; mask = mask & ~choice_.at(mask)) {
            std::vector<int> bin;
            const std::uint32_t chosen = choice_.at(mask);
            for (std::size_t i = 0; i < sizes_.size(); ++i)
                if (chosen & (std::uint32_t{1} << i)) bin.push_back(static_cast<int>(i));
            bins.push_back(std::move(bin));
        }
        return bins;
    }

private:
    int bins_needed(std::uint32_t mask) {
        if (mask == 0) return 0;
        if (const auto it = memo_.find(mask); it != memo_.end()) return it->second;

        const int top = std::countr_zero(mask);
        int best = std::numeric_limits<int>::max();
        std::uint32_t best_bin = 0;
        std::uint32_t chosen = std::uint32_t{1} << top;
        complete(mask & ~chosen, top + 1, chosen, capacity_ - sizes_[top],
                 std::numeric_limits<double>::infinity(), best, best_bin);
        memo_.emplace(mask, best);
        choice_.emplace(mask, best_bin);
        return best;
    }

    // Enumerates maximal completions of the top bin; `min_excluded` tracks
    // the smallest item deliberately left out, so maximality at the leaf is
    // residual < min_excluded.
    void complete(std::uint32_t rest, int pos, std::uint32_t chosen, double residual,
                  double min_excluded, int& best, std::uint32_t& best_bin) {
        while (pos < static_cast<int>(sizes_.size()) &&
               (!(rest & (std::uint32_t{1} << pos)) || sizes_[pos] > residual + kLoadTol))
            ++pos;
        if (pos == static_cast<int>(sizes_.size())) {
            if (min_excluded <= residual + kLoadTol) return; // not maximal
            const int sub = bins_needed(rest);
            if (sub + 1 < best) {
                best = sub + 1;
                best_bin = chosen;
            }
            return;
        }
        const std::uint32_t bit = std::uint32_t{1} << pos;
        complete(rest & ~bit, pos + 1, chosen | bit, residual - sizes_[pos],
                 min_excluded, best, best_bin);
        complete(rest, pos + 1, chosen, residual,
                 std::min(min_excluded, sizes_[pos]), best, best_bin);
    }

    std::vector<double> sizes_; // sorted decreasing
    double capacity_;
    std::unordered_map<std::uint32_t, int> memo_;
    std::unordered_map<std::uint32_t, std::uint32_t> choice_;
};

} // namespace

Packing pack_exact(const std::vector<double>& quantities, double capacity) {
    require_sizes(quantities, capacity);
    if (quantities.size() > 20)
        throw SizeLimitError("pack_exact is guarded to 20 items");
    if (quantities.empty()) return {};

    const double total = std::accumulate(quantities.begin(), quantities.end(), 0.0);
    const int volume_bound =
        std::max(1, static_cast<int>(std::ceil(total / capacity - kLoadTol)));

    // A heuristic packing matching the volume bound is already optimal.
    Packing incumbent = pack_mffd(quantities, capacity);
    if (incumbent.bin_count() == volume_bound) {
        for (auto& bin : incumbent.bins) std::sort(bin.begin(), bin.end());
        return incumbent;
    }

    const auto order = decreasing_order(quantities);
    std::vector<double> sorted;
    sorted.reserve(order.size());
    for (int item : order) sorted.push_back(quantities[item]);

    BinCompletion search(sorted, capacity);
    const auto solution = search.solve();
    if (static_cast<int>(solution.size()) >= incumbent.bin_count()) {
        for (auto& bin : incumbent.bins) std::sort(bin.begin(), bin.end());
        return incumbent;
    }
    Packing packing;
    for (const auto& bin : solution) {
        const int b = open_bin(packing);
        for (int pos : bin) place(packing, b, order[pos], quantities[order[pos]]);
        std::sort(packing.bins[b].begin(), packing.bins[b].end());
    }
    return packing;
}

} // namespace mppc
