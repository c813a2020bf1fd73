#include "mppc/wspd.hpp"

#include <algorithm>
#include <cmath>

#include "mppc/errors.hpp"

namespace mppc {

double BoundingBox::radius() const {
    return 0.5 * std::hypot(hi_x - lo_x, hi_y - lo_y);
}

namespace {

BoundingBox box_of(const std::vector<Point>& points, const std::vector<int>& idx) {
    BoundingBox box{points[idx[0]].x, points[idx[0]].y, points[idx[0]].x, points[idx[0]].y};
    for (int i : idx) {
        box.lo_x = std::min(box.lo_x, points[i].x);
        box.lo_y = std::min(box.lo_y, points[i].y);
        box.hi_x = std::max(box.hi_x, points[i].x);
        box.hi_y = std::max(box.hi_y, points[i].y);
    }
    return box;
}

bool well_separated(const BoundingBox& a, const BoundingBox& b, double s) {
    const double gap = std::hypot(a.center_x() - b.center_x(), a.center_y() - b.center_y()) -
                       a.radius() - b.radius();
    return gap >= s * 2.0 * std::max(a.radius(), b.radius());
}

} // namespace

SplitTree::SplitTree(const std::vector<Point>& points) : points_(points) {
    if (points_.empty()) throw ParameterError("split tree needs at least one point");
    std::vector<int> all(points_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    root_ = build(std::move(all));
}

int SplitTree::build(std::vector<int> idx) {
    Node node;
    node.box = box_of(points_, idx);
    node.points = idx;
    const int self = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    if (idx.size() == 1) return self;

    const double extent_x = node.box.hi_x - node.box.lo_x;
    const double extent_y = node.box.hi_y - node.box.lo_y;
    std::vector<int> left, right;
    if (extent_x <= 0.0 && extent_y <= 0.0) {
        // All duplicates: split by index parity.
        for (std::size_t i = 0; i < idx.size(); ++i)
            (i % 2 == 0 ? left : right).push_back(idx[i]);
    } else if (extent_x >= extent_y) { // ties toward the x axis
        const double mid = 0.5 * (node.box.lo_x + node.box.hi_x);
        for (int i : idx) (points_[i].x <= mid ? left : right).push_back(i);
    } else {
        const double mid = 0.5 * (node.box.lo_y + node.box.hi_y);
        for (int i : idx) (points_[i].y <= mid ? left : right).push_back(i);
    }

    const int l = build(std::move(left));
    const int r = build(std::move(right));
    nodes_[self].left = l;
    nodes_[self].right = r;
    return self;
}

namespace {

void find_pairs(const SplitTree& tree, int u, int v, double s, std::vector<WspdPair>& out) {
    const auto& nu = tree.node(u);
    const auto& nv = tree.node(v);
    if (well_separated(nu.box, nv.box, s)) {
        out.push_back({nu.points, nv.points});
        return;
    }
    // Split the side with the larger enclosing ball. Two leaves are always
    // separated (both radii are zero), so the chosen side is internal.
    if (!nu.is_leaf() && (nu.box.radius() >= nv.box.radius() || nv.is_leaf())) {
        find_pairs(tree, nu.left, v, s, out);
        find_pairs(tree, nu.right, v, s, out);
    } else {
        find_pairs(tree, u, nv.left, s, out);
        find_pairs(tree, u, nv.right, s, out);
    }
}

void collect(const SplitTree& tree, int node, double s, std::vector<WspdPair>& out) {
    const auto& n = tree.node(node);
    if (n.is_leaf()) return;
    collect(tree, n.left, s, out);
    collect(tree, n.right, s, out);
    find_pairs(tree, n.left, n.right, s, out);
}

} // namespace

std::vector<WspdPair> compute_wspd(const SplitTree& tree, double separation) {
    if (separation <= 0.0) throw ParameterError("separation must be positive");
    std::vector<WspdPair> pairs;
    collect(tree, tree.root_index(), separation, pairs);
    return pairs;
}

CalibrationResult calibrate_separation(const std::vector<Point>& points, int target_m) {
    if (target_m < 1) throw ParameterError("target pair count must be at least 1");
    constexpr double kLow = 0.1;
    constexpr double kHigh = 64.0;

    const SplitTree tree(points);
    auto count = [&](double s) {
        return static_cast<int>(compute_wspd(tree, s).size());
    };

    if (count(kHigh) <= target_m) return {kHigh, false};
    if (count(kLow) > target_m) return {kLow, true};

    double lo = kLow, hi = kHigh; // count(lo) <= target_m < count(hi)
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (count(mid) <= target_m)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, false};
}

} // namespace mppc
