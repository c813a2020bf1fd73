#pragma once

#include <vector>

namespace mppc {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct BoundingBox {
    double lo_x = 0.0, lo_y = 0.0;
    double hi_x = 0.0, hi_y = 0.0;

    double center_x() const { return 0.5 * (lo_x + hi_x); }
    double center_y() const { return 0.5 * (lo_y + hi_y); }
    // Radius of the enclosing ball (half the box diagonal).
    double radius() const;
};

// Binary split tree over point indices: internal nodes split their box at
// the midpoint of its longest side (ties toward the x axis); degenerate
// boxes (all duplicates) split by index parity. Leaves are singletons.
class SplitTree {
public:
    struct Node {
        BoundingBox box;
        std::vector<int> points;
        int left = -1;
        int right = -1;

        bool is_leaf() const { return left < 0; }
    };

    explicit SplitTree(const std::vector<Point>& points);

    const Node& node(int i) const { return nodes_[i]; }
    const Node& root() const { return nodes_[root_]; }
    int root_index() const { return root_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    const std::vector<Point>& points() const { return points_; }

private:
    int build(std::vector<int> idx);

    std::vector<Point> points_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

struct WspdPair {
    std::vector<int> a;
    std::vector<int> b;
};

// Well-separated pair decomposition with parameter s: every unordered point
// pair is covered by exactly one (A_i, B_i), and the gap between the two
// enclosing balls is at least s times the larger ball diameter.
std::vector<WspdPair> compute_wspd(const SplitTree& tree, double separation);

struct CalibrationResult {
    double separation = 0.0;
    // True when even the lower clamp s = 0.1 yields more pairs than asked.
    bool clamped = false;
};

// Largest s in [0.1, 64] whose WSPD has at most target_m pairs (pair count
// is nondecreasing in s). Exact counts are generally unattainable, so the
// nearest-not-exceeding s is returned.
CalibrationResult calibrate_separation(const std::vector<Point>& points, int target_m);

} // namespace mppc
