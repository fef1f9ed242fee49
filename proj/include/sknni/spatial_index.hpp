#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sknni/geodesy.hpp"

namespace sknni {

// Row-major M x k matrix of observation indices. Row i lists the k nearest
// observations to query i in nondecreasing embedded-distance order; ties are
// broken by the smaller observation index, which makes every row unique.
class NeighborMatrix {
public:
    NeighborMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint32_t operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }
    std::uint32_t& operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    std::span<const std::uint32_t> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::uint32_t> data_;
};

inline double squared_distance(const CartesianPoint& a, const CartesianPoint& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return dx * dx + dy * dy + dz * dz;
}

// Static k-d tree over embedded observation points, built once and immutable.
// Median split on the widest-spread axis, leaves of up to 16 points; query
// results are exact (verified against brute force in the tests), never
// approximate.
class SpatialIndex {
public:
    explicit SpatialIndex(std::vector<CartesianPoint> points);  // throws ValidationError if empty

    std::size_t size() const { return points_.size(); }
    const std::vector<CartesianPoint>& points() const { return points_; }

    // Number of levels from the root down to the deepest leaf (a single-leaf
    // tree has depth 1). Exposed so tests can check balance.
    int depth() const { return depth_; }

    // Writes the k nearest observation indices for one query into out_row
    // (ascending (distance^2, index) order). k must be in [1, size()].
    void knn_into(const CartesianPoint& query, std::size_t k,
                  std::uint32_t* out_row) const;

private:
    struct Node {
        int axis = -1;  // -1 marks a leaf
        double split = 0.0;
        std::uint32_t left = 0;
        std::uint32_t right = 0;
        std::uint32_t begin = 0;
        std::uint32_t end = 0;
    };

    std::uint32_t build_node(std::uint32_t begin, std::uint32_t end, int level);
    void search(std::uint32_t node_index, const CartesianPoint& query, std::size_t k,
                std::vector<std::pair<double, std::uint32_t>>& heap) const;

    static constexpr std::uint32_t kLeafSize = 16;

    std::vector<CartesianPoint> points_;
    std::vector<std::uint32_t> order_;  // permutation of [0, N), grouped by leaf
    std::vector<Node> nodes_;
    std::uint32_t root_ = 0;
    int depth_ = 0;
};

SpatialIndex build_index(std::vector<CartesianPoint> points);

// Batch exact k-nearest-neighbor query; row i of the result corresponds to
// queries[i]. Throws ValidationError unless 1 <= k <= index.size().
NeighborMatrix query_knn(const SpatialIndex& index,
                         std::span<const CartesianPoint> queries, int k);

}  // namespace sknni
