#include "sknni/spatial_index.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "sknni/errors.hpp"

namespace sknni {

namespace {

double axis_coord(const CartesianPoint& p, int axis) {
    switch (axis) {
        case 0: return p.x;
        case 1: return p.y;
        default: return p.z;
    }
}

}  // namespace

SpatialIndex::SpatialIndex(std::vector<CartesianPoint> points)
    : points_(std::move(points)) {
    if (points_.empty()) {
        throw ValidationError("cannot build a spatial index from zero points");
    }
    order_.resize(points_.size());
    std::iota(order_.begin(), order_.end(), 0u);
    nodes_.reserve(2 * (points_.size() / kLeafSize + 1));
    root_ = build_node(0, static_cast<std::uint32_t>(points_.size()), 1);
}

std::uint32_t SpatialIndex::build_node(std::uint32_t begin, std::uint32_t end,
                                       int level) {
    depth_ = std::max(depth_, level);

    std::array<double, 3> lo{}, hi{};
    lo.fill(std::numeric_limits<double>::infinity());
    hi.fill(-std::numeric_limits<double>::infinity());
    for (std::uint32_t i = begin; i < end; ++i) {
        const CartesianPoint& p = points_[order_[i]];
        for (int axis = 0; axis < 3; ++axis) {
            lo[axis] = std::min(lo[axis], axis_coord(p, axis));
            hi[axis] = std::max(hi[axis], axis_coord(p, axis));
        }
    }
    int widest = 0;
    for (int axis = 1; axis < 3; ++axis) {
        if (hi[axis] - lo[axis] > hi[widest] - lo[widest]) {
            widest = axis;
        }
    }

    const std::uint32_t count = end - begin;
    // Leaf: small enough, or degenerate (all points coincide so no split
    // can make progress).
    if (count <= kLeafSize || hi[widest] - lo[widest] == 0.0) {
        nodes_.push_back(Node{-1, 0.0, 0, 0, begin, end});
        return static_cast<std::uint32_t>(nodes_.size() - 1);
    }

    // Median coordinate on the widest axis; the convention is
    // left <= split < right, so coordinate duplicates always stay together
    // on the left of the plane.
    const std::uint32_t mid = begin + count / 2;
    auto coord_less = [&](std::uint32_t a, std::uint32_t b) {
        return axis_coord(points_[a], widest) < axis_coord(points_[b], widest);
    };
    std::nth_element(order_.begin() + begin, order_.begin() + mid,
                     order_.begin() + end, coord_less);
    double split = axis_coord(points_[order_[mid]], widest);
    if (split == hi[widest]) {
        // The median ties the maximum; split below it so the right side
        // stays nonempty (the spread check guarantees something is smaller).
        split = -std::numeric_limits<double>::infinity();
        for (std::uint32_t i = begin; i < end; ++i) {
            const double c = axis_coord(points_[order_[i]], widest);
            if (c < hi[widest]) {
                split = std::max(split, c);
            }
        }
    }
    const auto partition_point = std::partition(
        order_.begin() + begin, order_.begin() + end, [&](std::uint32_t index) {
            return axis_coord(points_[index], widest) <= split;
        });
    const std::uint32_t mid_index =
        static_cast<std::uint32_t>(partition_point - order_.begin());

    const std::uint32_t node_index = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(Node{widest, split, 0, 0, 0, 0});
    const std::uint32_t left = build_node(begin, mid_index, level + 1);
    const std::uint32_t right = build_node(mid_index, end, level + 1);
    nodes_[node_index].left = left;
    nodes_[node_index].right = right;
    return node_index;
}

void SpatialIndex::search(std::uint32_t node_index, const CartesianPoint& query,
                          std::size_t k,
                          std::vector<std::pair<double, std::uint32_t>>& heap) const {
    const Node& node = nodes_[node_index];
    if (node.axis < 0) {
        for (std::uint32_t i = node.begin; i < node.end; ++i) {
            const std::uint32_t point_index = order_[i];
            const std::pair<double, std::uint32_t> candidate{
                squared_distance(query, points_[point_index]), point_index};
            if (heap.size() < k) {
                heap.push_back(candidate);
                std::push_heap(heap.begin(), heap.end());
            } else if (candidate < heap.front()) {
                std::pop_heap(heap.begin(), heap.end());
                heap.back() = candidate;
                std::push_heap(heap.begin(), heap.end());
            }
        }
        return;
    }

    const double diff = axis_coord(query, node.axis) - node.split;
    const std::uint32_t near = diff <= 0.0 ? node.left : node.right;
    const std::uint32_t far = diff <= 0.0 ? node.right : node.left;
    search(near, query, k, heap);
    // The far subtree can still hold a closer point -- or an equally distant
    // one with a smaller index -- unless the splitting plane alone is already
    // strictly farther than the current worst candidate.
    if (heap.size() < k || diff * diff <= heap.front().first) {
        search(far, query, k, heap);
    }
}

void SpatialIndex::knn_into(const CartesianPoint& query, std::size_t k,
                            std::uint32_t* out_row) const {
    std::vector<std::pair<double, std::uint32_t>> heap;
    heap.reserve(k);
    search(root_, query, k, heap);
    std::sort_heap(heap.begin(), heap.end());
    for (std::size_t j = 0; j < heap.size(); ++j) {
        out_row[j] = heap[j].second;
    }
}

SpatialIndex build_index(std::vector<CartesianPoint> points) {
    return SpatialIndex(std::move(points));
}

NeighborMatrix query_knn(const SpatialIndex& index,
                         std::span<const CartesianPoint> queries, int k) {
    if (k < 1 || static_cast<std::size_t>(k) > index.size()) {
        std::ostringstream msg;
        msg << "k must be in [1, " << index.size() << "] (the number of indexed points), got "
            << k;
        throw ValidationError(msg.str());
    }
    NeighborMatrix result(queries.size(), static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < queries.size(); ++i) {
        index.knn_into(queries[i], static_cast<std::size_t>(k), &result(i, 0));
    }
    return result;
}

}  // namespace sknni
