#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "overlapfree/core_model.hpp"

namespace overlapfree::detail {

/// Static 2-d tree for exact k-nearest-neighbour queries. Neighbours are
/// ordered by (squared distance, index), so equidistant points resolve to the
/// smaller index deterministically.
class KdTree {
public:
    explicit KdTree(std::span<const Vec2> points) : points_(points.begin(), points.end()) {
        order_.resize(points_.size());
        for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<std::uint32_t>(i);
        if (!order_.empty()) build(0, order_.size());
    }

    /// The k nearest points to points[query], excluding query itself.
    std::vector<std::uint32_t> knn(std::size_t query, std::size_t k) const {
        Heap heap(k);
        if (k > 0 && !nodes_.empty()) search(0, points_[query], static_cast<std::uint32_t>(query), heap);
        return heap.sorted_ids();
    }

    /// Squared distances matching knn().
    std::vector<double> knn_sq_distances(std::size_t query, std::size_t k) const {
        Heap heap(k);
        if (k > 0 && !nodes_.empty()) search(0, points_[query], static_cast<std::uint32_t>(query), heap);
        return heap.sorted_distances();
    }

private:
    struct KdNode {
        std::size_t begin;
        std::size_t end;
        std::int32_t left = -1;
        std::int32_t right = -1;
        double min_x, min_y, max_x, max_y;
    };

    struct Item {
        double d2;
        std::uint32_t id;
        bool operator<(const Item& o) const { return d2 != o.d2 ? d2 < o.d2 : id < o.id; }
    };

    // Bounded max-heap on (d2, id).
    class Heap {
    public:
        explicit Heap(std::size_t k) : k_(k) { items_.reserve(k + 1); }
        bool full() const { return items_.size() == k_; }
        const Item& worst() const { return items_.front(); }
        void offer(Item it) {
            if (!full()) {
                items_.push_back(it);
                std::push_heap(items_.begin(), items_.end());
            } else if (it < items_.front()) {
                std::pop_heap(items_.begin(), items_.end());
                items_.back() = it;
                std::push_heap(items_.begin(), items_.end());
            }
        }
        std::vector<std::uint32_t> sorted_ids() {
            std::sort(items_.begin(), items_.end());
            std::vector<std::uint32_t> ids;
            ids.reserve(items_.size());
            for (const auto& it : items_) ids.push_back(it.id);
            return ids;
        }
        std::vector<double> sorted_distances() {
            std::sort(items_.begin(), items_.end());
            std::vector<double> d;
            d.reserve(items_.size());
            for (const auto& it : items_) d.push_back(it.d2);
            return d;
        }

    private:
        std::size_t k_;
        std::vector<Item> items_;
    };

    static constexpr std::size_t kLeafSize = 8;

    std::int32_t build(std::size_t begin, std::size_t end) {
        KdNode node{begin, end, -1, -1, std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity()};
        for (std::size_t i = begin; i < end; ++i) {
            const Vec2& p = points_[order_[i]];
            node.min_x = std::min(node.min_x, p.x);
            node.min_y = std::min(node.min_y, p.y);
            node.max_x = std::max(node.max_x, p.x);
            node.max_y = std::max(node.max_y, p.y);
        }
        const auto id = static_cast<std::int32_t>(nodes_.size());
        nodes_.push_back(node);
        if (end - begin > kLeafSize) {
            const bool split_x = (node.max_x - node.min_x) >= (node.max_y - node.min_y);
            const std::size_t mid = begin + (end - begin) / 2;
            std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                             order_.begin() + static_cast<std::ptrdiff_t>(mid),
                             order_.begin() + static_cast<std::ptrdiff_t>(end),
                             [&](std::uint32_t a, std::uint32_t b) {
                                 const double va = split_x ? points_[a].x : points_[a].y;
                                 const double vb = split_x ? points_[b].x : points_[b].y;
                                 return va != vb ? va < vb : a < b;
                             });
            const auto l = build(begin, mid);
            const auto r = build(mid, end);
            nodes_[static_cast<std::size_t>(id)].left = l;
            nodes_[static_cast<std::size_t>(id)].right = r;
        }
        return id;
    }

    static double box_sq_distance(const KdNode& n, Vec2 q) {
        const double dx = q.x < n.min_x ? n.min_x - q.x : (q.x > n.max_x ? q.x - n.max_x : 0.0);
        const double dy = q.y < n.min_y ? n.min_y - q.y : (q.y > n.max_y ? q.y - n.max_y : 0.0);
        return dx * dx + dy * dy;
    }

    void search(std::int32_t id, Vec2 q, std::uint32_t self, Heap& heap) const {
        const KdNode& n = nodes_[static_cast<std::size_t>(id)];
        // Equal distances can still win on index, so prune only strictly farther boxes.
        if (heap.full() && box_sq_distance(n, q) > heap.worst().d2) return;
        if (n.left < 0) {
            for (std::size_t i = n.begin; i < n.end; ++i) {
                const std::uint32_t pid = order_[i];
                if (pid == self) continue;
                const double dx = points_[pid].x - q.x;
                const double dy = points_[pid].y - q.y;
                heap.offer(Item{dx * dx + dy * dy, pid});
            }
            return;
        }
        const KdNode& l = nodes_[static_cast<std::size_t>(n.left)];
        const KdNode& r = nodes_[static_cast<std::size_t>(n.right)];
        if (box_sq_distance(l, q) <= box_sq_distance(r, q)) {
            search(n.left, q, self, heap);
            search(n.right, q, self, heap);
        } else {
            search(n.right, q, self, heap);
            search(n.left, q, self, heap);
        }
    }

    std::vector<Vec2> points_;
    std::vector<std::uint32_t> order_;
    std::vector<KdNode> nodes_;
};

}  // namespace overlapfree::detail
