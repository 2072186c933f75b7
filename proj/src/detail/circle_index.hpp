#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace overlapfree::detail {

/// Hierarchical uniform grid over circles. Level L holds radii in
/// (top / 4^(L+1), top / 4^L] in cells of edge 2 * top / 4^L, so a query
/// touches a bounded neighbourhood per level regardless of the radius spread.
/// Cell arrays grow on demand; the packing extent is not known up front.
class CircleIndex {
public:
    struct Entry {
        double x;
        double y;
        double r;
        std::uint32_t id;
    };

    explicit CircleIndex(double max_radius) : top_(max_radius > 0.0 ? max_radius : 1.0) {}

    void insert(double x, double y, double r, std::uint32_t id) {
        const std::size_t lv = level_for(r);
        if (lv >= levels_.size()) {
            for (std::size_t l = levels_.size(); l <= lv; ++l) {
                Level level;
                level.rmax = top_ * std::ldexp(1.0, -2 * static_cast<int>(l));
                level.cell = 2.0 * level.rmax;
                levels_.push_back(std::move(level));
            }
        }
        Level& level = levels_[lv];
        const auto cx = static_cast<std::int64_t>(std::floor(x / level.cell));
        const auto cy = static_cast<std::int64_t>(std::floor(y / level.cell));
        level.ensure(cx, cy);
        level.cells[level.slot(cx, cy)].push_back(Entry{x, y, r, id});
        level.all.push_back(Entry{x, y, r, id});
    }

    /// Calls fn(entry) for every stored circle whose center lies within
    /// r + entry.r of (x, y), possibly plus some farther ones.
    template <class Fn>
    void for_each_near(double x, double y, double r, Fn&& fn) const {
        for (const Level& level : levels_) {
            if (level.all.empty()) continue;
            const double reach = r + level.rmax;
            auto x0 = static_cast<std::int64_t>(std::floor((x - reach) / level.cell));
            auto x1 = static_cast<std::int64_t>(std::floor((x + reach) / level.cell));
            auto y0 = static_cast<std::int64_t>(std::floor((y - reach) / level.cell));
            auto y1 = static_cast<std::int64_t>(std::floor((y + reach) / level.cell));
            x0 = std::max(x0, level.x0);
            y0 = std::max(y0, level.y0);
            x1 = std::min(x1, level.x0 + level.cols - 1);
            y1 = std::min(y1, level.y0 + level.rows - 1);
            if (x1 < x0 || y1 < y0) continue;
            const auto visits = static_cast<std::size_t>((x1 - x0 + 1) * (y1 - y0 + 1));
            if (level.all.size() <= visits) {
                for (const Entry& e : level.all) fn(e);
                continue;
            }
            for (auto cy = y0; cy <= y1; ++cy) {
                // Clip each row to the reach disk.
                const double band_lo = static_cast<double>(cy) * level.cell;
                const double dy = y < band_lo ? band_lo - y : std::max(0.0, y - band_lo - level.cell);
                const double half = std::sqrt(std::max(0.0, reach * reach - dy * dy));
                const auto rx0 = std::max(x0, static_cast<std::int64_t>(std::floor((x - half) / level.cell)));
                const auto rx1 = std::min(x1, static_cast<std::int64_t>(std::floor((x + half) / level.cell)));
                for (auto cx = rx0; cx <= rx1; ++cx)
                    for (const Entry& e : level.cells[level.slot(cx, cy)]) fn(e);
            }
        }
    }

private:
    struct Level {
        double rmax = 0.0;
        double cell = 0.0;
        std::int64_t x0 = 0;
        std::int64_t y0 = 0;
        std::int64_t cols = 0;
        std::int64_t rows = 0;
        std::vector<std::vector<Entry>> cells;
        std::vector<Entry> all;

        std::size_t slot(std::int64_t cx, std::int64_t cy) const {
            return static_cast<std::size_t>((cy - y0) * cols + (cx - x0));
        }

        void ensure(std::int64_t cx, std::int64_t cy) {
            if (cols > 0 && cx >= x0 && cx < x0 + cols && cy >= y0 && cy < y0 + rows) return;
            std::int64_t nx0 = cols > 0 ? std::min(x0, cx) : cx - 8;
            std::int64_t ny0 = cols > 0 ? std::min(y0, cy) : cy - 8;
            std::int64_t nx1 = cols > 0 ? std::max(x0 + cols - 1, cx) : cx + 8;
            std::int64_t ny1 = cols > 0 ? std::max(y0 + rows - 1, cy) : cy + 8;
            // Grow geometrically so repeated outward placements amortize.
            const std::int64_t pad_x = std::max<std::int64_t>(8, (nx1 - nx0 + 1) / 2);
            const std::int64_t pad_y = std::max<std::int64_t>(8, (ny1 - ny0 + 1) / 2);
            if (cols > 0) {
                if (cx < x0) nx0 -= pad_x;
                if (cx >= x0 + cols) nx1 += pad_x;
                if (cy < y0) ny0 -= pad_y;
                if (cy >= y0 + rows) ny1 += pad_y;
            }
            const std::int64_t ncols = nx1 - nx0 + 1;
            const std::int64_t nrows = ny1 - ny0 + 1;
            std::vector<std::vector<Entry>> grown(static_cast<std::size_t>(ncols * nrows));
            for (std::int64_t y = 0; y < rows; ++y)
                for (std::int64_t x = 0; x < cols; ++x)
                    grown[static_cast<std::size_t>((y + y0 - ny0) * ncols + (x + x0 - nx0))] =
                        std::move(cells[static_cast<std::size_t>(y * cols + x)]);
            cells = std::move(grown);
            x0 = nx0;
            y0 = ny0;
            cols = ncols;
            rows = nrows;
        }
    };

    std::size_t level_for(double r) const {
        std::size_t lv = 0;
        double floor_radius = top_ * 0.25;
        while (r <= floor_radius && lv < 60) {
            floor_radius *= 0.25;
            ++lv;
        }
        return lv;
    }

    double top_;
    std::vector<Level> levels_;
};

}  // namespace overlapfree::detail
