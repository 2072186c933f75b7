#include "overlapfree/polar_packer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "detail/circle_index.hpp"

namespace overlapfree {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Relative slack when testing a tangent placement against its neighbours.
constexpr double kTangencyEpsilon = 1e-9;

double normalize_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a -= kTwoPi;
    return a;
}

/// Absolute angular difference folded into [0, pi].
double angle_gap(double a, double b) {
    double d = std::fmod(std::fabs(a - b), kTwoPi);
    return d > kPi ? kTwoPi - d : d;
}

/// Signed difference a - b folded into (-pi, pi].
double signed_gap(double a, double b) {
    double d = std::fmod(a - b, kTwoPi);
    if (d > kPi) d -= kTwoPi;
    if (d <= -kPi) d += kTwoPi;
    return d;
}

class FrontChainPacker {
public:
    FrontChainPacker(std::vector<double> radii, std::vector<double> desired, int th, PackStats& stats)
        : n_(radii.size()),
          r_(std::move(radii)),
          want_(std::move(desired)),
          x_(n_, 0.0),
          y_(n_, 0.0),
          phi_(n_, 0.0),
          prev_(n_, -1),
          next_(n_, -1),
          in_chain_(n_, 0),
          stamp_(n_, 0),
          offset_(n_, 0),
          index_(*std::max_element(r_.begin(), r_.end())),
          th_(th),
          stats_(stats) {}

    void run() {
        if (n_ == 1) {
            register_node(0);
            return;
        }
        if (n_ == 2) {
            place_pair();
            return;
        }
        place_triangle();
        for (std::size_t slot = 3; slot < n_; ++slot) place_next(static_cast<std::int32_t>(slot));
        stats_.final_chain_length = static_cast<std::size_t>(chain_len_);
    }

    double x(std::size_t slot) const { return x_[slot]; }
    double y(std::size_t slot) const { return y_[slot]; }

private:
    struct Candidate {
        std::int32_t a;
        std::int32_t b;
        Vec2 pos;
        double gap;
    };

    Circle circle(std::int32_t v) const {
        return Circle{{x_[static_cast<std::size_t>(v)], y_[static_cast<std::size_t>(v)]},
                      r_[static_cast<std::size_t>(v)]};
    }

    void register_node(std::int32_t v) {
        const auto s = static_cast<std::size_t>(v);
        index_.insert(x_[s], y_[s], r_[s], static_cast<std::uint32_t>(v));
        phi_[s] = (x_[s] == 0.0 && y_[s] == 0.0) ? 0.0 : normalize_angle(std::atan2(y_[s], x_[s]));
        extent_ = std::max(extent_, std::hypot(x_[s], y_[s]) + r_[s]);
    }

    void link_ring(std::span<const std::int32_t> ring) {
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const auto v = ring[i];
            const auto w = ring[(i + 1) % ring.size()];
            next_[static_cast<std::size_t>(v)] = w;
            prev_[static_cast<std::size_t>(w)] = v;
            in_chain_[static_cast<std::size_t>(v)] = 1;
        }
        chain_len_ = static_cast<std::int32_t>(ring.size());
        head_ = ring[0];
        rebuild_buckets(64);
    }

    void place_pair() {
        const Vec2 ua{std::cos(want_[0]), std::sin(want_[0])};
        const Vec2 ub{std::cos(want_[1]), std::sin(want_[1])};
        Vec2 dir = ua - ub;
        double len = std::hypot(dir.x, dir.y);
        if (len < 1e-12) {
            dir = ua;
            len = 1.0;
        }
        const double half = 0.5 * (r_[0] + r_[1]) / len;
        x_[0] = dir.x * half;
        y_[0] = dir.y * half;
        x_[1] = -dir.x * half;
        y_[1] = -dir.y * half;
        register_node(0);
        register_node(1);
        const std::array<std::int32_t, 2> ring{0, 1};
        link_ring(ring);
    }

    // Three mutually tangent circles around the origin, with the orientation
    // and rotation that best match the desired angles.
    void place_triangle() {
        struct Option {
            std::array<Vec2, 3> pos;
            std::array<std::int32_t, 3> ring;
            double cost;
        };
        auto build = [&](Side side, std::array<std::int32_t, 3> ring) {
            std::array<Vec2, 3> p{};
            p[0] = {0.0, 0.0};
            p[1] = {r_[0] + r_[1], 0.0};
            p[2] = *tangent_position(r_[2], Circle{p[0], r_[0]}, Circle{p[1], r_[1]}, side);
            const Vec2 c{(p[0].x + p[1].x + p[2].x) / 3.0, (p[0].y + p[1].y + p[2].y) / 3.0};
            for (auto& q : p) q = q - c;

            std::array<double, 3> delta{};
            for (std::size_t i = 0; i < 3; ++i)
                delta[i] = signed_gap(want_[i], std::atan2(p[i].y, p[i].x));
            auto cost_of = [&](double rho) {
                double s = 0.0;
                for (std::size_t i = 0; i < 3; ++i) {
                    const double e = signed_gap(delta[i], rho);
                    s += e * e;
                }
                return s;
            };
            // The optimum of a sum of wrapped squares sits at a branch mean.
            double best_rho = 0.0;
            double best_cost = std::numeric_limits<double>::infinity();
            for (int m0 = -1; m0 <= 1; ++m0)
                for (int m1 = -1; m1 <= 1; ++m1)
                    for (int m2 = -1; m2 <= 1; ++m2) {
                        const double rho = (delta[0] + kTwoPi * m0 + delta[1] + kTwoPi * m1 +
                                            delta[2] + kTwoPi * m2) / 3.0;
                        const double c2 = cost_of(rho);
                        if (c2 < best_cost) {
                            best_cost = c2;
                            best_rho = rho;
                        }
                    }
            const double cs = std::cos(best_rho);
            const double sn = std::sin(best_rho);
            for (auto& q : p) q = Vec2{cs * q.x - sn * q.y, sn * q.x + cs * q.y};
            return Option{p, ring, best_cost};
        };
        const Option ccw = build(Side::left, {0, 1, 2});
        const Option cw = build(Side::right, {0, 2, 1});
        const Option& pick = cw.cost < ccw.cost ? cw : ccw;
        for (std::size_t i = 0; i < 3; ++i) {
            x_[i] = pick.pos[i].x;
            y_[i] = pick.pos[i].y;
            register_node(static_cast<std::int32_t>(i));
        }
        link_ring(pick.ring);
    }

    // ---- angular lookup over chain nodes ----

    std::size_t bucket_of(double angle) const {
        const auto b = static_cast<std::size_t>(angle / kTwoPi * static_cast<double>(buckets_.size()));
        return std::min(b, buckets_.size() - 1);
    }

    void rebuild_buckets(std::size_t count) {
        buckets_.assign(count, -1);
        std::int32_t v = head_;
        for (std::int32_t i = 0; i < chain_len_; ++i) {
            buckets_[bucket_of(phi_[static_cast<std::size_t>(v)])] = v;
            v = next_[static_cast<std::size_t>(v)];
        }
    }

    std::int32_t nearest_chain_node(double theta) {
        const std::size_t count = buckets_.size();
        const std::size_t b0 = bucket_of(theta);
        std::int32_t start = -1;
        double start_gap = std::numeric_limits<double>::infinity();
        for (std::size_t d = 0; d <= count / 2 && start < 0; ++d) {
            for (const std::size_t b : {(b0 + d) % count, (b0 + count - d) % count}) {
                const std::int32_t v = buckets_[b];
                if (v < 0 || !in_chain_[static_cast<std::size_t>(v)]) continue;
                const double g = angle_gap(phi_[static_cast<std::size_t>(v)], theta);
                if (g < start_gap) {
                    start_gap = g;
                    start = v;
                }
            }
        }
        if (start < 0) {
            start = head_;
            start_gap = angle_gap(phi_[static_cast<std::size_t>(start)], theta);
        }
        std::int32_t cur = start;
        double gap = start_gap;
        for (;;) {
            const std::int32_t nx = next_[static_cast<std::size_t>(cur)];
            const std::int32_t pv = prev_[static_cast<std::size_t>(cur)];
            const double gn = angle_gap(phi_[static_cast<std::size_t>(nx)], theta);
            const double gp = angle_gap(phi_[static_cast<std::size_t>(pv)], theta);
            if (gn < gap && gn <= gp) {
                cur = nx;
                gap = gn;
            } else if (gp < gap) {
                cur = pv;
                gap = gp;
            } else {
                break;
            }
        }
        buckets_[bucket_of(phi_[static_cast<std::size_t>(cur)])] = cur;
        return cur;
    }

    // ---- subchain window ----
    // Offsets are relative to the anchor node: successors positive,
    // predecessors negative. Once both ends meet the window is the whole chain
    // and offsets are taken modulo its length.

    void begin_window(std::int32_t anchor, int half_length) {
        ++cur_stamp_;
        right_.assign(1, anchor);
        left_.assign(1, anchor);
        stamp_[static_cast<std::size_t>(anchor)] = cur_stamp_;
        offset_[static_cast<std::size_t>(anchor)] = 0;
        full_ = false;
        limit_ = half_length;
    }

    std::int32_t window_length() const {
        return static_cast<std::int32_t>(right_.size() + left_.size()) - 1;
    }

    bool grow(bool forward) {
        if (full_) return false;
        auto& side = forward ? right_ : left_;
        if (static_cast<int>(side.size()) - 1 >= limit_) return false;
        const auto last = static_cast<std::size_t>(side.back());
        const std::int32_t v = forward ? next_[last] : prev_[last];
        if (stamp_[static_cast<std::size_t>(v)] == cur_stamp_) {
            full_ = true;
            return false;
        }
        const auto off = static_cast<std::int32_t>(side.size());
        stamp_[static_cast<std::size_t>(v)] = cur_stamp_;
        offset_[static_cast<std::size_t>(v)] = forward ? off : -off;
        side.push_back(v);
        return true;
    }

    bool ensure(std::int32_t off) {
        if (full_) return true;
        while (off > static_cast<std::int32_t>(right_.size()) - 1)
            if (!grow(true)) return full_;
        while (-off > static_cast<std::int32_t>(left_.size()) - 1)
            if (!grow(false)) return full_;
        return true;
    }

    std::int32_t node_at(std::int32_t off) const {
        if (full_) {
            const std::int32_t len = window_length();
            const auto lo = -(static_cast<std::int32_t>(left_.size()) - 1);
            off = lo + (((off - lo) % len) + len) % len;
        }
        return off >= 0 ? right_[static_cast<std::size_t>(off)] : left_[static_cast<std::size_t>(-off)];
    }

    std::optional<std::int32_t> offset_of(std::int32_t v) {
        for (;;) {
            if (stamp_[static_cast<std::size_t>(v)] == cur_stamp_) return offset_[static_cast<std::size_t>(v)];
            const bool grew_right = grow(true);
            const bool grew_left = grow(false);
            if (!grew_right && !grew_left) {
                if (stamp_[static_cast<std::size_t>(v)] == cur_stamp_)
                    return offset_[static_cast<std::size_t>(v)];
                return std::nullopt;
            }
        }
    }

    static std::int32_t wrap(std::int32_t v, std::int32_t len) { return ((v % len) + len) % len; }

    // ---- placement ----

    double lower_bound_gap(std::int32_t v, double theta, double rc) const {
        const auto s = static_cast<std::size_t>(v);
        const double rho = std::hypot(x_[s], y_[s]);
        const double reach = r_[s] + rc;
        if (rho <= reach) return 0.0;
        return std::max(0.0, angle_gap(phi_[s], theta) - std::asin(reach / rho));
    }

    // Tangent placement against the pair at offsets (oa, ob). When the spot
    // collides with chain nodes, the nearer collision along the chain replaces
    // one end of the pair and the nodes between them become occluded.
    std::optional<Candidate> resolve(std::int32_t slot, double theta, std::int32_t oa, std::int32_t ob) {
        const double rc = r_[static_cast<std::size_t>(slot)];
        std::int32_t a = node_at(oa);
        std::int32_t b = node_at(ob);
        for (int iter = 0; iter < 4 * limit_ + 64; ++iter) {
            const auto pos = tangent_position(rc, circle(a), circle(b), Side::right);
            if (!pos) return std::nullopt;
            hits_.clear();
            index_.for_each_near(pos->x, pos->y, rc, [&](const detail::CircleIndex::Entry& e) {
                const auto id = static_cast<std::int32_t>(e.id);
                if (id == a || id == b) return;
                const double lim = (rc + e.r) * (1.0 - kTangencyEpsilon);
                const double dx = e.x - pos->x;
                const double dy = e.y - pos->y;
                if (dx * dx + dy * dy < lim * lim) hits_.push_back(id);
            });
            if (hits_.empty()) {
                const double placed = normalize_angle(std::atan2(pos->y, pos->x));
                return Candidate{a, b, *pos, angle_gap(placed, theta)};
            }

            constexpr std::int32_t kNone = std::numeric_limits<std::int32_t>::max();
            std::int32_t fwd = kNone;
            std::int32_t bwd = kNone;
            std::int32_t fwd_node = -1;
            std::int32_t bwd_node = -1;
            for (const std::int32_t j : hits_) {
                if (!in_chain_[static_cast<std::size_t>(j)]) return std::nullopt;
                const auto oj = offset_of(j);
                if (!oj) return std::nullopt;
                std::int32_t f;
                std::int32_t g;
                if (full_) {
                    const std::int32_t len = window_length();
                    const std::int32_t rel = wrap(*oj - oa, len);
                    if (rel > 0 && rel < ob - oa) return std::nullopt;
                    f = wrap(*oj - ob, len);
                    g = wrap(oa - *oj, len);
                } else {
                    if (*oj > oa && *oj < ob) return std::nullopt;
                    f = *oj > ob ? *oj - ob : kNone;
                    g = *oj < oa ? oa - *oj : kNone;
                }
                if (f > 0 && f < fwd) {
                    fwd = f;
                    fwd_node = j;
                }
                if (g > 0 && g < bwd) {
                    bwd = g;
                    bwd_node = j;
                }
            }
            if (fwd == kNone && bwd == kNone) return std::nullopt;
            if (fwd < bwd || (fwd == bwd && r_[static_cast<std::size_t>(b)] < r_[static_cast<std::size_t>(a)])) {
                ob += fwd;
                b = fwd_node;
            } else {
                oa -= bwd;
                a = bwd_node;
            }
            if (full_ && ob - oa >= window_length()) return std::nullopt;
        }
        return std::nullopt;
    }

    std::optional<Candidate> search(std::int32_t slot, double theta, std::int32_t anchor, int half_length) {
        begin_window(anchor, half_length);
        const double rc = r_[static_cast<std::size_t>(slot)];
        std::optional<Candidate> best;
        bool right_open = true;
        bool left_open = true;
        for (std::int32_t s = 0; right_open || left_open; ++s) {
            const std::int32_t o = (s % 2 == 0) ? s / 2 : -(s + 1) / 2;
            const bool rightward = o >= 0;
            if (rightward ? !right_open : !left_open) continue;
            if (full_ && s >= window_length()) break;
            if (!ensure(o) || !ensure(o + 1)) {
                (rightward ? right_open : left_open) = false;
                continue;
            }
            if (full_ && s >= window_length()) break;
            if (best) {
                const double lb = std::min(lower_bound_gap(node_at(o), theta, rc),
                                           lower_bound_gap(node_at(o + 1), theta, rc));
                if (lb > best->gap) {
                    (rightward ? right_open : left_open) = false;
                    continue;
                }
            }
            auto cand = resolve(slot, theta, o, o + 1);
            if (cand && (!best || cand->gap < best->gap)) best = cand;
        }
        return best;
    }

    void commit(std::int32_t slot, const Candidate& c) {
        const auto s = static_cast<std::size_t>(slot);
        x_[s] = c.pos.x;
        y_[s] = c.pos.y;
        std::int32_t v = next_[static_cast<std::size_t>(c.a)];
        while (v != c.b) {
            in_chain_[static_cast<std::size_t>(v)] = 0;
            --chain_len_;
            ++stats_.pruned;
            v = next_[static_cast<std::size_t>(v)];
        }
        link_between(slot, c.a, c.b);
    }

    void link_between(std::int32_t slot, std::int32_t a, std::int32_t b) {
        const auto s = static_cast<std::size_t>(slot);
        next_[static_cast<std::size_t>(a)] = slot;
        prev_[s] = a;
        next_[s] = b;
        prev_[static_cast<std::size_t>(b)] = slot;
        in_chain_[s] = 1;
        ++chain_len_;
        head_ = slot;
        register_node(slot);
        if (static_cast<std::size_t>(chain_len_) > buckets_.size()) rebuild_buckets(buckets_.size() * 4);
        buckets_[bucket_of(phi_[s])] = slot;
    }

    // Outside everything placed so far, on the desired ray.
    void place_outside(std::int32_t slot, double theta, std::int32_t anchor) {
        const auto s = static_cast<std::size_t>(slot);
        const double dist = extent_ + r_[s];
        x_[s] = dist * std::cos(theta);
        y_[s] = dist * std::sin(theta);
        const auto an = static_cast<std::size_t>(anchor);
        if (signed_gap(theta, phi_[an]) >= 0.0)
            link_between(slot, anchor, next_[an]);
        else
            link_between(slot, prev_[an], anchor);
        ++stats_.fallbacks;
    }

    void place_next(std::int32_t slot) {
        const double theta = want_[static_cast<std::size_t>(slot)];
        const std::int32_t anchor = nearest_chain_node(theta);
        int half_length = th_;
        for (;;) {
            const auto cand = search(slot, theta, anchor, half_length);
            if (cand) {
                commit(slot, *cand);
                return;
            }
            if (full_ || half_length >= chain_len_) {
                place_outside(slot, theta, anchor);
                return;
            }
            half_length *= 2;
            ++stats_.widenings;
        }
    }

    std::size_t n_;
    std::vector<double> r_;
    std::vector<double> want_;
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> phi_;
    std::vector<std::int32_t> prev_;
    std::vector<std::int32_t> next_;
    std::vector<std::uint8_t> in_chain_;
    std::vector<std::uint32_t> stamp_;
    std::vector<std::int32_t> offset_;
    detail::CircleIndex index_;
    int th_;
    PackStats& stats_;

    std::int32_t chain_len_ = 0;
    std::int32_t head_ = 0;
    double extent_ = 0.0;
    std::vector<std::int32_t> buckets_;

    std::uint32_t cur_stamp_ = 0;
    std::vector<std::int32_t> right_;
    std::vector<std::int32_t> left_;
    bool full_ = false;
    int limit_ = 0;
    std::vector<std::int32_t> hits_;
};

}  // namespace

std::optional<Vec2> tangent_position(double new_r, const Circle& c1, const Circle& c2, Side side) {
    const double dx = c2.center.x - c1.center.x;
    const double dy = c2.center.y - c1.center.y;
    const double d2 = dx * dx + dy * dy;
    if (!(d2 > 0.0)) return std::nullopt;
    const double d = std::sqrt(d2);
    const double a = c1.r + new_r;
    const double b = c2.r + new_r;
    if (d > a + b || d < std::fabs(a - b)) return std::nullopt;
    const double along = (a * a - b * b + d2) / (2.0 * d);
    const double h = std::sqrt(std::max(0.0, a * a - along * along));
    const double ux = dx / d;
    const double uy = dy / d;
    // Left normal of c1 -> c2 is (-uy, ux).
    const double sign = side == Side::left ? 1.0 : -1.0;
    return Vec2{c1.center.x + along * ux - sign * h * uy, c1.center.y + along * uy + sign * h * ux};
}

std::optional<Vec2> tangent_position(double new_r, const Circle& c1, const Circle& c2, Vec2 inner) {
    const double dx = c2.center.x - c1.center.x;
    const double dy = c2.center.y - c1.center.y;
    const double cross = dx * (inner.y - c1.center.y) - dy * (inner.x - c1.center.x);
    return tangent_position(new_r, c1, c2, cross > 0.0 ? Side::right : Side::left);
}

std::vector<Node> polarize(std::span<const Node> nodes, Vec2 center) {
    std::vector<Node> out(nodes.begin(), nodes.end());
    for (auto& n : out) {
        const double dx = n.x - center.x;
        const double dy = n.y - center.y;
        n.dis = std::hypot(dx, dy);
        n.angle = (dx == 0.0 && dy == 0.0) ? 0.0 : normalize_angle(std::atan2(dy, dx));
    }
    return out;
}

int auto_half_length(std::size_t node_count) {
    const double v = std::ceil(0.5 * std::sqrt(static_cast<double>(node_count)));
    return static_cast<int>(std::clamp(v, 4.0, 512.0));
}

std::vector<Node> pack_nodes(std::span<const Node> nodes, const PackOptions& options, PackStats* stats) {
    if (nodes.empty()) throw ParameterError("empty node set");
    if (options.th < 0) throw ParameterError("th must be at least 1");
    for (const auto& n : nodes)
        if (!(n.r_pack > 0.0) || !std::isfinite(n.r_pack) || !std::isfinite(n.x) || !std::isfinite(n.y))
            throw ParameterError("node with invalid position or r_pack");

    const Vec2 center = center_of(nodes);
    std::vector<Node> polar = polarize(nodes, center);

    std::vector<std::size_t> order(polar.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (polar[a].dis != polar[b].dis) return polar[a].dis < polar[b].dis;
        if (polar[a].angle != polar[b].angle) return polar[a].angle < polar[b].angle;
        return a < b;
    });

    std::vector<double> radii(order.size());
    std::vector<double> desired(order.size());
    for (std::size_t s = 0; s < order.size(); ++s) {
        radii[s] = polar[order[s]].r_pack;
        desired[s] = polar[order[s]].angle;
    }

    PackStats local;
    const int th = options.th > 0 ? options.th : auto_half_length(nodes.size());
    FrontChainPacker packer(std::move(radii), std::move(desired), th, stats ? *stats : local);
    packer.run();

    for (std::size_t s = 0; s < order.size(); ++s) {
        Node& n = polar[order[s]];
        n.x = packer.x(s) + center.x;
        n.y = packer.y(s) + center.y;
    }
    return polar;
}

Layout pack(std::span<const Node> nodes, const PackOptions& options, PackStats* stats) {
    auto placed = pack_nodes(nodes, options, stats);
    Layout layout;
    layout.nodes.reserve(placed.size());
    for (auto& n : placed)
        if (!n.is_dummy()) layout.nodes.push_back(std::move(n));
    layout.params.th = options.th > 0 ? options.th : auto_half_length(nodes.size());
    layout.update_bbox();
    return layout;
}

}  // namespace overlapfree
