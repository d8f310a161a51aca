#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "mcl/errors.hpp"
#include "mcl/poset.hpp"

namespace mcl {

enum class OverlapKind { Crossing, Graft, ReverseKissing };

// Crossing: P1[s,t] ~ P2[s2,t2]. Reverse kissing (self-overlap):
// P[r,s] ~ reversed P[s+1,t]. All indices are 1-based.
struct OverlapSpec {
    OverlapKind kind = OverlapKind::Crossing;
    std::size_t s = 0, t = 0;
    std::size_t s2 = 0, t2 = 0;
    std::size_t r = 0;
    bool on_top = true;    // overlap lies on top of the first poset
    bool on_bottom = true; // and on bottom of the second

    friend bool operator==(const OverlapSpec&, const OverlapSpec&) = default;
};

namespace detail {

// [s,t] on top of p: no element of the slice lies below an outside neighbor.
inline bool slice_on_top(const FencePoset& p, std::size_t s, std::size_t t) {
    if (s > 1 && p.dirs[s - 2] == Dir::Down) return false;
    if (t < p.size() && p.dirs[t - 1] == Dir::Up) return false;
    return true;
}

inline bool slice_on_bottom(const FencePoset& p, std::size_t s, std::size_t t) {
    if (s > 1 && p.dirs[s - 2] == Dir::Up) return false;
    if (t < p.size() && p.dirs[t - 1] == Dir::Down) return false;
    return true;
}

inline bool same_labels_dirs(const FencePoset& a, const FencePoset& b) {
    if (a.size() != b.size() || a.dirs != b.dirs) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.elems[i].label != b.elems[i].label) return false;
    return true;
}

inline bool same_weights(const FencePoset& a, const FencePoset& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.elems[i].weight != b.elems[i].weight) return false;
    return true;
}

// In a fence, p(u) > p(j) for u < j iff every dir between them is Down;
// these scans find the extreme index where the monotone run breaks.
inline std::size_t largest_not_above(const FencePoset& p, std::size_t j) {
    for (std::size_t u = j; u-- > 1;)
        if (p.dirs[u - 1] != Dir::Down) return u;
    return 0;
}

inline std::size_t largest_not_below(const FencePoset& p, std::size_t j) {
    for (std::size_t u = j; u-- > 1;)
        if (p.dirs[u - 1] != Dir::Up) return u;
    return 0;
}

inline std::size_t smallest_not_below(const FencePoset& p, std::size_t j) {
    for (std::size_t v = j + 1; v <= p.size(); ++v)
        if (p.dirs[v - 2] != Dir::Down) return v;
    return p.size() + 1;
}

inline std::size_t smallest_not_above(const FencePoset& p, std::size_t j) {
    for (std::size_t v = j + 1; v <= p.size(); ++v)
        if (p.dirs[v - 2] != Dir::Up) return v;
    return p.size() + 1;
}

} // namespace detail

// All overlaps of the requested kind. The self-search (p1 aliased as both
// arguments) is the intended use for reverse kissing overlaps.
inline std::vector<OverlapSpec> find_overlaps(const FencePoset& p1, const FencePoset& p2,
                                              OverlapKind kind) {
    std::vector<OverlapSpec> out;
    const std::size_t h1 = p1.size(), h2 = p2.size();
    if (kind == OverlapKind::Graft) {
        out.push_back({OverlapKind::Graft, 1, h1, 1, h2, 0, true, true});
        return out;
    }
    if (kind == OverlapKind::Crossing) {
        for (std::size_t s = 1; s <= h1; ++s)
            for (std::size_t t = s; t <= h1; ++t) {
                if (!detail::slice_on_top(p1, s, t)) continue;
                const FencePoset a = slice(p1, s, t);
                const std::size_t len = t - s + 1;
                for (std::size_t s2 = 1; s2 + len - 1 <= h2; ++s2) {
                    const std::size_t t2 = s2 + len - 1;
                    if (s == 1 && s2 == 1) continue;
                    if (t == h1 && t2 == h2) continue;
                    if (!detail::slice_on_bottom(p2, s2, t2)) continue;
                    const FencePoset b = slice(p2, s2, t2);
                    if (!detail::same_labels_dirs(a, b) || !detail::same_weights(a, b))
                        continue;
                    out.push_back({OverlapKind::Crossing, s, t, s2, t2, 0, true, true});
                }
            }
        return out;
    }
    // Reverse kissing self-overlap.
    const FencePoset& p = p1;
    for (std::size_t r = 1; r <= h1; ++r)
        for (std::size_t s = r; s <= h1; ++s) {
            const std::size_t t = 2 * s - r + 1; // R and R' have equal lengths
            if (t > h1) continue;
            if (r == 1 && t == h1) continue;
            if (!detail::slice_on_top(p, r, s)) continue;
            if (!detail::slice_on_bottom(p, s + 1, t)) continue;
            const FencePoset a = slice(p, r, s);
            const FencePoset b = reverse(slice(p, s + 1, t));
            if (!detail::same_labels_dirs(a, b)) continue;
            // weight-preserving away from the kissing pair (s, s+1)
            bool ok = true;
            for (std::size_t i = 0; i + 1 < a.size(); ++i)
                if (a.elems[i].weight != b.elems[i].weight) ok = false;
            if (!ok) continue;
            out.push_back({OverlapKind::ReverseKissing, s, t, 0, 0, r, true, true});
        }
    return out;
}

struct CrossingResolution {
    FencePoset p3, p4, p5, p6;
    Poly z_r, z_s, z_t;
};

// Resolution of a crossing overlap; satisfies
// W(p1) W(p2) = W(p3) W(p4) + Z_R Z_s Z_t W(p5) W(p6).
inline CrossingResolution resolve_crossing(const FencePoset& p1, const FencePoset& p2,
                                           const OverlapSpec& o) {
    if (o.kind != OverlapKind::Crossing) throw InvalidOverlap("not a crossing overlap");
    const std::size_t h1 = p1.size(), h2 = p2.size();
    const std::size_t s = o.s, t = o.t, s2 = o.s2, t2 = o.t2;
    if (t > h1 || t2 > h2 || (s == 1 && s2 == 1) || (t == h1 && t2 == h2))
        throw InvalidOverlap();

    CrossingResolution res;
    res.p3 = concat(slice(p1, 1, t), slice(p2, t2 + 1, h2), Dir::Up);
    res.p4 = concat(slice(p2, 1, t2), slice(p1, t + 1, h1), Dir::Down);
    res.z_r = product_of_weights(p1, s, t);
    res.z_s = Poly::one();
    res.z_t = Poly::one();

    if (s > 1 && s2 > 1) {
        res.p5 = concat(slice(p1, 1, s - 1), reverse(slice(p2, 1, s2 - 1)), Dir::Down);
    } else if (s == 1) {
        const std::size_t u2 = detail::largest_not_below(p2, s2 - 1);
        res.p5 = slice(p2, 1, u2);
        res.z_s = product_of_weights(p2, u2 + 1, s2 - 1);
    } else { // s2 == 1
        const std::size_t u1 = detail::largest_not_above(p1, s - 1);
        res.p5 = slice(p1, 1, u1);
        res.z_s = product_of_weights(p1, u1 + 1, s - 1);
    }

    if (t < h1 && t2 < h2) {
        res.p6 = concat(reverse(slice(p1, t + 1, h1)), slice(p2, t2 + 1, h2), Dir::Down);
    } else if (t == h1) {
        const std::size_t v2 = detail::smallest_not_below(p2, t2 + 1);
        res.p6 = slice(p2, v2, h2);
        res.z_t = product_of_weights(p2, t2 + 1, v2 - 1);
    } else { // t2 == h2
        const std::size_t v1 = detail::smallest_not_above(p1, t + 1);
        res.p6 = slice(p1, v1, h1);
        res.z_t = product_of_weights(p1, t + 1, v1 - 1);
    }
    return res;
}

struct GraftResolution {
    FencePoset p34, p5, p6;
    Poly z;
};

// Resolution of the grafting product; satisfies
// W(p1) W(p2) = W(p34) + Z W(p5) W(p6).
inline GraftResolution resolve_graft(const FencePoset& p1, const FencePoset& p2) {
    GraftResolution res;
    res.p34 = concat(p1, p2, Dir::Up);
    const std::size_t u = p1.empty() ? 0 : detail::largest_not_above(p1, p1.size());
    const std::size_t v = p2.empty() ? 1 : detail::smallest_not_below(p2, 1);
    res.p5 = slice(p1, 1, u);
    res.p6 = slice(p2, v, p2.size());
    res.z = product_of_weights(p2, 1, v - 1);
    return res;
}

struct KissingResolution {
    FencePoset p34, p56;
    Poly z_r, z_t;
};

// Resolution of a reverse kissing self-overlap; satisfies
// W(p) = W(p34) + Z_R Z_t W(p56).
inline KissingResolution resolve_reverse_kissing(const FencePoset& p, const OverlapSpec& o) {
    if (o.kind != OverlapKind::ReverseKissing)
        throw InvalidOverlap("not a reverse kissing overlap");
    const std::size_t h = p.size();
    const std::size_t r = o.r, s = o.s, t = o.t;
    if (t > h || (r == 1 && t == h)) throw InvalidOverlap();

    KissingResolution res;
    res.p34 = concat(concat(slice(p, 1, r - 1), reverse(slice(p, r, t)), Dir::Up),
                     slice(p, t + 1, h), Dir::Up);
    res.z_r = product_of_weights(p, s + 1, t);
    res.z_t = Poly::one();

    if (r > 1 && t < h) {
        res.p56 = concat(slice(p, 1, s - 1), slice(p, t + 1, h), Dir::Down);
    } else if (r == 1) {
        const std::size_t v = detail::smallest_not_below(p, t + 1);
        res.p56 = slice(p, v, h);
        res.z_t = product_of_weights(p, t + 1, v - 1);
    } else { // t == h
        const std::size_t u = detail::largest_not_above(p, s - 1);
        res.p56 = slice(p, 1, u);
    }
    return res;
}

// --- gentle pairs and walks ---------------------------------------------------

struct Arrow {
    int src = 0, tgt = 0; // vertex indices
    std::string name;
};

// Quiver with forbidden 2-paths; orbifold type means Z consists of loop
// squares and oriented-triangle triples.
struct GentlePair {
    std::vector<int> vlabel; // vertex -> label in {1,2,3}
    std::vector<Arrow> arrows;
    std::vector<std::pair<int, int>> z; // forbidden 2-paths (arrow ids)

    bool in_z(int a, int b) const {
        return std::find(z.begin(), z.end(), std::make_pair(a, b)) != z.end();
    }
    int arrow(const std::string& name) const {
        for (std::size_t i = 0; i < arrows.size(); ++i)
            if (arrows[i].name == name) return static_cast<int>(i);
        throw OutOfRange("no arrow named " + name);
    }
};

// The quiver of A(k1,k2,k3): two triangle slots 1 -> 2 -> 3 -> 1, with the
// vertex of each nonzero-k label doubled (one copy per slot) and a loop on
// every copy. When all k are nonzero the two slots collapse to one triangle
// over single loop-carrying vertices.
inline GentlePair gentle_pair_for(const KParams& k) {
    GentlePair gp;
    const bool all_positive = k.k1 > 0 && k.k2 > 0 && k.k3 > 0;
    const int slots = all_positive ? 1 : 2;
    int vert[3][2];
    for (int lab = 0; lab < 3; ++lab) {
        if (k.k(lab) > 0 && !all_positive) {
            for (int s = 0; s < 2; ++s) {
                vert[lab][s] = static_cast<int>(gp.vlabel.size());
                gp.vlabel.push_back(lab + 1);
            }
        } else {
            vert[lab][0] = vert[lab][1] = static_cast<int>(gp.vlabel.size());
            gp.vlabel.push_back(lab + 1);
        }
    }
    static const char* names[3] = {"alpha", "beta", "gamma"};
    for (int s = 0; s < slots; ++s) {
        std::array<int, 3> tri{};
        for (int lab = 0; lab < 3; ++lab) {
            Arrow a;
            a.src = vert[lab][s];
            a.tgt = vert[(lab + 1) % 3][s];
            a.name = names[lab];
            if (slots == 2) a.name += std::to_string(s + 1);
            tri[lab] = static_cast<int>(gp.arrows.size());
            gp.arrows.push_back(a);
        }
        gp.z.emplace_back(tri[0], tri[1]);
        gp.z.emplace_back(tri[1], tri[2]);
        gp.z.emplace_back(tri[2], tri[0]);
    }
    static const char* loops[3] = {"mu", "rho", "nu"};
    for (int lab = 0; lab < 3; ++lab) {
        if (k.k(lab) == 0) continue;
        const int copies = all_positive ? 1 : 2;
        for (int s = 0; s < copies; ++s) {
            Arrow a;
            a.src = a.tgt = vert[lab][s];
            a.name = loops[lab];
            if (copies == 2) a.name += std::to_string(s + 1);
            const int id = static_cast<int>(gp.arrows.size());
            gp.arrows.push_back(a);
            gp.z.emplace_back(id, id);
        }
    }
    return gp;
}

// Gentle axioms plus orbifold type (every Z element is a loop square or part
// of an oriented-triangle triple).
inline bool is_gentle_orbifold(const GentlePair& gp) {
    const int nv = static_cast<int>(gp.vlabel.size());
    for (int v = 0; v < nv; ++v) {
        std::vector<int> in, out;
        for (std::size_t a = 0; a < gp.arrows.size(); ++a) {
            if (gp.arrows[a].tgt == v) in.push_back(static_cast<int>(a));
            if (gp.arrows[a].src == v) out.push_back(static_cast<int>(a));
        }
        if (in.size() > 2 || out.size() > 2) return false;
        for (int a : in) {
            int with = 0, without = 0;
            for (int b : out) (gp.in_z(a, b) ? with : without)++;
            if (with > 1 || without > 1) return false;
        }
        for (int b : out) {
            int with = 0, without = 0;
            for (int a : in) (gp.in_z(a, b) ? with : without)++;
            if (with > 1 || without > 1) return false;
        }
    }
    for (const auto& [a, b] : gp.z) {
        if (a == b) {
            if (gp.arrows[a].src != gp.arrows[a].tgt) return false; // loop square
            continue;
        }
        // must belong to an oriented triangle a -> b -> c -> a inside Z
        bool closed = false;
        for (std::size_t c = 0; c < gp.arrows.size(); ++c)
            if (gp.in_z(b, static_cast<int>(c)) && gp.in_z(static_cast<int>(c), a))
                closed = true;
        if (!closed) return false;
    }
    return true;
}

struct WalkStep {
    int arrow = 0;
    bool inv = false;

    friend bool operator==(const WalkStep&, const WalkStep&) = default;
};

using Walk = std::vector<WalkStep>;

namespace detail {

inline int step_src(const GentlePair& gp, const WalkStep& s) {
    return s.inv ? gp.arrows[s.arrow].tgt : gp.arrows[s.arrow].src;
}
inline int step_tgt(const GentlePair& gp, const WalkStep& s) {
    return s.inv ? gp.arrows[s.arrow].src : gp.arrows[s.arrow].tgt;
}

inline bool pair_admissible(const GentlePair& gp, const WalkStep& a, const WalkStep& b) {
    if (step_tgt(gp, a) != step_src(gp, b)) return false;
    if (a.arrow == b.arrow && a.inv != b.inv) return false; // alpha^± alpha^∓
    if (!a.inv && !b.inv && gp.in_z(a.arrow, b.arrow)) return false;
    if (a.inv && b.inv && gp.in_z(b.arrow, a.arrow)) return false; // beta^-1 alpha^-1
    return true;
}

} // namespace detail

inline bool walk_admissible(const GentlePair& gp, const Walk& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (!detail::pair_admissible(gp, w[i], w[i + 1])) return false;
    return true;
}

// A walk poset remembers its walk so that g-vectors and the empty-resolution
// conventions can be read off the quiver.
struct WalkPoset {
    FencePoset poset;
    Walk walk;
    std::vector<int> vertices; // vertex of each element
};

// Element weight: lambda * (product of out-arrow targets)/(in-arrow sources).
inline Poly walk_weight(const GentlePair& gp, int vertex, const Rational& lambda) {
    Expo e;
    for (const Arrow& a : gp.arrows) {
        if (a.src == vertex) e.x[gp.vlabel[a.tgt] - 1]++;
        if (a.tgt == vertex) e.x[gp.vlabel[a.src] - 1]--;
    }
    return Poly::monomial(e, lambda);
}

inline WalkPoset walk_to_poset(const GentlePair& gp, const Walk& w,
                               const std::vector<Rational>& scalars) {
    if (!walk_admissible(gp, w)) throw InadmissibleWalk();
    if (scalars.size() != w.size() + 1)
        throw OutOfRange("need one scalar per poset element");
    WalkPoset wp;
    wp.walk = w;
    wp.vertices.push_back(w.empty() ? 0 : detail::step_src(gp, w[0]));
    for (const WalkStep& s : w) wp.vertices.push_back(detail::step_tgt(gp, s));
    for (std::size_t i = 0; i < wp.vertices.size(); ++i)
        wp.poset.elems.push_back(
            {gp.vlabel[wp.vertices[i]], walk_weight(gp, wp.vertices[i], scalars[i])});
    for (const WalkStep& s : w) wp.poset.dirs.push_back(s.inv ? Dir::Up : Dir::Down);
    return wp;
}

// Admissible one-step extensions of a walk, when they exist.
inline std::optional<int> extend_front_direct(const GentlePair& gp, const Walk& w,
                                              int first_vertex) {
    for (std::size_t a = 0; a < gp.arrows.size(); ++a) {
        const WalkStep step{static_cast<int>(a), false};
        if (gp.arrows[a].tgt != first_vertex) continue;
        if (w.empty() || detail::pair_admissible(gp, step, w[0])) return static_cast<int>(a);
    }
    return std::nullopt;
}

inline std::optional<int> extend_back_inverse(const GentlePair& gp, const Walk& w,
                                              int last_vertex) {
    for (std::size_t a = 0; a < gp.arrows.size(); ++a) {
        const WalkStep step{static_cast<int>(a), true};
        if (gp.arrows[a].tgt != last_vertex) continue; // s(gamma^{-1}) = t(gamma)
        if (w.empty() || detail::pair_admissible(gp, w.back(), step)) return static_cast<int>(a);
    }
    return std::nullopt;
}

inline std::optional<int> extend_back_direct(const GentlePair& gp, const Walk& w,
                                             int last_vertex) {
    for (std::size_t a = 0; a < gp.arrows.size(); ++a) {
        const WalkStep step{static_cast<int>(a), false};
        if (gp.arrows[a].src != last_vertex) continue;
        if (w.empty() || detail::pair_admissible(gp, w.back(), step)) return static_cast<int>(a);
    }
    return std::nullopt;
}

inline std::optional<int> extend_front_inverse(const GentlePair& gp, const Walk& w,
                                               int first_vertex) {
    for (std::size_t a = 0; a < gp.arrows.size(); ++a) {
        const WalkStep step{static_cast<int>(a), true};
        if (gp.arrows[a].src != first_vertex) continue; // t(gamma^{-1}) = s(gamma)
        if (w.empty() || detail::pair_admissible(gp, step, w[0])) return static_cast<int>(a);
    }
    return std::nullopt;
}

// General r-vector: e at s(beta) and s(gamma) for the admissible extensions
// beta w gamma^{-1}; either term is dropped when no such arrow exists.
inline GVector walk_r_vector(const GentlePair& gp, const WalkPoset& wp) {
    GVector r{0, 0, 0};
    if (const auto b = extend_front_direct(gp, wp.walk, wp.vertices.front()))
        r[gp.vlabel[gp.arrows[*b].src] - 1]++;
    if (const auto g = extend_back_inverse(gp, wp.walk, wp.vertices.back()))
        r[gp.vlabel[gp.arrows[*g].src] - 1]++;
    return r;
}

inline GVector walk_g_vector(const GentlePair& gp, const WalkPoset& wp) {
    // g_vec applies the chronological-leaf rule for r; swap in the walk rule.
    GVector g = g_vec(wp.poset);
    g[(wp.poset.elems.front().label + 1) % 3]--;
    g[(wp.poset.elems.back().label + 1) % 3]--;
    const GVector r = walk_r_vector(gp, wp);
    return {g[0] + r[0], g[1] + r[1], g[2] + r[2]};
}

// X_P = x^{g_P} W(P), with the walk r-vector for walk posets and the
// chronological-leaf rule for plain fences.
inline Poly x_of(const GentlePair& gp, const WalkPoset& wp) {
    return x_power(walk_g_vector(gp, wp)) * weight_poly(wp.poset);
}

inline Poly x_of(const FencePoset& p) { return x_power(g_vec(p)) * weight_poly(p); }

struct XDecomposition {
    Poly x34, x56, lambda;
};

// X_P = X_{P34} + lambda X_{P56} for a reverse kissing self-overlap on a walk
// poset. X_{P56} is the variable of the resolved walk; when the resolution is
// empty it degenerates to x_{t(beta)} / x_{s(alpha^{-1})} / 1 per the quiver.
inline XDecomposition decompose_X(const GentlePair& gp, const WalkPoset& wp,
                                  const OverlapSpec& o) {
    const KissingResolution res = resolve_reverse_kissing(wp.poset, o);
    const GVector g = walk_g_vector(gp, wp);
    XDecomposition out;
    out.x34 = x_power(g) * weight_poly(res.p34);

    const Poly residue = x_power(g) * (res.z_r * res.z_t); // = lambda x^{g_56}
    const std::size_t h = wp.poset.size();

    if (!res.p56.empty()) {
        // Reassemble the walk underlying P56.
        WalkPoset w56;
        w56.poset = res.p56;
        if (o.r > 1 && o.t < h) {
            // P[1,s-1] joined down to P[t+1,h] through a direct bridge arrow.
            for (std::size_t i = 0; i + 2 <= o.s - 1; ++i) w56.walk.push_back(wp.walk[i]);
            std::optional<int> bridge;
            for (std::size_t a = 0; a < gp.arrows.size(); ++a) {
                const WalkStep step{static_cast<int>(a), false};
                if (gp.arrows[a].src != wp.vertices[o.s - 2] ||
                    gp.arrows[a].tgt != wp.vertices[o.t]) continue;
                const bool ok_prev =
                    w56.walk.empty() || detail::pair_admissible(gp, w56.walk.back(), step);
                const bool ok_next = o.t >= wp.walk.size() ||
                                     detail::pair_admissible(gp, step, wp.walk[o.t]);
                if (ok_prev && ok_next) bridge = static_cast<int>(a);
            }
            if (!bridge) throw Error("no bridging arrow for the resolved walk");
            w56.walk.push_back({*bridge, false});
            for (std::size_t i = o.t; i + 1 < h; ++i) w56.walk.push_back(wp.walk[i]);
            for (std::size_t i = 0; i + 1 <= o.s - 1; ++i)
                w56.vertices.push_back(wp.vertices[i]);
            for (std::size_t i = o.t; i < h; ++i) w56.vertices.push_back(wp.vertices[i]);
        } else if (o.r == 1) {
            const std::size_t v = h - res.p56.size() + 1; // P56 = P[v,h]
            for (std::size_t i = v - 1; i + 1 < h; ++i) w56.walk.push_back(wp.walk[i]);
            for (std::size_t i = v - 1; i < h; ++i) w56.vertices.push_back(wp.vertices[i]);
        } else { // t == h
            const std::size_t u = res.p56.size(); // P56 = P[1,u]
            for (std::size_t i = 0; i + 1 < u; ++i) w56.walk.push_back(wp.walk[i]);
            for (std::size_t i = 0; i < u; ++i) w56.vertices.push_back(wp.vertices[i]);
        }
        out.x56 = x_of(gp, w56);
        out.lambda = div_exact(residue, x_power(walk_g_vector(gp, w56)));
    } else {
        Poly x56 = Poly::one();
        if (o.r == 1) {
            if (const auto b = extend_back_direct(gp, wp.walk, wp.vertices.back()))
                x56 = Poly::variable(gp.vlabel[gp.arrows[*b].tgt] - 1);
        } else {
            if (const auto a = extend_front_inverse(gp, wp.walk, wp.vertices.front()))
                x56 = Poly::variable(gp.vlabel[gp.arrows[*a].tgt] - 1);
        }
        out.x56 = x56;
        out.lambda = div_exact(residue, x56);
    }
    if (!out.lambda.is_constant())
        throw Error("X decomposition residue is not a scalar multiple of X_56");
    return out;
}

} // namespace mcl
