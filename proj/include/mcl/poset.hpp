#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "mcl/errors.hpp"
#include "mcl/farey.hpp"
#include "mcl/laurent.hpp"

namespace mcl {

// Exchange-polynomial data: middle coefficients k_i and degrees d_i.
struct KParams {
    int k1 = 0, k2 = 0, k3 = 0;

    KParams() = default;
    KParams(int a, int b, int c) : k1(a), k2(b), k3(c) {
        if (a < 0 || b < 0 || c < 0) throw OutOfRange("k values must be nonnegative");
    }

    int k(int i) const { return i == 0 ? k1 : i == 1 ? k2 : k3; }
    int d(int i) const { return k(i) == 0 ? 1 : 2; }

    int k_of(const Fraction& f) const { return k(parity_index(f)); }
    int d_of(const Fraction& f) const { return d(parity_index(f)); }

    KParams permuted(const std::array<int, 3>& sigma) const {
        // New index i takes the old value at sigma[i].
        return KParams(k(sigma[0]), k(sigma[1]), k(sigma[2]));
    }

    std::string str() const {
        return std::to_string(k1) + "," + std::to_string(k2) + "," + std::to_string(k3);
    }
    friend bool operator==(const KParams&, const KParams&) = default;
};

enum class Mode { Trivial, Principal };
enum class Dir : uint8_t { Up, Down };

inline Dir flip(Dir d) { return d == Dir::Up ? Dir::Down : Dir::Up; }

// x1-hat = x2/x3, x2-hat = x3/x1, x3-hat = x1/x2 (label is 1-based).
inline Expo xhat_expo(int label) {
    Expo e;
    const int i = label - 1;
    e.x[(i + 1) % 3] = 1;
    e.x[(i + 2) % 3] = -1;
    return e;
}

struct PosetElement {
    int label = 1; // 1..3
    Poly weight;

    friend bool operator==(const PosetElement&, const PosetElement&) = default;
};

// Labeled weighted fence poset in chronological order. dirs[i] relates
// elements i and i+1 (Up means element i < element i+1). The circular flag
// adds the closing relation L > R, turning the Hasse path into a cycle.
struct FencePoset {
    std::vector<PosetElement> elems;
    std::vector<Dir> dirs;
    bool circular = false;

    std::size_t size() const { return elems.size(); }
    bool empty() const { return elems.empty(); }

    friend bool operator==(const FencePoset&, const FencePoset&) = default;
};

namespace detail {

// Weight of one poset element: scale * xhat(label), principal mode adds y.
inline Poly element_weight(int label, const Rational& scale, int power, Mode mode) {
    Expo e = xhat_expo(label);
    if (power == 2) e = e + xhat_expo(label);
    if (mode == Mode::Principal) e.y2[label - 1] = 2;
    return Poly::monomial(e, scale);
}

inline void append_block(FencePoset& p, int label, int k, Dir dir, bool k_first, Mode mode) {
    auto push = [&](const Poly& w) {
        if (!p.elems.empty()) p.dirs.push_back(dir);
        p.elems.push_back({label, w});
    };
    if (k == 0) {
        push(element_weight(label, 1, 2, mode));
    } else {
        const Poly wk = element_weight(label, k, 1, mode);
        const Poly winv = element_weight(label, Rational(1, k), 1, mode);
        push(k_first ? wk : winv);
        p.dirs.push_back(dir);
        p.elems.push_back({label, k_first ? winv : wk});
    }
}

} // namespace detail

inline FencePoset concat(const FencePoset& a, const FencePoset& b, Dir dir) {
    if (a.circular || b.circular) throw Error("cannot concatenate circular posets");
    if (a.empty()) return b;
    if (b.empty()) return a;
    FencePoset r = a;
    r.dirs.push_back(dir);
    r.dirs.insert(r.dirs.end(), b.dirs.begin(), b.dirs.end());
    r.elems.insert(r.elems.end(), b.elems.begin(), b.elems.end());
    return r;
}

inline FencePoset reverse(const FencePoset& p) {
    FencePoset r;
    r.circular = p.circular;
    r.elems.assign(p.elems.rbegin(), p.elems.rend());
    for (auto it = p.dirs.rbegin(); it != p.dirs.rend(); ++it) r.dirs.push_back(flip(*it));
    return r;
}

// 1-based inclusive slice; slice(p, 1, 0) is the empty poset.
inline FencePoset slice(const FencePoset& p, std::size_t i, std::size_t j) {
    if (j + 1 == i) return FencePoset{};
    if (i < 1 || j < i || j > p.size()) throw IndexOutOfRange();
    FencePoset r;
    r.elems.assign(p.elems.begin() + i - 1, p.elems.begin() + j);
    if (j > i) r.dirs.assign(p.dirs.begin() + i - 1, p.dirs.begin() + j - 1);
    return r;
}

// The chain H from the half circle at the origin: chronologically a
// descending chain of the label blocks [3, 1, 2], doubled blocks carrying
// weights 1/k then k.
inline FencePoset build_H(const KParams& k, Mode mode = Mode::Trivial) {
    FencePoset p;
    for (int label : {3, 1, 2})
        detail::append_block(p, label, k.k(label - 1), Dir::Down, /*k_first=*/false, mode);
    return p;
}

// Counterclockwise variant used by the dual construction: ascending chain of
// the label blocks [2, 1, 3], doubled blocks carrying k then 1/k.
inline FencePoset build_H_dual(const KParams& k, Mode mode = Mode::Trivial) {
    FencePoset p;
    for (int label : {2, 1, 3})
        detail::append_block(p, label, k.k(label - 1), Dir::Up, /*k_first=*/true, mode);
    return p;
}

// The fence poset of gamma_{p/q}: crossings of the segment (0,0)-(q,p) with
// the lattice of lines of slope -1 (label 1), infinity (label 2), 0 (label 3).
inline FencePoset build_P(const Fraction& f, const KParams& k, Mode mode = Mode::Trivial) {
    if (f.is_infinity()) throw OutOfRange("build_P expects a finite fraction");
    const long long p = f.p, q = f.q;
    FencePoset out;
    if (p == 0) return out; // P_{0/1} is empty

    struct Event {
        long long num, den; // crossing parameter t = num/den along gamma
        int label;
        long long c; // line index: x+y=c, x=c, or y=c
    };
    std::vector<Event> ev;
    for (long long c = 1; c < p + q; ++c) ev.push_back({c, p + q, 1, c});
    for (long long i = 1; i < q; ++i) ev.push_back({i, q, 2, i});
    for (long long j = 1; j < p; ++j) ev.push_back({j, p, 3, j});
    std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) {
        return a.num * b.den < b.num * a.den;
    });

    struct Pt {
        long long x, y;
    };
    // Endpoints of the crossed unit segment, and the in-segment crossing
    // parameter u = un/ud in (0,1) measured from endpoint e1 toward e2.
    auto segment = [&](const Event& e, Pt& e1, Pt& e2, long long& un, long long& ud) {
        if (e.label == 1) {
            const long long a = (q * e.c) / (p + q);
            e1 = {a, e.c - a};
            e2 = {a + 1, e.c - a - 1};
            un = q * e.c - a * (p + q);
            ud = p + q;
        } else if (e.label == 2) {
            const long long b = (p * e.c) / q;
            e1 = {e.c, b};
            e2 = {e.c, b + 1};
            un = p * e.c - b * q;
            ud = q;
        } else {
            const long long a = (q * e.c) / p;
            e1 = {a, e.c};
            e2 = {a + 1, e.c};
            un = q * e.c - a * p;
            ud = p;
        }
    };
    // side > 0: point lies left of the oriented line through (0,0),(q,p).
    auto side = [&](const Pt& pt) { return q * pt.y - p * pt.x; };

    for (std::size_t idx = 0; idx < ev.size(); ++idx) {
        Pt e1, e2;
        long long un, ud;
        segment(ev[idx], e1, e2, un, ud);
        const int label = ev[idx].label;
        const int kv = k.k(label - 1);

        if (idx > 0) {
            // Relation with the previous element: shared endpoint left of
            // gamma means ascending, right means descending.
            Pt p1, p2;
            long long tn, td;
            segment(ev[idx - 1], p1, p2, tn, td);
            Pt shared{};
            bool found = false;
            for (const Pt& a : {p1, p2})
                for (const Pt& b : {e1, e2})
                    if (a.x == b.x && a.y == b.y) {
                        shared = a;
                        found = true;
                    }
            if (!found) throw Error("consecutive crossed segments share no endpoint");
            out.dirs.push_back(side(shared) < 0 ? Dir::Down : Dir::Up);
        }

        if (kv == 0) {
            out.elems.push_back({label, detail::element_weight(label, 1, 2, mode)});
        } else {
            // Doubled element. Closer to the right endpoint: descending pair
            // weighted [1/k, k]; otherwise (including the exact-midpoint tie
            // at the central crossing): ascending pair weighted [k, 1/k].
            const bool e2_right = side(e2) < 0;
            const long long toward_right_num = e2_right ? un : ud - un;
            const bool closer_right = 2 * toward_right_num > ud;
            const Poly wk = detail::element_weight(label, kv, 1, mode);
            const Poly winv = detail::element_weight(label, Rational(1, kv), 1, mode);
            if (closer_right) {
                out.elems.push_back({label, winv});
                out.dirs.push_back(Dir::Down);
                out.elems.push_back({label, wk});
            } else {
                out.elems.push_back({label, wk});
                out.dirs.push_back(Dir::Up);
                out.elems.push_back({label, winv});
            }
        }
    }
    return out;
}

// Closed-form element counts (h, h-tilde).
inline std::pair<long long, long long> element_count(const Fraction& f, const KParams& k) {
    if (f.is_infinity() || f.is_zero()) throw OutOfRange("element_count expects f in (0,inf)");
    const long long h =
        k.d(0) * (f.q + f.p - 1) + k.d(1) * (f.q - 1) + k.d(2) * (f.p - 1);
    return {h, h + k.d(0) + k.d(1) + k.d(2)};
}

// Flip the central doubled pair (positions h/2, h/2+1) when k_{p/q} > 0.
// This is the opposite convention for the midpoint crossing; paired with the
// counterclockwise closing chain it yields the dual posets.
inline FencePoset dualize_P(const FencePoset& p, const Fraction& f, const KParams& k) {
    FencePoset r = p;
    if (k.k_of(f) == 0 || p.size() < 2) return r;
    const std::size_t h = p.size();
    if (h % 2 != 0) throw Error("poset with k_{p/q} > 0 must have an even number of elements");
    const std::size_t i = h / 2 - 1; // 0-based first of the central pair
    if (r.dirs[i] != Dir::Up || r.elems[i].label != r.elems[i + 1].label)
        throw Error("central pair is not an ascending doubled pair");
    std::swap(r.elems[i], r.elems[i + 1]);
    r.dirs[i] = Dir::Down;
    return r;
}

// P-tilde: the curve extended by a clockwise half circle at its endpoint.
// For p/q in (0,inf) this equals P_{p/q} with H appended above its right end.
inline FencePoset build_tilde(const Fraction& f, const KParams& k, Mode mode = Mode::Trivial,
                              bool dual = false) {
    if (f.is_infinity()) throw OutOfRange("use build_tilde_one_zero for 1/0");
    if (f.is_zero()) {
        if (dual) throw OutOfRange("dual tilde poset is defined for f in (0,inf)");
        // Segment (eps,eps)-(1+eps,eps): descending blocks [1, 2].
        FencePoset p;
        detail::append_block(p, 1, k.k1, Dir::Down, /*k_first=*/false, mode);
        detail::append_block(p, 2, k.k2, Dir::Down, /*k_first=*/false, mode);
        return p;
    }
    if (dual) return concat(dualize_P(build_P(f, k, mode), f, k), build_H_dual(k, mode), Dir::Down);
    return concat(build_P(f, k, mode), build_H(k, mode), Dir::Up);
}

// P_{1/0} comes from the segment (0,1)-(2,0): just the label-2 block.
inline FencePoset build_P_one_zero(const KParams& k, Mode mode = Mode::Trivial) {
    FencePoset p;
    detail::append_block(p, 2, k.k2, Dir::Up, /*k_first=*/true, mode);
    return p;
}

inline FencePoset build_tilde_one_zero(const KParams& k, Mode mode = Mode::Trivial) {
    return concat(build_P_one_zero(k, mode), build_H(k, mode), Dir::Down);
}

// Circular fence: P-tilde plus the closing relation L > R.
inline FencePoset build_circ(const Fraction& f, const KParams& k, Mode mode = Mode::Trivial) {
    FencePoset p = build_tilde(f, k, mode);
    p.circular = true;
    return p;
}

using GVector = std::array<int, 3>;

inline GVector operator+(const GVector& a, const GVector& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

// g_P = -a + b + r. Minimal / strictly-maximal counts come from the fence
// structure (cyclic when circular); r counts the two chronological ends with
// the label shift x2 -> r1, x3 -> r2, x1 -> r3.
inline GVector g_vec(const FencePoset& p) {
    GVector a{0, 0, 0}, b{0, 0, 0}, r{0, 0, 0};
    const std::size_t n = p.size();
    if (n == 0) return {0, 0, 0};

    // above[i][0]: is the left neighbor above element i; above[i][1]: right.
    auto above_left = [&](std::size_t i) -> int {
        if (i == 0) return p.circular ? 0 : -1; // closing relation: P(1) > P(n)
        return p.dirs[i - 1] == Dir::Down ? 1 : 0;
    };
    auto above_right = [&](std::size_t i) -> int {
        if (i + 1 == n) return p.circular ? 1 : -1;
        return p.dirs[i] == Dir::Up ? 1 : 0;
    };

    for (std::size_t i = 0; i < n; ++i) {
        const int la = above_left(i), ra = above_right(i);
        const int li = p.elems[i].label - 1;
        const bool minimal = la != 0 && ra != 0;
        const bool strictly_maximal = la == 0 && ra == 0;
        if (minimal) a[li]++;
        if (strictly_maximal) b[li]++;
    }
    if (!p.circular) {
        r[(p.elems[0].label + 1) % 3]++;
        r[(p.elems[n - 1].label + 1) % 3]++;
    }
    return {-a[0] + b[0] + r[0], -a[1] + b[1] + r[1], -a[2] + b[2] + r[2]};
}

enum class Constraint { Free, In, Out };

namespace detail {

inline bool allows(Constraint c, bool in) {
    return c == Constraint::Free || (c == Constraint::In) == in;
}

// Two-state scan over the fence: state = membership of the current element.
inline Poly fence_dp(const FencePoset& p, Constraint cl, Constraint cr) {
    const std::size_t n = p.size();
    Poly in_state = allows(cl, true) ? p.elems[0].weight : Poly();
    Poly out_state = allows(cl, false) ? Poly::one() : Poly();
    for (std::size_t i = 1; i < n; ++i) {
        const Poly& w = p.elems[i].weight;
        Poly nin, nout;
        if (p.dirs[i - 1] == Dir::Up) {
            nin = in_state * w;
            nout = in_state + out_state;
        } else {
            nin = (in_state + out_state) * w;
            nout = out_state;
        }
        in_state = std::move(nin);
        out_state = std::move(nout);
    }
    Poly total;
    if (allows(cr, true)) total += in_state;
    if (allows(cr, false)) total += out_state;
    return total;
}

} // namespace detail

// Sum of wt(I) over order ideals subject to membership constraints on the
// chronological endpoints. Circular posets condition on both endpoints and
// drop the combination forbidden by L > R.
inline Poly weight_poly(const FencePoset& p, Constraint cl = Constraint::Free,
                        Constraint cr = Constraint::Free) {
    if (p.empty())
        return (cl == Constraint::In || cr == Constraint::In) ? Poly() : Poly::one();
    if (!p.circular) return detail::fence_dp(p, cl, cr);

    if (p.size() == 1) {
        Poly total;
        if (detail::allows(cl, true) && detail::allows(cr, true)) total += p.elems[0].weight;
        if (detail::allows(cl, false) && detail::allows(cr, false)) total += Poly::one();
        return total;
    }
    Poly total;
    for (bool lin : {false, true}) {
        if (!detail::allows(cl, lin)) continue;
        for (bool rin : {false, true}) {
            if (!detail::allows(cr, rin)) continue;
            if (lin && !rin) continue; // closing relation L > R
            FencePoset flat = p;
            flat.circular = false;
            total += detail::fence_dp(flat, lin ? Constraint::In : Constraint::Out,
                                      rin ? Constraint::In : Constraint::Out);
        }
    }
    return total;
}

// Product of the element weights over the 1-based inclusive range.
inline Poly product_of_weights(const FencePoset& p, std::size_t i, std::size_t j) {
    if (j + 1 == i) return Poly::one();
    if (i < 1 || j < i || j > p.size()) throw IndexOutOfRange();
    Poly r = Poly::one();
    for (std::size_t t = i - 1; t < j; ++t) r *= p.elems[t].weight;
    return r;
}

inline Poly product_of_weights(const FencePoset& p) {
    return product_of_weights(p, 1, p.size());
}

// Exhaustive order-ideal enumeration (test oracle): all (mask, weight) pairs.
inline std::vector<std::pair<uint32_t, Poly>> brute_force_ideals(const FencePoset& p) {
    const std::size_t n = p.size();
    if (n > 22) throw TooLarge();
    std::vector<std::pair<uint32_t, Poly>> out;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i + 1 < n && ok; ++i) {
            const bool a = mask >> i & 1, b = mask >> (i + 1) & 1;
            if (p.dirs[i] == Dir::Up ? (b && !a) : (a && !b)) ok = false;
        }
        if (p.circular && n > 1 && (mask & 1) && !(mask >> (n - 1) & 1)) ok = false;
        if (!ok) continue;
        Poly w = Poly::one();
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) w *= p.elems[i].weight;
        out.emplace_back(mask, std::move(w));
    }
    return out;
}

// Christoffel word of p/q in (0,1] from the maximal decreasing chains of the
// k = 0 poset P-tilde: a length-1 chain reads A, a length-2 chain reads B.
inline std::string christoffel(const Fraction& f) {
    if (f.is_zero() || f.is_infinity() || Fraction(1, 1) < f)
        throw OutOfRange("christoffel expects p/q in (0,1]");
    const FencePoset pt = build_tilde(f, KParams(0, 0, 0));
    std::string word;
    std::size_t i = 0;
    while (i < pt.dirs.size()) {
        if (pt.dirs[i] == Dir::Up) {
            ++i;
            continue;
        }
        std::size_t run = 0;
        while (i < pt.dirs.size() && pt.dirs[i] == Dir::Down) ++run, ++i;
        if (run > 2) throw Error("maximal decreasing chain longer than 2");
        word += run == 1 ? 'A' : 'B';
    }
    return word;
}

} // namespace mcl
