#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "mcl/errors.hpp"

namespace mcl {

// Reduced nonnegative fraction; 1/0 is the point at infinity.
struct Fraction {
    long long p = 0;
    long long q = 1;

    Fraction() = default;
    Fraction(long long num, long long den) : p(num), q(den) {
        if (p < 0 || q < 0 || (p == 0 && q == 0)) throw NotReduced("fraction must be nonnegative");
        if (std::gcd(p, q) != 1) throw NotReduced();
    }

    bool is_infinity() const { return q == 0; }
    bool is_zero() const { return p == 0; }

    friend bool operator==(const Fraction&, const Fraction&) = default;

    // Order as extended rationals, with 1/0 = +infinity.
    friend bool operator<(const Fraction& a, const Fraction& b) {
        return a.p * b.q < b.p * a.q;
    }

    std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }
};

inline Fraction parse_fraction(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Fraction(std::stoll(s), 1);
    return Fraction(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

inline Fraction mediant(const Fraction& a, const Fraction& b) {
    return Fraction(a.p + b.p, a.q + b.q);
}

// det(a/b, c/d) = ad - bc.
inline long long det2(const Fraction& f, const Fraction& g) { return f.p * g.q - g.p * f.q; }

// Which exchange coefficient a fraction selects: k1 when p,q both odd,
// k2 when p odd / q even, k3 when p even / q odd.
inline int parity_index(const Fraction& f) {
    const bool po = f.p % 2 != 0, qo = f.q % 2 != 0;
    if (po && qo) return 0;
    if (po) return 1;
    return 2;
}

struct FareyTriple {
    Fraction left, middle, right;

    friend bool operator==(const FareyTriple&, const FareyTriple&) = default;

    bool valid() const {
        auto pm = [](long long v) { return v == 1 || v == -1; };
        return pm(det2(left, middle)) && pm(det2(middle, right)) && pm(det2(right, left)) &&
               left < middle && middle < right;
    }
};

inline FareyTriple farey_root() { return {Fraction(0, 1), Fraction(1, 1), Fraction(1, 0)}; }

inline FareyTriple left_child(const FareyTriple& t) {
    return {t.left, mediant(t.left, t.middle), t.middle};
}
inline FareyTriple right_child(const FareyTriple& t) {
    return {t.middle, mediant(t.middle, t.right), t.right};
}

inline std::pair<FareyTriple, FareyTriple> children(const FareyTriple& t) {
    return {left_child(t), right_child(t)};
}

// Stern-Brocot descent: the unique triple with the given middle, plus the
// L/R word leading to it from the root. 0/1 and 1/0 never appear as middles.
inline FareyTriple triple_of(const Fraction& f, std::string* path = nullptr) {
    if (f.is_zero() || f.is_infinity()) throw NotInterior(f.str() + " is not an interior fraction");
    FareyTriple t = farey_root();
    if (path) path->clear();
    while (!(t.middle == f)) {
        if (f < t.middle) {
            t = left_child(t);
            if (path) *path += 'L';
        } else {
            t = right_child(t);
            if (path) *path += 'R';
        }
    }
    return t;
}

inline FareyTriple replay_path(const std::string& path) {
    FareyTriple t = farey_root();
    for (char c : path) {
        if (c == 'L')
            t = left_child(t);
        else if (c == 'R')
            t = right_child(t);
        else
            throw OutOfRange("path letters must be L or R");
    }
    return t;
}

// The Vieta partner of the middle of a triple: the fraction it replaced.
inline Fraction vieta_partner(const Fraction& l, const Fraction& r) {
    const long long dp = l.p > r.p ? l.p - r.p : r.p - l.p;
    const long long dq = l.q > r.q ? l.q - r.q : r.q - l.q;
    return Fraction(dp, dq);
}

// Depth of a fraction: number of Farey-tree generations below the root
// triple at which it first appears as a middle; 0/1, 1/1, 1/0 have depth 0.
inline int farey_depth(const Fraction& f) {
    if (f.is_zero() || f.is_infinity() || f == Fraction(1, 1)) return 0;
    std::string path;
    triple_of(f, &path);
    return static_cast<int>(path.size()) + 1;
}

// All triples of the Farey tree up to the given number of generations,
// root = generation 0, in breadth-first order.
inline std::vector<FareyTriple> farey_vertices(int depth) {
    std::vector<FareyTriple> out{farey_root()};
    std::size_t level_start = 0;
    for (int d = 0; d < depth; ++d) {
        const std::size_t level_end = out.size();
        for (std::size_t i = level_start; i < level_end; ++i) {
            out.push_back(left_child(out[i]));
            out.push_back(right_child(out[i]));
        }
        level_start = level_end;
    }
    return out;
}

// All reduced fractions with p + q <= n (excluding 1/0).
inline std::vector<Fraction> fractions_up_to(int n) {
    std::vector<Fraction> out;
    for (int q = 1; q <= n; ++q)
        for (int p = 0; p + q <= n; ++p)
            if (std::gcd(p, q) == 1) out.emplace_back(p, q);
    return out;
}

} // namespace mcl
