#pragma once

#include <array>
#include <string>
#include <utility>

#include "mcl/cluster.hpp"
#include "mcl/mat2.hpp"
#include "mcl/poset.hpp"

namespace mcl {

// Permutations of {1,2,3} stored 0-based: sigma[i] is the image of i.
using Perm = std::array<int, 3>;

inline constexpr Perm perm_id{0, 1, 2};
inline constexpr Perm perm_12{1, 0, 2};
inline constexpr Perm perm_13{2, 1, 0};
inline constexpr Perm perm_23{0, 2, 1};
inline constexpr Perm perm_123{1, 2, 0}; // (1 2 3): 1->2, 2->3, 3->1
inline constexpr Perm perm_132{2, 0, 1}; // (1 3 2): 1->3, 3->2, 2->1

inline Perm compose(const Perm& a, const Perm& b) { // a after b
    return {a[b[0]], a[b[1]], a[b[2]]};
}

inline std::string perm_name(const Perm& p) {
    if (p == perm_id) return "id";
    if (p == perm_12) return "(1 2)";
    if (p == perm_13) return "(1 3)";
    if (p == perm_23) return "(2 3)";
    if (p == perm_123) return "(1 2 3)";
    return "(1 3 2)";
}

// S_P = [[kappa, 0], [kappa*M, kappa]] with kappa = M p12 - tr(P).
inline Mat2 s_matrix(const Mat2& p, const Poly& m) {
    const Poly kappa = m * p.b - trace(p);
    return {kappa, Poly(), kappa * m, kappa};
}

inline Mat2 s_of(const Rational& kappa, const Poly& m) {
    return {Poly::constant(kappa), Poly(), Rational(kappa) * m, Poly::constant(kappa)};
}

namespace detail {

// Reconstruct the omitted (2,1)-entry from det = 1.
inline Mat2 complete_sl2(Poly m11, Poly m12, Poly m22) {
    Poly m21 = div_exact(m11 * m22 - Poly::one(), m12);
    return {std::move(m11), std::move(m12), std::move(m21), std::move(m22)};
}

inline Poly xv(int i) { return Poly::variable(i); } // 0-based

} // namespace detail

// The initial CGC family P_sigma(f), Q_sigma(f), R_sigma(f).
inline Mat2 cgc_P(const Perm& s, const Poly& f, const KParams& k) {
    using detail::xv;
    const Poly x1 = xv(s[0]), x2 = xv(s[1]), x3 = xv(s[2]);
    const Rational k2(k.k(s[1])), k3(k.k(s[2]));
    Poly num = -(f * x2 * x3) + k2 * (x1 * x3) + k3 * (x1 * x2) + x1 * x1 + x2 * x2 + x3 * x3;
    return detail::complete_sl2(f, x1, div_exact(num, x2 * x3));
}

inline Mat2 cgc_Q(const Perm& s, const Poly& f, const KParams& k) {
    using detail::xv;
    const Poly x1 = xv(s[0]), x2 = xv(s[1]), x3 = xv(s[2]);
    const Rational k1(k.k(s[0])), k3(k.k(s[2]));
    Poly m11 = div_exact(f * x2 + k1 * x2 + x3, x1);
    Poly m22 = div_exact(-(f * x2 * x3) + k3 * (x1 * x2) + x1 * x1 + x2 * x2, x1 * x3);
    return detail::complete_sl2(std::move(m11), x2, std::move(m22));
}

inline Mat2 cgc_R(const Perm& s, const Poly& f, const KParams& k) {
    using detail::xv;
    const Poly x1 = xv(s[0]), x2 = xv(s[1]), x3 = xv(s[2]);
    const Rational k1(k.k(s[0])), k2(k.k(s[1]));
    Poly m11 = div_exact(f * x2 * x3 + k1 * (x2 * x3) + k2 * (x1 * x3) + x1 * x1 + x3 * x3,
                         x1 * x2);
    Poly m22 = div_exact(-(f * x2 * x3) + x2 * x2, x1 * x2);
    return detail::complete_sl2(std::move(m11), x3, std::move(m22));
}

// The initial CMM family X_sigma(f), Y_sigma(f), Z_sigma(f).
inline Mat2 cmm_X(const Perm& s, const Poly& f, const KParams& k) {
    const Rational k1(k.k(s[0]));
    return detail::complete_sl2(f, detail::xv(s[0]), -f - Poly::constant(k1));
}

inline Mat2 cmm_Y(const Perm& s, const Poly& f, const KParams& k) {
    using detail::xv;
    const Poly x1 = xv(s[0]), x2 = xv(s[1]), x3 = xv(s[2]);
    const Rational k2(k.k(s[1]));
    Poly m11 = div_exact(f * x2 - k2 * x1 - x3, x1);
    Poly m22 = div_exact(-(f * x2) + x3, x1);
    return detail::complete_sl2(std::move(m11), x2, std::move(m22));
}

inline Mat2 cmm_Z(const Perm& s, const Poly& f, const KParams& k) {
    using detail::xv;
    const Poly x1 = xv(s[0]), x2 = xv(s[1]), x3 = xv(s[2]);
    const Rational k2(k.k(s[1])), k3(k.k(s[2]));
    Poly m11 = div_exact(f * x2 * x3 - k3 * (x1 * x2) - k2 * (x1 * x3) - x1 * x1 - x3 * x3,
                         x1 * x2);
    Poly m22 = div_exact(-(f * x2 * x3) + k2 * (x1 * x3) + x1 * x1 + x3 * x3, x1 * x2);
    return detail::complete_sl2(std::move(m11), x3, std::move(m22));
}

struct Triple {
    Mat2 a, b, c;
    friend bool operator==(const Triple&, const Triple&) = default;
};

inline Triple cgc_initial(const Perm& s, const Poly& f, const KParams& k) {
    return {cgc_P(s, f, k), cgc_Q(s, f, k), cgc_R(s, f, k)};
}

inline Triple cmm_initial(const Perm& s, const Poly& f, const KParams& k) {
    return {cmm_X(s, f, k), cmm_Y(s, f, k), cmm_Z(s, f, k)};
}

// Tree roots: the initial family at sigma(2 3) regrouped one step down.
inline Triple cgc_root(const Perm& s, const Poly& f, const KParams& k) {
    const Perm tau = compose(s, perm_23);
    const Poly m = markov_invariant(k);
    const Mat2 p = cgc_P(tau, f, k), q = cgc_Q(tau, f, k), r = cgc_R(tau, f, k);
    return {p, p * q - s_matrix(r, m), q};
}

inline Triple cmm_root(const Perm& s, const Poly& f, const KParams& k) {
    const Perm tau = compose(s, perm_23);
    const Mat2 x = cmm_X(tau, f, k), y = cmm_Y(tau, f, k), z = cmm_Z(tau, f, k);
    return {x, y * z * inverse(y), y};
}

// Children and inverse children of the CGC trees. The S-matrix in each rule
// is the one whose kappa matches the parity of the new middle entry, which
// is recomputed from the named matrix itself.
inline std::pair<Triple, Triple> cgc_children(const Triple& t, const Poly& m) {
    return {Triple{t.a, t.a * t.b - s_matrix(t.c, m), t.b},
            Triple{t.b, t.b * t.c - s_matrix(t.a, m), t.c}};
}

inline std::pair<Triple, Triple> cgc_inverse_children(const Triple& t, const Poly& m) {
    return {Triple{t.a, t.c, inverse(t.a) * (t.c + s_matrix(t.c, m))},
            Triple{(t.a + s_matrix(t.a, m)) * inverse(t.c), t.a, t.c}};
}

inline std::pair<Triple, Triple> cmm_children(const Triple& t) {
    const Mat2 binv = inverse(t.b);
    return {Triple{t.a, t.b * t.c * binv, t.b}, Triple{t.b, binv * t.a * t.b, t.c}};
}

inline std::pair<Triple, Triple> cmm_inverse_children(const Triple& t) {
    return {Triple{t.a, t.c, inverse(t.c) * t.b * t.c},
            Triple{t.a * t.b * inverse(t.a), t.a, t.c}};
}

// psi_g and its inverse: the conjugation-swap bijection between CMM and CGC
// matrices.
inline Mat2 psi(const Poly& g, const Mat2& x, const Poly& m, bool inv = false) {
    const Mat2 swapped{x.d, x.b, x.c, x.a};
    if (!inv) {
        const Mat2 l{Poly::one(), Poly(), m - g, Poly::one()};
        const Mat2 r{Poly::one(), Poly(), g, Poly::one()};
        return l * swapped * r;
    }
    const Mat2 l{Poly::one(), Poly(), -g, Poly::one()};
    const Mat2 r{Poly::one(), Poly(), -(m - g), Poly::one()};
    return l * swapped * r;
}

inline Triple psi_triple(const Poly& g, const Triple& t, const Poly& m, bool inv = false) {
    return {psi(g, t.a, m, inv), psi(g, t.b, m, inv), psi(g, t.c, m, inv)};
}

// Phi sends a CMM triple to the CGC triple of its Markov-monodromy
// decomposition: (X,Y,Z) -> (-(YZ)^-1, -(XZ)^-1, -(XY)^-1).
inline Triple phi(const Triple& t) {
    return {-inverse(t.b * t.c), -inverse(t.a * t.c), -inverse(t.a * t.b)};
}

// MM decomposition of a CGC triple living in the sigma tree:
// Phi^{-1} = Psi_g^{-1} . Phi . Psi_g^{-1} with g = k_{sigma(1)} / x_{sigma(1)}.
inline Poly mm_decompose_gauge(const Perm& s, const KParams& k) {
    Expo e;
    e.x[s[0]] = -1;
    return Poly::monomial(e, k.k(s[0]));
}

inline Triple mm_decompose(const Triple& t, const Perm& s, const KParams& k) {
    const Poly m = markov_invariant(k);
    const Poly g = mm_decompose_gauge(s, k);
    return psi_triple(g, phi(psi_triple(g, t, m, true)), m, true);
}

// --- validators ------------------------------------------------------------

// kappa = M m12 - tr must be one of the exchange coefficients.
inline int cgc_kappa(const Mat2& p, const Poly& m, const KParams& k) {
    const Poly kappa = m * p.b - trace(p);
    if (!kappa.is_constant()) throw ValidationFailed("M m12 - tr is not constant");
    const Rational v = kappa.constant_value();
    for (int i = 0; i < 3; ++i)
        if (v == k.k(i)) return static_cast<int>(v.get_num().get_si());
    throw ValidationFailed("trace defect is not one of k1,k2,k3");
}

inline void validate_cgc_matrix(const Mat2& p, const Poly& m, const KParams& k) {
    if (det(p) != Poly::one()) throw ValidationFailed("det != 1");
    if (!p.a.is_integral() || !p.b.is_integral() || !p.c.is_integral() || !p.d.is_integral())
        throw ValidationFailed("entries are not integral Laurent polynomials");
    cgc_kappa(p, m, k);
}

inline void validate_cgc_triple(const Triple& t, const KParams& k) {
    const Poly m = markov_invariant(k);
    validate_cgc_matrix(t.a, m, k);
    validate_cgc_matrix(t.b, m, k);
    validate_cgc_matrix(t.c, m, k);
    if (t.b != t.a * t.c - s_matrix(t.b, m))
        throw ValidationFailed("middle relation Q = PR - S_Q fails");
}

inline Mat2 cmm_T(const Poly& m) {
    return {-Poly::one(), Poly(), m, -Poly::one()};
}

inline int cmm_kappa(const Mat2& x, const KParams& k) {
    const Poly tr = trace(x);
    if (!tr.is_constant()) throw ValidationFailed("trace is not constant");
    const Rational v = -tr.constant_value();
    for (int i = 0; i < 3; ++i)
        if (v == k.k(i)) return static_cast<int>(v.get_num().get_si());
    throw ValidationFailed("-trace is not one of k1,k2,k3");
}

inline void validate_cmm_matrix(const Mat2& x, const KParams& k) {
    if (det(x) != Poly::one()) throw ValidationFailed("det != 1");
    if (!x.a.is_integral() || !x.b.is_integral() || !x.c.is_integral() || !x.d.is_integral())
        throw ValidationFailed("entries are not integral Laurent polynomials");
    cmm_kappa(x, k);
}

inline void validate_cmm_triple(const Triple& t, const KParams& k) {
    validate_cmm_matrix(t.a, k);
    validate_cmm_matrix(t.b, k);
    validate_cmm_matrix(t.c, k);
    if (t.a * t.b * t.c != cmm_T(markov_invariant(k)))
        throw ValidationFailed("XYZ = T fails");
}

// --- combinatorial families --------------------------------------------------

namespace detail {

inline GVector gv(const Fraction& f) { return ClusterEngine::g_vector_branch1(f); }
inline GVector gcirc(const Fraction& f) {
    const GVector g = gv(f);
    return {g[0] + 1, g[1] - 1, g[2] - 1};
}
inline GVector twice_minus(const GVector& a, const GVector& b) {
    return {2 * a[0] - b[0], 2 * a[1] - b[1], 2 * a[2] - b[2]};
}

} // namespace detail

// Combinatorial cluster generalized Cohn matrix: constrained order-ideal
// generating functions of the tilde poset, framed by g-monomials.
inline Mat2 combinatorial_C(const Fraction& f, const KParams& k) {
    using Constraint::Free;
    using Constraint::In;
    using Constraint::Out;
    if (f.is_infinity()) {
        const FencePoset pt = build_tilde_one_zero(k);
        const Poly w_r_nl = weight_poly(pt, Out, In);
        const Poly w_nl_nr = weight_poly(pt, Out, Out);
        const Poly w_l_r = weight_poly(pt, In, In);
        const Poly w_l_nr = weight_poly(pt, In, Out);
        return {x_power({1, 0, -1}) * w_r_nl, x_power({0, 1, 0}) * w_nl_nr,
                -(x_power({2, -1, -2}) * w_l_r), -(x_power({1, 0, -1}) * w_l_nr)};
    }
    const FencePoset pt = build_tilde(f, k);
    const GVector g = detail::gv(f), gc = detail::gcirc(f);
    return {x_power(gc) * weight_poly(pt, Free, In), x_power(g) * weight_poly(pt, Free, Out),
            x_power(detail::twice_minus(gc, g)) * weight_poly(pt, Out, In),
            x_power(gc) * weight_poly(pt, Out, Out)};
}

// Combinatorial cluster Markov-monodromy matrix, equal to psi_M^{-1} of the
// Cohn matrix.
inline Mat2 combinatorial_M(const Fraction& f, const KParams& k) {
    using Constraint::Free;
    using Constraint::In;
    using Constraint::Out;
    if (f.is_infinity()) {
        Expo e;
        e.x[1] = -1;
        return {Poly::constant(-k.k2), detail::xv(1), -Poly::monomial(e, 1), Poly()};
    }
    if (f.is_zero()) {
        const Poly m11 = x_power({1, -1, 0});
        const Poly par = Poly::one() + Rational(k.k3) * x_power({-1, 1, 0}) +
                         x_power({-2, 2, 0});
        return {m11, detail::xv(2), -(x_power({2, -2, -1}) * par),
                -m11 - Poly::constant(k.k3)};
    }
    const FencePoset p = build_P(f, k);
    const GVector g = detail::gv(f), gc = detail::gcirc(f);
    return {x_power(gc) * weight_poly(p, Out, Free), x_power(g) * weight_poly(p),
            -(x_power(detail::twice_minus(gc, g)) * weight_poly(p, Out, Out)),
            -(x_power(gc) * weight_poly(p, Free, Out))};
}

// alpha = W(H; R, not L), the workhorse polynomial of the endpoint matrices.
inline Poly alpha_poly(const KParams& k) {
    return weight_poly(build_H(k), Constraint::Out, Constraint::In);
}

// Dual combinatorial Cohn matrices, built from the dual tilde poset.
inline Mat2 dual_C(const Fraction& f, const KParams& k) {
    using Constraint::Free;
    using Constraint::In;
    using Constraint::Out;
    if (f.is_zero()) {
        // Mirror of C_{1/0}: diagonal (-k3, M x3), off-diagonal forced by det 1.
        const Poly m = markov_invariant(k);
        return {Poly::constant(-k.k3), detail::xv(2),
                -x_power({0, 0, -1}) - Rational(k.k3) * m, m * detail::xv(2)};
    }
    if (f.is_infinity()) {
        const Poly base = Rational(k.k3) * x_power({-1, 1, 0}) + x_power({-2, 2, 0}) +
                          Rational(k.k1) * x_power({-2, 1, 1});
        return {x_power({1, 0, -1}), detail::xv(1),
                x_power({2, -1, -2}) * base,
                x_power({1, 0, -1}) * (base + x_power({-2, 0, 2}))};
    }
    const FencePoset pt = build_tilde(f, k, Mode::Trivial, /*dual=*/true);
    const GVector g = detail::gv(f), gc = detail::gcirc(f);
    return {x_power(gc) * weight_poly(pt, In, In), x_power(g) * weight_poly(pt, Free, In),
            x_power(detail::twice_minus(gc, g)) * weight_poly(pt, In, Out),
            x_power(gc) * weight_poly(pt, Free, Out)};
}

// Dual combinatorial Markov-monodromy matrices (interior fractions only).
inline Mat2 dual_M(const Fraction& f, const KParams& k) {
    using Constraint::Free;
    using Constraint::In;
    using Constraint::Out;
    if (f.is_zero() || f.is_infinity())
        throw OutOfRange("dual MM matrices are defined for p/q in (0,inf)");
    const FencePoset p = build_P(f, k);
    const GVector g = detail::gv(f), gc = detail::gcirc(f);
    return {-(x_power(gc) * weight_poly(p, In, Free)), x_power(g) * weight_poly(p),
            -(x_power(detail::twice_minus(gc, g)) * weight_poly(p, In, In)),
            x_power(gc) * weight_poly(p, Free, In)};
}

// Musiker-Williams-Markov matrix.
inline Mat2 mwm(const Fraction& f, const KParams& k) {
    using Constraint::Free;
    using Constraint::In;
    using Constraint::Out;
    if (f.is_zero() || f.is_infinity())
        throw OutOfRange("MWM matrices are defined for p/q in (0,inf)");
    const FencePoset p = build_P(f, k);
    const GVector g = detail::gv(f), gc = detail::gcirc(f);
    return {-(x_power(gc) * weight_poly(p, In, Free)), x_power(g) * weight_poly(p),
            x_power(detail::twice_minus(gc, g)) * weight_poly(p, In, Out),
            -(x_power(gc) * weight_poly(p, Free, Out))};
}

// Combinatorial triples attached to a Farey triple.
inline Triple combinatorial_C_triple(const FareyTriple& t, const KParams& k) {
    return {combinatorial_C(t.left, k), combinatorial_C(t.middle, k),
            combinatorial_C(t.right, k)};
}

inline Triple combinatorial_M_triple(const FareyTriple& t, const KParams& k) {
    return {combinatorial_M(t.left, k), combinatorial_M(t.middle, k),
            combinatorial_M(t.right, k)};
}

// --- constructive tree location ---------------------------------------------

struct TreeLocation {
    Perm sigma;
    Poly f;
    std::string path; // L/R word from cgc_root(sigma, f)
};

// Descend a CGC triple to its initial family by inverse moves, reading off
// sigma, f, and the path. Only vertices of the CGC trees terminate here.
inline TreeLocation locate_in_tree(const Triple& t, const KParams& k) {
    validate_cgc_triple(t, k);
    const Poly m = markov_invariant(k);
    Triple cur = t;
    std::string steps;
    for (int guard = 0; guard <= 96; ++guard) {
        const Poly &a12 = cur.a.b, &b12 = cur.b.b, &c12 = cur.c.b;
        const bool initial =
            a12.is_monomial() && b12.is_monomial() && c12.is_monomial() &&
            a12.leading().c == 1 && b12.leading().c == 1 && c12.leading().c == 1 &&
            (a12 * b12 * c12 == detail::xv(0) * detail::xv(1) * detail::xv(2));
        if (initial) {
            if (steps.empty() || steps.back() != 'L')
                throw NotReachable("descent did not pass through a tree root");
            Perm tau{};
            for (int i = 0; i < 3; ++i) {
                const Poly& e = i == 0 ? a12 : i == 1 ? b12 : c12;
                for (int v = 0; v < 3; ++v)
                    if (e == detail::xv(v)) tau[i] = v;
            }
            const Poly f = cur.a.a;
            if (!(cur == cgc_initial(tau, f, k)))
                throw NotReachable("descent ended outside the initial families");
            std::string path(steps.rbegin() + 1, steps.rend());
            return {compose(tau, perm_23), f, std::move(path)};
        }
        const Rational av = eval_x_one(a12), bv = eval_x_one(b12), cv = eval_x_one(c12);
        if (bv <= av || bv <= cv) throw NotReachable("middle entry is not dominant");
        if (av <= cv) {
            cur = cgc_inverse_children(cur, m).first;
            steps += 'L';
        } else {
            cur = cgc_inverse_children(cur, m).second;
            steps += 'R';
        }
    }
    throw NotReachable("descent exceeded the step guard");
}

inline Triple replay_cgc_path(const Perm& sigma, const Poly& f, const std::string& path,
                              const KParams& k) {
    const Poly m = markov_invariant(k);
    Triple t = cgc_root(sigma, f, k);
    for (char c : path) {
        auto [l, r] = cgc_children(t, m);
        t = c == 'L' ? l : r;
    }
    return t;
}

} // namespace mcl
