#pragma once

#include <array>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "mcl/farey.hpp"
#include "mcl/laurent.hpp"
#include "mcl/poset.hpp"

namespace mcl {

using Mat3i = std::array<std::array<long long, 3>, 3>;
using Vec3i = std::array<long long, 3>;

inline Mat3i identity3() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

// The generalized Markov invariant
// (x1^2 + x2^2 + x3^2 + k1 x2x3 + k2 x1x3 + k3 x1x2) / (x1x2x3).
inline Poly markov_invariant(const KParams& k) {
    std::vector<Term> ts;
    auto mono = [](int a, int b, int c, Rational coef) {
        Expo e;
        e.x = {static_cast<int16_t>(a), static_cast<int16_t>(b), static_cast<int16_t>(c)};
        return Term{e, std::move(coef)};
    };
    ts.push_back(mono(1, -1, -1, 1));
    ts.push_back(mono(-1, 1, -1, 1));
    ts.push_back(mono(-1, -1, 1, 1));
    if (k.k1 != 0) ts.push_back(mono(-1, 0, 0, k.k1));
    if (k.k2 != 0) ts.push_back(mono(0, -1, 0, k.k2));
    if (k.k3 != 0) ts.push_back(mono(0, 0, -1, k.k3));
    return Poly::from_terms(std::move(ts));
}

// Initial exchange matrix: B0 = B_Markov * D^{-1}, covering all four cases
// (I)-(IV) uniformly, including unsorted k.
inline Mat3i initial_B(const KParams& k) {
    static const int BM[3][3] = {{0, -2, 2}, {2, 0, -2}, {-2, 2, 0}};
    Mat3i b{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b[i][j] = BM[i][j] / k.d(j);
    return b;
}

// Labeled seed with principal-coefficient bookkeeping. The cluster holds the
// trivial-coefficient variables; C, G, F carry the principal data via their
// standard recursions.
struct Seed {
    KParams k;
    std::array<Poly, 3> x;
    Mat3i B{};
    Mat3i C{};
    Mat3i G{};
    std::array<Poly, 3> F;

    friend bool operator==(const Seed&, const Seed&) = default;
};

inline Seed initial_seed(const KParams& k) {
    Seed s;
    s.k = k;
    for (int i = 0; i < 3; ++i) s.x[i] = Poly::variable(i);
    s.B = initial_B(k);
    s.C = identity3();
    s.G = identity3();
    for (auto& f : s.F) f = Poly::one();
    return s;
}

namespace detail {

inline long long pos_part(long long v) { return v > 0 ? v : 0; }

// y_i^{e_i} as a Laurent monomial in y.
inline Poly y_monomial(const Vec3i& e) {
    Expo ex;
    for (int i = 0; i < 3; ++i) ex.y2[i] = static_cast<int16_t>(2 * e[i]);
    return Poly::monomial(ex, 1);
}

} // namespace detail

// Seed mutation in direction dir (0-based). Exchange polynomials are
// palindromic (1 + k u + u^2 or 1 + u), hence fixed under mutation.
// with_f = false skips the F-polynomial recursion (the expensive part) for
// callers that only need x/B/C/G.
inline Seed mutate(const Seed& s, int dir, bool with_f = true) {
    using detail::pos_part;
    const int m = dir;
    const int dm = s.k.d(m);
    const int km = s.k.k(m);
    Seed r = s;

    // x-mutation: x'_m x_m = sum_t z_t X+^t X-^(d-t) where X± collect the
    // positive/negative parts of column m of B applied to the current cluster.
    {
        Poly num;
        for (int t = 0; t <= dm; ++t) {
            const int z = (t == 0 || t == dm) ? 1 : km;
            if (z == 0) continue;
            Poly term = Poly::constant(z);
            for (int i = 0; i < 3; ++i) {
                const long long e = t * pos_part(s.B[i][m]) + (dm - t) * pos_part(-s.B[i][m]);
                if (e != 0) term *= s.x[i].pow(static_cast<int>(e));
            }
            num += term;
        }
        r.x[m] = div_exact(num, s.x[m]);
    }

    // B-matrix mutation.
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == m || j == m)
                r.B[i][j] = -s.B[i][j];
            else
                r.B[i][j] = s.B[i][j] +
                            dm * (pos_part(s.B[i][m]) * s.B[m][j] +
                                  s.B[i][m] * pos_part(-s.B[m][j]));
        }

    // c-vector recursion (columns of C).
    for (int j = 0; j < 3; ++j) {
        if (j == m) {
            for (int i = 0; i < 3; ++i) r.C[i][j] = -s.C[i][j];
        } else {
            const long long bkj = s.B[m][j];
            for (int i = 0; i < 3; ++i)
                r.C[i][j] = s.C[i][j] + pos_part(dm * bkj) * s.C[i][m] +
                            dm * bkj * pos_part(-s.C[i][m]);
        }
    }

    // g-vector recursion (columns of G); uses the initial B columns.
    {
        const Mat3i b0 = initial_B(s.k);
        for (int i = 0; i < 3; ++i) {
            long long v = -s.G[i][m];
            for (int l = 0; l < 3; ++l) v += pos_part(dm * s.B[l][m]) * s.G[i][l];
            for (int l = 0; l < 3; ++l) v -= pos_part(dm * s.C[l][m]) * b0[i][l];
            r.G[i][m] = v;
        }
    }

    // F-polynomial recursion: F'_m F_m = sum_s z_s P+^s P-^(d-s) with
    // P± = prod_i y_i^{[±c_im]+} F_i^{[±b_im]+}.
    if (with_f) {
        Vec3i cp{}, cm{};
        for (int i = 0; i < 3; ++i) {
            cp[i] = pos_part(s.C[i][m]);
            cm[i] = pos_part(-s.C[i][m]);
        }
        Poly pplus = detail::y_monomial(cp), pminus = detail::y_monomial(cm);
        for (int i = 0; i < 3; ++i) {
            if (const long long e = pos_part(s.B[i][m]); e != 0)
                pplus *= s.F[i].pow(static_cast<int>(e));
            if (const long long e = pos_part(-s.B[i][m]); e != 0)
                pminus *= s.F[i].pow(static_cast<int>(e));
        }
        Poly num;
        for (int t = 0; t <= dm; ++t) {
            const int z = (t == 0 || t == dm) ? 1 : km;
            if (z == 0) continue;
            num += Rational(z) * (pplus.pow(t) * pminus.pow(dm - t));
        }
        r.F[m] = div_exact(num, s.F[m]);
    }
    return r;
}

// Fraction-labeled cluster variables (trivial coefficients), memoized Vieta
// recursion on Farey triples. Branches 2 and 3 delegate to branch 1 with the
// cyclic relabeling of variables and k parameters.
class ClusterEngine {
  public:
    explicit ClusterEngine(const KParams& k) : k_(k) {}

    const KParams& k() const { return k_; }

    // Parity of x_{branch, f}.
    int parity(int branch, const Fraction& f) const {
        return k_.k((parity_index(f) + branch - 1) % 3);
    }

    // Position (0-based) of x_{branch, f} in its labeled seeds.
    static int position(int branch, const Fraction& f) {
        return (parity_index(f) + branch - 1) % 3;
    }

    Poly variable(int branch, const Fraction& f) {
        if (branch == 1) return branch1(f, k_);
        const auto sigma = branch == 2 ? std::array<int, 3>{1, 2, 0} : std::array<int, 3>{2, 0, 1};
        const KParams kk = branch == 2 ? KParams(k_.k2, k_.k3, k_.k1)
                                       : KParams(k_.k3, k_.k1, k_.k2);
        Assignment a;
        a.x_rename = sigma;
        a.y_rename = sigma;
        return specialize(branch1(f, kk), a);
    }

    // x^g * W(P_{p/q}) with the same branch relabeling.
    Poly poset_variable(int branch, const Fraction& f, Mode mode = Mode::Trivial) {
        if (f.is_infinity()) throw OutOfRange("poset formulas exclude 1/0");
        const auto compute = [&](const KParams& kk) {
            const FencePoset P = build_P(f, kk, mode);
            return x_power(g_vector_branch1(f)) * weight_poly(P);
        };
        if (branch == 1) return compute(k_);
        const auto sigma = branch == 2 ? std::array<int, 3>{1, 2, 0} : std::array<int, 3>{2, 0, 1};
        const KParams kk = branch == 2 ? KParams(k_.k2, k_.k3, k_.k1)
                                       : KParams(k_.k3, k_.k1, k_.k2);
        Assignment a;
        a.x_rename = sigma;
        a.y_rename = sigma;
        return specialize(compute(kk), a);
    }

    static GVector g_vector_branch1(const Fraction& f) {
        const int p = static_cast<int>(f.p), q = static_cast<int>(f.q);
        return {q - p - 1, -q + 1, p + 1};
    }

    // Closed-form g-vectors; for f = 1/0 the closed form does not apply and
    // the initial-variable convention is used.
    static GVector g_vector(int branch, const Fraction& f) {
        if (f.is_infinity()) {
            GVector g{0, 0, 0};
            g[branch % 3] = 1; // x_{1,1/0}=x2, x_{2,1/0}=x3, x_{3,1/0}=x1
            return g;
        }
        GVector g = g_vector_branch1(f);
        if (branch == 2) return {g[2], g[0], g[1]};
        if (branch == 3) return {g[1], g[2], g[0]};
        return g;
    }

  private:
    Poly branch1(const Fraction& f, const KParams& kk) {
        if (f == Fraction(0, 1)) return Poly::variable(2);
        if (f == Fraction(1, 0)) return Poly::variable(1);
        {
            std::scoped_lock lock(mu_);
            if (auto it = memo_.find({kk, f}); it != memo_.end()) return it->second;
        }
        Poly v;
        if (f == Fraction(1, 1)) {
            Poly num = Poly::variable(1).pow(2) + Poly::variable(2).pow(2);
            if (kk.k1 != 0)
                num += Rational(kk.k1) * (Poly::variable(1) * Poly::variable(2));
            v = div_exact(num, Poly::variable(0));
        } else {
            const FareyTriple t = triple_of(f);
            const Fraction partner = vieta_partner(t.left, t.right);
            const Poly a = branch1(t.left, kk);
            const Poly c = branch1(t.right, kk);
            const int kappa = kk.k_of(f);
            Poly num = a * a + c * c;
            if (kappa != 0) num += Rational(kappa) * (a * c);
            v = div_exact(num, branch1(partner, kk));
        }
        std::scoped_lock lock(mu_);
        return memo_.emplace(Key{kk, f}, std::move(v)).first->second;
    }

    struct Key {
        KParams k;
        Fraction f;
        friend bool operator<(const Key& a, const Key& b) {
            const auto ta = std::array<long long, 5>{a.k.k1, a.k.k2, a.k.k3, a.f.p, a.f.q};
            const auto tb = std::array<long long, 5>{b.k.k1, b.k.k2, b.k.k3, b.f.p, b.f.q};
            return ta < tb;
        }
    };

    KParams k_;
    std::map<Key, Poly> memo_;
    std::mutex mu_;
};

// Replays the mutation path of the CM tree down to the Farey triple of f and
// returns the resulting principal seed. The seed reached at generation g of
// the Farey tree carries the cluster {x_{branch,l}, x_{branch,m}, x_{branch,r}}.
inline Seed principal_seed_at(int branch, const Fraction& f, const KParams& k,
                              bool with_f = true) {
    Seed s = mutate(initial_seed(k), branch - 1, with_f);
    if (f == Fraction(0, 1) || f == Fraction(1, 0) || f == Fraction(1, 1)) return s;
    std::string path;
    triple_of(f, &path);
    FareyTriple t = farey_root();
    for (char step : path) {
        if (step == 'L') {
            s = mutate(s, ClusterEngine::position(branch, t.right), with_f);
            t = left_child(t);
        } else {
            s = mutate(s, ClusterEngine::position(branch, t.left), with_f);
            t = right_child(t);
        }
    }
    return s;
}

inline Poly f_polynomial(int branch, const Fraction& f, const KParams& k) {
    if (f.is_zero() || f.is_infinity()) return Poly::one();
    const Seed s = principal_seed_at(branch, f, k);
    return s.F[ClusterEngine::position(branch, f)];
}

// Substitute y_i -> y_i * x^(column i of B0) into a y-polynomial.
inline Poly substitute_yhat(const Poly& fpoly, const Mat3i& b0) {
    std::vector<Term> ts;
    ts.reserve(fpoly.size());
    for (const auto& t : fpoly.terms()) {
        Expo e = t.e;
        for (int i = 0; i < 3; ++i) {
            if (t.e.y2[i] % 2 != 0) throw Error("yhat substitution needs integer y exponents");
            const int c = t.e.y2[i] / 2;
            for (int j = 0; j < 3; ++j) e.x[j] = static_cast<int16_t>(e.x[j] + c * b0[j][i]);
        }
        ts.push_back({e, t.c});
    }
    return Poly::from_terms(std::move(ts));
}

// Principal-coefficient cluster variable via the separation formula:
// x^g * F(y-hat). g and F come from the replayed recursions.
inline Poly separation_variable(int branch, const Fraction& f, const KParams& k) {
    if (f.is_zero() || f.is_infinity())
        return x_power(ClusterEngine::g_vector(branch, f)); // initial variables

    const Seed s = principal_seed_at(branch, f, k);
    const int pos = ClusterEngine::position(branch, f);
    GVector g{static_cast<int>(s.G[0][pos]), static_cast<int>(s.G[1][pos]),
              static_cast<int>(s.G[2][pos])};
    return x_power(g) * substitute_yhat(s.F[pos], initial_B(k));
}

// Mutation replay along an explicit direction word (0-based directions).
inline Seed seed_from_path(const KParams& k, const std::vector<int>& dirs) {
    Seed s = initial_seed(k);
    for (int d : dirs) s = mutate(s, d);
    return s;
}

// Closed-form c-vectors of the cluster at a Farey-tree vertex: the Markov
// (k = 0) values of N. Chavez's classification, rotated per branch and scaled
// entrywise by d_i/d_j.
inline std::array<Vec3i, 3> c_vectors_closed(int branch, const FareyTriple& t,
                                             const KParams& k) {
    const long long p = t.left.p, q = t.left.q;
    const long long r = t.right.p, s = t.right.q;
    std::array<Vec3i, 3> m;
    if (t.right.is_infinity()) {
        m[0] = {p + 2, 0, p + 1};
        m[1] = {-p - 1, 0, -p};
        m[2] = {0, 1, 0};
    } else {
        m[0] = {p + q + 1, q + 1, p + 1};
        m[1] = {r + s - p - q - 1, s - q - 1, r - p - 1};
        m[2] = {-r - s + 1, -s + 1, -r + 1};
    }
    const std::array<Fraction, 3> fr{t.left, t.middle, t.right};
    std::array<Vec3i, 3> out;
    for (int v = 0; v < 3; ++v) {
        Vec3i rot;
        for (int i = 0; i < 3; ++i) rot[i] = m[v][((i - (branch - 1)) % 3 + 3) % 3];
        const int j = ClusterEngine::position(branch, fr[v]);
        for (int i = 0; i < 3; ++i) {
            const long long num = rot[i] * k.d(i);
            if (num % k.d(j) != 0) throw Error("c-vector scaling is not integral");
            out[v][i] = num / k.d(j);
        }
    }
    return out;
}

// Integer checks for the two generalized Markov equations.
inline bool check_GM(const BigInt& x, const BigInt& y, const BigInt& z, const KParams& k) {
    return x * x + y * y + z * z + k.k1 * y * z + k.k2 * x * z + k.k3 * x * y ==
           (3 + k.k1 + k.k2 + k.k3) * x * y * z;
}

// Symbolic second generalized Markov equation, arguments in seed order.
inline bool check_second_GM(const Poly& x, const Poly& y, const Poly& z, const KParams& k) {
    const long k1 = k.k1, k2 = k.k2, k3 = k.k3;
    Poly lhs = x * x + y * y + z * z;
    lhs += Rational(2 * k1 + k2 * k3) * x;
    lhs += Rational(2 * k2 + k1 * k3) * y;
    lhs += Rational(2 * k3 + k1 * k2) * z;
    lhs += Poly::constant(k1 * k1 + k2 * k2 + k3 * k3 + 2 * k1 * k2 * k3);
    return lhs == x * y * z;
}

// Markov-style triple tree from x = 1: Vieta jumps on the generalized Markov
// equation. Children avoid jumping straight back to the parent.
struct MarkovNode {
    std::array<BigInt, 3> t;
    int depth = 0;
    int from = -1; // position last jumped, -1 at the root
};

inline std::array<BigInt, 3> vieta_jump(const std::array<BigInt, 3>& t, int pos,
                                        const KParams& k) {
    const BigInt sum(3 + k.k1 + k.k2 + k.k3);
    std::array<BigInt, 3> r = t;
    if (pos == 0)
        r[0] = sum * t[1] * t[2] - k.k2 * t[2] - k.k3 * t[1] - t[0];
    else if (pos == 1)
        r[1] = sum * t[0] * t[2] - k.k1 * t[2] - k.k3 * t[0] - t[1];
    else
        r[2] = sum * t[0] * t[1] - k.k1 * t[1] - k.k2 * t[0] - t[2];
    return r;
}

inline std::vector<MarkovNode> markov_tree(const KParams& k, int depth) {
    std::vector<MarkovNode> out;
    out.push_back({{BigInt(1), BigInt(1), BigInt(1)}, 0, -1});
    std::size_t head = 0;
    while (head < out.size()) {
        const MarkovNode node = out[head++];
        if (node.depth == depth) continue;
        for (int pos = 0; pos < 3; ++pos) {
            if (pos == node.from) continue;
            out.push_back({vieta_jump(node.t, pos, k), node.depth + 1, pos});
        }
    }
    return out;
}

} // namespace mcl
