#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "mcl/errors.hpp"
#include "mcl/rational.hpp"

namespace mcl {

// Exponent vector of a Laurent monomial in x1,x2,x3 and y1,y2,y3.
// y exponents are stored in half-units (y2[i] = 2 * exponent of y_i), so a
// half-integer exponent is representable while ordinary monomials stay exact.
struct Expo {
    std::array<int16_t, 3> x{0, 0, 0};
    std::array<int16_t, 3> y2{0, 0, 0};

    friend auto operator<=>(const Expo&, const Expo&) = default;

    Expo operator+(const Expo& o) const {
        Expo r;
        for (int i = 0; i < 3; ++i) {
            r.x[i] = static_cast<int16_t>(x[i] + o.x[i]);
            r.y2[i] = static_cast<int16_t>(y2[i] + o.y2[i]);
        }
        return r;
    }
    Expo operator-(const Expo& o) const {
        Expo r;
        for (int i = 0; i < 3; ++i) {
            r.x[i] = static_cast<int16_t>(x[i] - o.x[i]);
            r.y2[i] = static_cast<int16_t>(y2[i] - o.y2[i]);
        }
        return r;
    }
    bool is_zero() const { return *this == Expo{}; }

    // Total grade used by the term order: doubled x-degree plus y half-units,
    // so both kinds of exponents weigh in integrally.
    long grade() const {
        long g = 0;
        for (int i = 0; i < 3; ++i) g += 2L * x[i] + y2[i];
        return g;
    }
};

// Graded-lexicographic term order (grade first, then plain lex).
inline bool expo_less(const Expo& a, const Expo& b) {
    const long ga = a.grade(), gb = b.grade();
    if (ga != gb) return ga < gb;
    return a < b;
}

struct Term {
    Expo e;
    Rational c;
};

// Exact multivariate Laurent polynomial. Terms are kept sorted ascending in
// the graded-lex order with no zero coefficients, so equal polynomials have
// identical representations.
class Poly {
  public:
    Poly() = default;

    static Poly zero() { return Poly(); }
    static Poly one() { return constant(1); }

    static Poly constant(Rational c) {
        c.canonicalize();
        Poly p;
        if (c != 0) p.t_.push_back({Expo{}, std::move(c)});
        return p;
    }

    static Poly monomial(const Expo& e, Rational c) {
        c.canonicalize();
        Poly p;
        if (c != 0) p.t_.push_back({e, std::move(c)});
        return p;
    }

    // var index: 0..2 -> x1..x3, 3..5 -> y1..y3 (integer exponent).
    static Poly variable(int v, int exp = 1) {
        Expo e;
        if (v < 3)
            e.x[v] = static_cast<int16_t>(exp);
        else
            e.y2[v - 3] = static_cast<int16_t>(2 * exp);
        return monomial(e, 1);
    }

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    bool is_monomial() const { return t_.size() == 1; }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].e.is_zero()); }

    Rational constant_value() const {
        if (t_.empty()) return Rational(0);
        if (!is_constant()) throw Error("polynomial is not constant");
        return t_[0].c;
    }

    // All coefficients integral (cluster variables must pass this).
    bool is_integral() const {
        return std::all_of(t_.begin(), t_.end(),
                           [](const Term& t) { return is_integer(t.c); });
    }

    bool has_y() const {
        return std::any_of(t_.begin(), t_.end(),
                           [](const Term& t) { return t.e.y2 != std::array<int16_t, 3>{}; });
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.t_.size() != b.t_.size()) return false;
        for (std::size_t i = 0; i < a.t_.size(); ++i)
            if (a.t_[i].e != b.t_[i].e || a.t_[i].c != b.t_[i].c) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly operator-() const {
        Poly r = *this;
        for (auto& t : r.t_) t.c = -t.c;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
    friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.t_.empty() || b.t_.empty()) return Poly();
        if (a.t_.size() == 1) return b.shifted(a.t_[0].e, a.t_[0].c);
        if (b.t_.size() == 1) return a.shifted(b.t_[0].e, b.t_[0].c);
        std::vector<Term> acc;
        acc.reserve(a.t_.size() * b.t_.size());
        for (const auto& ta : a.t_)
            for (const auto& tb : b.t_) acc.push_back({ta.e + tb.e, ta.c * tb.c});
        return from_unsorted(std::move(acc));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator*(const Poly& a, const Rational& s) {
        if (s == 0) return Poly();
        Poly r = a;
        for (auto& t : r.t_) t.c *= s;
        return r;
    }
    friend Poly operator*(const Rational& s, const Poly& a) { return a * s; }

    // Multiply by the monomial c * x^e (the workhorse of the order-ideal DP).
    Poly shifted(const Expo& e, const Rational& c) const {
        if (c == 0) return Poly();
        Poly r;
        r.t_.reserve(t_.size());
        for (const auto& t : t_) r.t_.push_back({t.e + e, t.c * c});
        return r;
    }

    Poly pow(int n) const {
        if (n < 0) {
            if (!is_monomial()) throw NotDivisible("negative power of a non-monomial");
            Expo e = t_[0].e;
            Expo ne;
            ne = Expo{} - e;
            return monomial(ne, Rational(1) / t_[0].c).pow(-n);
        }
        Poly r = one();
        Poly b = *this;
        while (n > 0) {
            if (n & 1) r = r * b;
            b = b * b;
            n >>= 1;
        }
        return r;
    }

    const Term& leading() const {
        if (t_.empty()) throw Error("leading term of zero polynomial");
        return t_.back();
    }
    const Term& trailing() const {
        if (t_.empty()) throw Error("trailing term of zero polynomial");
        return t_.front();
    }

    static Poly from_terms(std::vector<Term> terms) { return from_unsorted(std::move(terms)); }

  private:
    static Poly merge(const Poly& a, const Poly& b, bool subtract) {
        Poly r;
        r.t_.reserve(a.t_.size() + b.t_.size());
        std::size_t i = 0, j = 0;
        while (i < a.t_.size() && j < b.t_.size()) {
            const Expo& ea = a.t_[i].e;
            const Expo& eb = b.t_[j].e;
            if (ea == eb) {
                Rational c = a.t_[i].c;
                if (subtract)
                    c -= b.t_[j].c;
                else
                    c += b.t_[j].c;
                if (c != 0) r.t_.push_back({ea, std::move(c)});
                ++i, ++j;
            } else if (expo_less(ea, eb)) {
                r.t_.push_back(a.t_[i++]);
            } else {
                r.t_.push_back(subtract ? Term{eb, -b.t_[j].c} : b.t_[j]);
                ++j;
            }
        }
        for (; i < a.t_.size(); ++i) r.t_.push_back(a.t_[i]);
        for (; j < b.t_.size(); ++j)
            r.t_.push_back(subtract ? Term{b.t_[j].e, -b.t_[j].c} : b.t_[j]);
        return r;
    }

    static Poly from_unsorted(std::vector<Term> acc) {
        std::sort(acc.begin(), acc.end(),
                  [](const Term& a, const Term& b) { return expo_less(a.e, b.e); });
        Poly r;
        r.t_.reserve(acc.size());
        for (auto& t : acc) {
            if (!r.t_.empty() && r.t_.back().e == t.e) {
                r.t_.back().c += t.c;
                if (r.t_.back().c == 0) r.t_.pop_back();
            } else if (t.c != 0) {
                r.t_.push_back(std::move(t));
            }
        }
        return r;
    }

    std::vector<Term> t_;
};

// Exact quotient in the Laurent ring: returns q with q*den == num, or throws
// NotDivisible. Leading-term division under the graded-lex order; the
// candidate quotient support is boxed by the supports of num and den, which
// bounds the work and detects failure.
inline Poly div_exact(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw DivisionByZero("division of polynomial by zero");
    if (num.is_zero()) return Poly();
    if (den.is_monomial()) {
        const Expo e = Expo{} - den.terms()[0].e;
        return num.shifted(e, Rational(1) / den.terms()[0].c);
    }

    // Componentwise support box any true quotient term must live in.
    Expo qlo, qhi;
    {
        auto minmax = [](const Poly& p, bool lo) {
            Expo m = p.terms()[0].e;
            for (const auto& t : p.terms()) {
                for (int i = 0; i < 3; ++i) {
                    m.x[i] = lo ? std::min(m.x[i], t.e.x[i]) : std::max(m.x[i], t.e.x[i]);
                    m.y2[i] = lo ? std::min(m.y2[i], t.e.y2[i]) : std::max(m.y2[i], t.e.y2[i]);
                }
            }
            return m;
        };
        qlo = minmax(num, true) - minmax(den, false);
        qhi = minmax(num, false) - minmax(den, true);
    }
    auto in_box = [&](const Expo& e) {
        for (int i = 0; i < 3; ++i) {
            if (e.x[i] < qlo.x[i] || e.x[i] > qhi.x[i]) return false;
            if (e.y2[i] < qlo.y2[i] || e.y2[i] > qhi.y2[i]) return false;
        }
        return true;
    };

    Poly r = num;
    std::vector<Term> q;
    const Term& dl = den.leading();
    while (!r.is_zero()) {
        const Term& rl = r.leading();
        Term qt{rl.e - dl.e, rl.c / dl.c};
        if (!in_box(qt.e)) throw NotDivisible();
        q.push_back(qt);
        r -= den.shifted(qt.e, qt.c);
    }
    return Poly::from_terms(std::move(q));
}

// Partial substitution: each variable either stays, is renamed to another
// variable of the same family, or is pinned to a rational value.
struct Assignment {
    // For x variables i=0..2 and y variables i=0..2.
    std::array<std::optional<Rational>, 3> x_value{};
    std::array<std::optional<Rational>, 3> y_value{};
    std::array<int, 3> x_rename{0, 1, 2};
    std::array<int, 3> y_rename{0, 1, 2};

    static Assignment all_x_one() {
        Assignment a;
        for (auto& v : a.x_value) v = Rational(1);
        return a;
    }
    static Assignment all_one() {
        Assignment a;
        for (auto& v : a.x_value) v = Rational(1);
        for (auto& v : a.y_value) v = Rational(1);
        return a;
    }
    static Assignment permute_xy(const std::array<int, 3>& sigma) {
        Assignment a;
        a.x_rename = sigma;
        a.y_rename = sigma;
        return a;
    }
};

inline Poly specialize(const Poly& p, const Assignment& a) {
    std::vector<Term> acc;
    acc.reserve(p.size());
    for (const auto& t : p.terms()) {
        Expo e;
        Rational c = t.c;
        for (int i = 0; i < 3; ++i) {
            const int ex = t.e.x[i];
            if (ex == 0) continue;
            if (a.x_value[i]) {
                if (*a.x_value[i] == 0 && ex < 0) throw DivisionByZero("x value 0 with negative exponent");
                c *= pow_rational(*a.x_value[i], ex);
            } else {
                e.x[a.x_rename[i]] = static_cast<int16_t>(e.x[a.x_rename[i]] + ex);
            }
        }
        for (int i = 0; i < 3; ++i) {
            const int ey2 = t.e.y2[i];
            if (ey2 == 0) continue;
            if (a.y_value[i]) {
                if (ey2 % 2 != 0)
                    throw Error("cannot substitute a value into a half-integer y exponent");
                if (*a.y_value[i] == 0 && ey2 < 0) throw DivisionByZero("y value 0 with negative exponent");
                c *= pow_rational(*a.y_value[i], ey2 / 2);
            } else {
                e.y2[a.y_rename[i]] = static_cast<int16_t>(e.y2[a.y_rename[i]] + ey2);
            }
        }
        if (c != 0) acc.push_back({e, std::move(c)});
    }
    return Poly::from_terms(std::move(acc));
}

// Evaluation at x1=x2=x3=1 of a y-free polynomial (the |a| of the paper).
inline Rational eval_x_one(const Poly& p) {
    Rational s(0);
    for (const auto& t : p.terms()) {
        if (t.e.y2 != std::array<int16_t, 3>{})
            throw Error("eval_x_one on a polynomial with y variables");
        s += t.c;
    }
    return s;
}

// x^g for an integer vector g.
inline Poly x_power(const std::array<int, 3>& g) {
    Expo e;
    for (int i = 0; i < 3; ++i) e.x[i] = static_cast<int16_t>(g[i]);
    return Poly::monomial(e, 1);
}

inline std::string rational_to_string_short(const Rational& r) {
    if (is_integer(r)) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const Term& t = *it;
        Rational c = t.c;
        if (!first) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        first = false;
        if (c < 0) c = -c;
        std::string mon;
        static const char* names[6] = {"x1", "x2", "x3", "y1", "y2", "y3"};
        for (int i = 0; i < 3; ++i) {
            if (t.e.x[i] == 0) continue;
            mon += names[i];
            if (t.e.x[i] != 1) mon += "^" + std::to_string(t.e.x[i]);
            mon += "*";
        }
        for (int i = 0; i < 3; ++i) {
            if (t.e.y2[i] == 0) continue;
            mon += names[3 + i];
            if (t.e.y2[i] != 2) {
                mon += "^";
                if (t.e.y2[i] % 2 == 0)
                    mon += std::to_string(t.e.y2[i] / 2);
                else
                    mon += "(" + std::to_string(t.e.y2[i]) + "/2)";
            }
            mon += "*";
        }
        if (!mon.empty()) mon.pop_back();
        if (mon.empty()) {
            out += rational_to_string_short(c);
        } else if (c == 1) {
            out += mon;
        } else {
            out += rational_to_string_short(c) + "*" + mon;
        }
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

} // namespace mcl
