#pragma once

// Exact Laurent polynomials and rational functions in X = q^(-s+1/2) over Q.
// X' = q^(-s-1/2) is always rewritten as X/q, with q an exact rational constant.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace skbessel {

class LaurentPoly {
    std::map<long, Rat> c_;  // exponent -> coefficient, no zero entries stored

public:
    LaurentPoly() = default;
    LaurentPoly(const Rat& constant) {
        if (constant != 0) c_[0] = constant;
    }
    LaurentPoly(long v) : LaurentPoly(Rat(v)) {}

    static LaurentPoly monomial(const Rat& coeff, long exp) {
        LaurentPoly r;
        if (coeff != 0) r.c_[exp] = coeff;
        return r;
    }
    static LaurentPoly X(long exp = 1) { return monomial(Rat(1), exp); }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0); }
    size_t term_count() const { return c_.size(); }
    const std::map<long, Rat>& terms() const { return c_; }

    Rat coeff(long exp) const {
        auto it = c_.find(exp);
        return it == c_.end() ? Rat(0) : it->second;
    }
    long min_exp() const {
        if (is_zero()) throw std::domain_error("min_exp of zero polynomial");
        return c_.begin()->first;
    }
    long max_exp() const {
        if (is_zero()) throw std::domain_error("max_exp of zero polynomial");
        return c_.rbegin()->first;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, v] : o.c_) {
            Rat s = coeff(e) + v;
            if (s == 0)
                c_.erase(e);
            else
                c_[e] = s;
        }
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this += o.negated(); }
    LaurentPoly negated() const {
        LaurentPoly r;
        for (const auto& [e, v] : c_) r.c_[e] = -v;
        return r;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(const LaurentPoly& a) { return a.negated(); }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, va] : a.c_)
            for (const auto& [eb, vb] : b.c_) {
                Rat s = r.coeff(ea + eb) + va * vb;
                if (s == 0)
                    r.c_.erase(ea + eb);
                else
                    r.c_[ea + eb] = s;
            }
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    LaurentPoly& operator*=(const Rat& s) { return *this = *this * LaurentPoly(s); }

    LaurentPoly pow(unsigned long n) const {
        LaurentPoly acc(Rat(1)), b = *this;
        while (n) {
            if (n & 1) acc *= b;
            b *= b;
            n >>= 1;
        }
        return acc;
    }

    // X -> X^-1
    LaurentPoly invert_variable() const {
        LaurentPoly r;
        for (const auto& [e, v] : c_) r.c_[-e] = v;
        return r;
    }

    LaurentPoly shifted(long k) const {  // multiply by X^k
        LaurentPoly r;
        for (const auto& [e, v] : c_) r.c_[e + k] = v;
        return r;
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (const auto& [e, v] : c_) acc += v * rat_pow(x, e);
        return acc;
    }

    bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }
    bool operator!=(const LaurentPoly& o) const { return c_ != o.c_; }

    // a == lambda * b for some nonzero rational lambda
    static bool proportional(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
        if (a.min_exp() != b.min_exp() || a.c_.size() != b.c_.size()) return false;
        Rat lam = a.c_.begin()->second / b.c_.begin()->second;
        for (const auto& [e, v] : a.c_)
            if (v != lam * b.coeff(e)) return false;
        return true;
    }

    // max - min exponent spread; reflection sign via coefficient palindromy:
    // sign eps with X^(max+min) P(X^-1) = eps P(X), none otherwise.
    struct DiaSign {
        long dia;
        int sign;  // +1, -1 or 0 (none)
    };
    DiaSign diameter_and_sign() const {
        if (is_zero()) throw std::domain_error("undefined diameter");
        long lo = min_exp(), hi = max_exp();
        LaurentPoly refl = invert_variable().shifted(hi + lo);
        if (refl == *this) return {hi - lo, +1};
        if (refl == negated()) return {hi - lo, -1};
        return {hi - lo, 0};
    }

    // min+max exponent; the reflection degree in the functional equations.
    long mirror_degree() const {
        if (is_zero()) throw std::domain_error("undefined mirror degree");
        return min_exp() + max_exp();
    }

    // Exact division; nullopt if the quotient is not a Laurent polynomial.
    static std::optional<LaurentPoly> divide_exact(const LaurentPoly& num, const LaurentPoly& den) {
        if (den.is_zero()) throw std::domain_error("division by zero polynomial");
        if (num.is_zero()) return LaurentPoly();
        long shift = num.min_exp() - den.min_exp();
        // ordinary polynomial division on shifted copies
        std::vector<Rat> a = num.dense(), b = den.dense();
        if (a.size() < b.size()) return std::nullopt;
        std::vector<Rat> q(a.size() - b.size() + 1, Rat(0));
        for (long i = (long)a.size() - (long)b.size(); i >= 0; --i) {
            Rat f = a[i + b.size() - 1] / b.back();
            q[i] = f;
            if (f != 0)
                for (size_t j = 0; j < b.size(); ++j) a[i + j] -= f * b[j];
        }
        for (const Rat& r : a)
            if (r != 0) return std::nullopt;
        LaurentPoly res;
        for (size_t i = 0; i < q.size(); ++i)
            if (q[i] != 0) res.c_[(long)i + shift] = q[i];
        return res;
    }

    // coefficients from min_exp upward, as a dense vector
    std::vector<Rat> dense() const {
        if (is_zero()) return {};
        std::vector<Rat> v(max_exp() - min_exp() + 1, Rat(0));
        for (const auto& [e, x] : c_) v[e - min_exp()] = x;
        return v;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, v] : c_) {
            Rat av = v < 0 ? Rat(-v) : v;
            if (first) {
                if (v < 0) os << "-";
                first = false;
            } else {
                os << (v < 0 ? " - " : " + ");
            }
            if (e == 0) {
                os << rat_str(av);
            } else {
                if (av != 1) os << rat_str(av) << "*";
                os << "X";
                if (e != 1) os << "^" << e;
            }
        }
        return os.str();
    }

    static LaurentPoly parse(const std::string& s);
};

inline LaurentPoly operator*(const Rat& s, const LaurentPoly& p) { return LaurentPoly(s) * p; }
inline LaurentPoly operator*(const LaurentPoly& p, const Rat& s) { return LaurentPoly(s) * p; }

namespace detail {
inline void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
}
}  // namespace detail

inline LaurentPoly LaurentPoly::parse(const std::string& s) {
    LaurentPoly result;
    size_t i = 0;
    detail::skip_ws(s, i);
    if (i >= s.size()) throw std::invalid_argument("parse: empty polynomial");
    bool any = false;
    while (i < s.size()) {
        int sign = 1;
        detail::skip_ws(s, i);
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        detail::skip_ws(s, i);
        if (i >= s.size()) throw std::invalid_argument("parse: dangling sign");
        Rat coeff(1);
        bool saw_num = false;
        if (std::isdigit((unsigned char)s[i])) {
            size_t j = i;
            while (j < s.size() && (std::isdigit((unsigned char)s[j]) || s[j] == '/')) ++j;
            coeff = rat_parse(s.substr(i, j - i));
            i = j;
            saw_num = true;
        }
        detail::skip_ws(s, i);
        long exp = 0;
        if (i < s.size() && (s[i] == '*' || s[i] == 'X')) {
            if (s[i] == '*') {
                ++i;
                detail::skip_ws(s, i);
                if (i >= s.size() || s[i] != 'X') throw std::invalid_argument("parse: expected X after *");
            }
            ++i;  // consume X
            exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                bool neg = false;
                if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
                    neg = s[i] == '-';
                    ++i;
                }
                size_t j = i;
                while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
                if (j == i) throw std::invalid_argument("parse: bad exponent");
                exp = std::stol(s.substr(i, j - i));
                if (neg) exp = -exp;
                i = j;
            }
        } else if (!saw_num) {
            throw std::invalid_argument("parse: expected term");
        }
        result += monomial(sign < 0 ? Rat(-coeff) : coeff, exp);
        any = true;
        detail::skip_ws(s, i);
    }
    if (!any) throw std::invalid_argument("parse: no terms");
    return result;
}

// Truncated power/Laurent series: coefficients for exponents start, start+1, ...
struct Series {
    long start = 0;
    std::vector<Rat> c;

    Rat at(long exp) const {
        long idx = exp - start;
        if (idx < 0 || idx >= (long)c.size()) return Rat(0);
        return c[idx];
    }
    long end() const { return start + (long)c.size(); }  // one past the last known exponent
};

class RationalFn {
    LaurentPoly num_, den_;

public:
    RationalFn() : num_(), den_(Rat(1)) {}
    RationalFn(const LaurentPoly& n) : num_(n), den_(Rat(1)) {}
    RationalFn(const LaurentPoly& n, const LaurentPoly& d) : num_(n), den_(d) {
        if (den_.is_zero()) throw std::domain_error("RationalFn: zero denominator");
    }
    RationalFn(const Rat& r) : num_(r), den_(Rat(1)) {}

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
        return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFn operator-(const RationalFn& a, const RationalFn& b) {
        return RationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
        return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFn operator/(const RationalFn& a, const RationalFn& b) {
        if (b.is_zero()) throw std::domain_error("RationalFn: division by zero");
        return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFn reciprocal() const {
        if (is_zero()) throw std::domain_error("RationalFn: reciprocal of zero");
        return RationalFn(den_, num_);
    }

    bool operator==(const RationalFn& o) const { return num_ * o.den_ == o.num_ * den_; }
    bool operator!=(const RationalFn& o) const { return !(*this == o); }

    // equality up to a nonzero rational scalar
    static bool proportional(const RationalFn& a, const RationalFn& b) {
        return LaurentPoly::proportional(a.num_ * b.den_, b.num_ * a.den_);
    }

    // gcd-reduced, denominator shifted to min_exp 0 with lowest coefficient 1
    RationalFn normalized() const {
        if (num_.is_zero()) return RationalFn(LaurentPoly(), LaurentPoly(Rat(1)));
        LaurentPoly n = num_, d = den_;
        long sn = n.min_exp(), sd = d.min_exp();
        LaurentPoly pn = n.shifted(-sn), pd = d.shifted(-sd);  // ordinary polynomials
        LaurentPoly g = poly_gcd(pn, pd);
        pn = *LaurentPoly::divide_exact(pn, g);
        pd = *LaurentPoly::divide_exact(pd, g);
        Rat lead = pd.coeff(pd.min_exp());
        pn = pn * (Rat(1) / lead);
        pd = pd * (Rat(1) / lead);
        return RationalFn(pn.shifted(sn - sd), pd);
    }

    // monic-by-lowest-term gcd of ordinary polynomials (min_exp 0 inputs)
    static LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b) {
        while (!b.is_zero()) {
            LaurentPoly r = poly_rem(a, b);
            a = b;
            b = r;
        }
        if (a.is_zero()) return LaurentPoly(Rat(1));
        return a * (Rat(1) / a.coeff(a.max_exp()));
    }
    static LaurentPoly poly_rem(LaurentPoly a, const LaurentPoly& b) {
        if (b.is_zero()) throw std::domain_error("poly_rem: zero divisor");
        if (!a.is_zero() && a.min_exp() > 0) a = a.shifted(0);
        while (!a.is_zero() && a.max_exp() >= b.max_exp()) {
            Rat f = a.coeff(a.max_exp()) / b.coeff(b.max_exp());
            a -= b.shifted(a.max_exp() - b.max_exp()) * f;
        }
        return a;
    }

    // Laurent series expansion; coefficients at exponents start .. start+order.
    Series series(long order) const {
        if (den_.is_zero()) throw std::domain_error("series: zero denominator");
        if (num_.is_zero()) return Series{0, std::vector<Rat>(order + 1, Rat(0))};
        long vd = den_.min_exp();
        long vn = num_.min_exp();
        long start = vn - vd;
        std::vector<Rat> d = den_.dense();  // d[0] != 0
        std::vector<Rat> a = num_.dense();
        std::vector<Rat> out(order + 1, Rat(0));
        for (long k = 0; k <= order; ++k) {
            Rat t = k < (long)a.size() ? a[k] : Rat(0);
            for (long j = 1; j <= k && j < (long)d.size(); ++j) t -= d[j] * out[k - j];
            out[k] = t / d[0];
        }
        return Series{start, std::move(out)};
    }

    // Power-series coefficients c_0..c_order; requires expansion in nonnegative powers.
    std::vector<Rat> taylor(long order) const {
        Series s = series(order);
        std::vector<Rat> out(order + 1, Rat(0));
        for (long e = 0; e <= order; ++e) {
            if (e < s.start) continue;
            out[e] = s.at(e);
        }
        if (s.start < 0)
            for (long e = s.start; e < 0; ++e)
                if (s.at(e) != 0) throw std::domain_error("taylor: expansion has negative exponents");
        return out;
    }

    std::string str() const { return "(" + num_.str() + ")/(" + den_.str() + ")"; }

    static RationalFn parse(const std::string& s) {
        auto mid = s.find(")/(");
        if (s.size() < 5 || s.front() != '(' || s.back() != ')' || mid == std::string::npos)
            throw std::invalid_argument("RationalFn::parse: want (num)/(den)");
        return RationalFn(LaurentPoly::parse(s.substr(1, mid - 1)),
                          LaurentPoly::parse(s.substr(mid + 3, s.size() - mid - 4)));
    }
};

// Ambient constants: q > 1 exact rational, optional Satake parameter a != 0.
struct AmbientParams {
    Rat q;
    std::optional<Rat> a;

    explicit AmbientParams(const Rat& q_, std::optional<Rat> a_ = std::nullopt) : q(q_), a(a_) {
        if (q <= 1) throw std::invalid_argument("AmbientParams: q must exceed 1");
        if (a && *a == 0) throw std::invalid_argument("AmbientParams: a must be nonzero");
    }

    LaurentPoly X() const { return LaurentPoly::X(); }
    LaurentPoly Xp() const { return LaurentPoly::monomial(Rat(1) / q, 1); }  // X' = X/q
    Rat satake() const {
        if (!a) throw std::domain_error("AmbientParams: Satake parameter not set");
        return *a;
    }
};

}  // namespace skbessel
