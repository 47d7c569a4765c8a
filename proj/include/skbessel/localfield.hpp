#pragma once

// Truncated model of F = Q_p and the quadratic algebra E over it.
// Elements carry a valuation and a unit part known to a tracked number of
// p-adic digits; addition may lose digits to cancellation.

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "laurent.hpp"
#include "rational.hpp"

namespace skbessel {

struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

struct PadicCtx {
    long long p = 3;
    int N = 8;  // significant digits carried by freshly constructed elements

    PadicCtx() = default;
    PadicCtx(long long p_, int N_) : p(p_), N(N_) {
        if (p < 2) throw std::invalid_argument("PadicCtx: p must be prime");
        if (N < 2 || N > 36) throw std::invalid_argument("PadicCtx: N out of range");
    }
    long long pow(int k) const {
        long long r = 1;
        for (int i = 0; i < k; ++i) {
            if (r > std::numeric_limits<long long>::max() / p) throw std::overflow_error("p^k overflow");
            r *= p;
        }
        return r;
    }
};

namespace detail {
inline long long mulmod(long long a, long long b, long long m) {
    return (long long)((__int128)a * b % m);
}
inline long long invmod(long long a, long long m) {
    long long t = 0, nt = 1, r = m, nr = a % m;
    if (nr < 0) nr += m;
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::domain_error("invmod: not invertible");
    return t < 0 ? t + m : t;
}
}  // namespace detail

enum class Tri { Yes, No, Unknown };

class FieldElem {
    enum class Kind { ExactZero, ApproxZero, Value };
    Kind kind_ = Kind::ExactZero;
    long long p_ = 0;
    long v_ = 0;       // valuation (Value) / certified lower bound (ApproxZero)
    long long u_ = 0;  // unit part mod p^prec_, in [1, p^prec_), coprime to p
    int prec_ = 0;     // certified significant digits

    FieldElem(Kind k, long long p, long v, long long u, int prec)
        : kind_(k), p_(p), v_(v), u_(u), prec_(prec) {}

    static long long pw(long long p, int k) {
        long long r = 1;
        while (k-- > 0) r *= p;
        return r;
    }

public:
    FieldElem() = default;

    static FieldElem zero(const PadicCtx& ctx) { return FieldElem(Kind::ExactZero, ctx.p, 0, 0, 0); }
    static FieldElem approx_zero(long long p, long bound) {
        return FieldElem(Kind::ApproxZero, p, bound, 0, 0);
    }
    static FieldElem from_parts(const PadicCtx& ctx, long v, long long unit, int prec) {
        long long m = pw(ctx.p, prec);
        long long u = unit % m;
        if (u < 0) u += m;
        if (u % ctx.p == 0) throw std::invalid_argument("from_parts: unit divisible by p");
        return FieldElem(Kind::Value, ctx.p, v, u, prec);
    }
    static FieldElem from_rational(const PadicCtx& ctx, const Rat& r) {
        if (r == 0) return zero(ctx);
        Int un, ud;
        long v = rat_valuation(r, Int(ctx.p), &un, &ud);
        Int m(ctx.pow(ctx.N));
        Int unum = un % m;
        if (unum < 0) unum += m;
        Int uden = ud % m;
        if (uden < 0) uden += m;
        long long u = detail::mulmod((long long)unum, detail::invmod((long long)uden, ctx.pow(ctx.N)),
                                     ctx.pow(ctx.N));
        return FieldElem(Kind::Value, ctx.p, v, u, ctx.N);
    }

    long long p() const { return p_; }
    bool is_exact_zero() const { return kind_ == Kind::ExactZero; }
    bool is_zeroish() const { return kind_ != Kind::Value; }
    int precision() const { return prec_; }

    long valuation() const {
        if (kind_ == Kind::Value) return v_;
        if (kind_ == Kind::ExactZero) return std::numeric_limits<long>::max();
        throw precision_error("valuation of a value cancelled below working precision");
    }

    Tri val_at_least(long k) const {
        switch (kind_) {
            case Kind::ExactZero: return Tri::Yes;
            case Kind::ApproxZero: return v_ >= k ? Tri::Yes : Tri::Unknown;
            case Kind::Value: return v_ >= k ? Tri::Yes : Tri::No;
        }
        return Tri::Unknown;
    }
    bool is_unit() const { return kind_ == Kind::Value && v_ == 0; }

    long long unit_part() const {
        if (kind_ != Kind::Value) throw std::domain_error("unit_part of zero");
        return u_;
    }

    // residue of the element modulo p^k, for elements with valuation >= 0
    long long residue(int k) const {
        if (kind_ == Kind::ExactZero) return 0;
        if (kind_ == Kind::ApproxZero) {
            if (v_ >= k) return 0;
            throw precision_error("residue: cancelled value not certified mod p^k");
        }
        if (v_ < 0) throw std::domain_error("residue: negative valuation");
        if (v_ >= k) return 0;
        if (prec_ < k - v_) throw precision_error("residue: insufficient digits");
        long long m = pw(p_, k);
        return detail::mulmod(u_ % m, pw(p_, (int)v_) % m, m);
    }

    FieldElem negated() const {
        if (kind_ != Kind::Value) return *this;
        long long m = pw(p_, prec_);
        return FieldElem(Kind::Value, p_, v_, m - u_, prec_);
    }

    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        if (a.kind_ == Kind::ExactZero || b.kind_ == Kind::ExactZero)
            return FieldElem(Kind::ExactZero, a.p_, 0, 0, 0);
        if (a.kind_ == Kind::ApproxZero || b.kind_ == Kind::ApproxZero) {
            long abound = a.kind_ == Kind::Value ? a.v_ : a.v_;
            long bbound = b.kind_ == Kind::Value ? b.v_ : b.v_;
            return approx_zero(a.p_, abound + bbound);
        }
        int prec = std::min(a.prec_, b.prec_);
        long long m = pw(a.p_, prec);
        return FieldElem(Kind::Value, a.p_, a.v_ + b.v_, detail::mulmod(a.u_ % m, b.u_ % m, m), prec);
    }

    FieldElem inverse() const {
        if (kind_ != Kind::Value) throw std::domain_error("inverse of zero");
        long long m = pw(p_, prec_);
        return FieldElem(Kind::Value, p_, -v_, detail::invmod(u_, m), prec_);
    }
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        if (a.kind_ == Kind::ExactZero) return b;
        if (b.kind_ == Kind::ExactZero) return a;
        if (a.kind_ == Kind::ApproxZero || b.kind_ == Kind::ApproxZero) {
            if (a.kind_ == Kind::ApproxZero && b.kind_ == Kind::ApproxZero)
                return approx_zero(a.p_, std::min(a.v_, b.v_));
            const FieldElem& az = a.kind_ == Kind::ApproxZero ? a : b;
            const FieldElem& val = a.kind_ == Kind::ApproxZero ? b : a;
            if (val.v_ < az.v_) {
                // value part dominates; digits at exponents >= az.v_ are unknown
                int prec = std::min((long)val.prec_, az.v_ - val.v_);
                if (prec <= 0) return approx_zero(a.p_, std::min(val.v_, az.v_));
                long long m = pw(a.p_, prec);
                return FieldElem(Kind::Value, a.p_, val.v_, val.u_ % m, prec);
            }
            return approx_zero(a.p_, az.v_);
        }
        long v = std::min(a.v_, b.v_);
        long known = std::min(a.v_ + a.prec_, b.v_ + b.prec_);
        int window = (int)(known - v);
        if (window <= 0) return approx_zero(a.p_, v);
        long long m = pw(a.p_, window);
        long long ra = detail::mulmod(a.u_ % m, pw(a.p_, (int)(a.v_ - v)) % m, m);
        long long rb = detail::mulmod(b.u_ % m, pw(a.p_, (int)(b.v_ - v)) % m, m);
        long long s = (ra + rb) % m;
        if (s == 0) return approx_zero(a.p_, known);
        int shift = 0;
        while (s % a.p_ == 0) {
            s /= a.p_;
            ++shift;
        }
        return FieldElem(Kind::Value, a.p_, v + shift, s, window - shift);
    }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + b.negated(); }

    FieldElem times_p_power(long k) const {
        if (kind_ == Kind::ExactZero) return *this;
        if (kind_ == Kind::ApproxZero) return approx_zero(p_, v_ + k);
        return FieldElem(Kind::Value, p_, v_ + k, u_, prec_);
    }

    // equality as far as both operands certify; zeros compare equal at any precision
    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        FieldElem d = a - b;
        if (d.kind_ == Kind::ExactZero) return true;
        if (d.kind_ == Kind::ApproxZero) return true;  // equal to available precision
        return false;
    }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    std::string str() const {
        if (kind_ == Kind::ExactZero) return "0";
        if (kind_ == Kind::ApproxZero) return "O(p^" + std::to_string(v_) + ")";
        return "p^" + std::to_string(v_) + " * " + std::to_string(u_);
    }
};

// ---------------------------------------------------------------------------
// Classification of E/F.

enum class ECase { Split, U_i, U_ii, R_i, R_ii };
enum class EDescriptor { NonsquareUnit, Uniformizer, UnitWith2adicCondition, Split };

inline const char* ecase_name(ECase c) {
    switch (c) {
        case ECase::Split: return "Split";
        case ECase::U_i: return "U-i";
        case ECase::U_ii: return "U-ii";
        case ECase::R_i: return "R-i";
        case ECase::R_ii: return "R-ii";
    }
    return "?";
}
inline ECase ecase_from_name(const std::string& s) {
    if (s == "Split") return ECase::Split;
    if (s == "U-i") return ECase::U_i;
    if (s == "U-ii") return ECase::U_ii;
    if (s == "R-i") return ECase::R_i;
    if (s == "R-ii") return ECase::R_ii;
    throw std::invalid_argument("unknown case name: " + s);
}

struct QuadExt {
    ECase kase = ECase::Split;
    PadicCtx ctx;
    Rat e = 0;      // defining element, absent (0) in the split case
    Rat alpha = 0;  // case R-ii only: alpha^2 - e = p
    Rat b = 0;      // case U-ii only: 1 - b^2 e in 4o
    int f = 1;      // residue degree of E/F
    int dv = 1;     // 2 in case U-ii, else 1
    int m0 = 1;     // 1 in case U, 2 in case R
    int diff_exp = 0;

    bool is_split() const { return kase == ECase::Split; }
    bool is_case_U() const { return kase == ECase::U_i || kase == ECase::U_ii; }
    bool is_case_R() const { return kase == ECase::R_i || kase == ECase::R_ii; }
    long long p() const { return ctx.p; }
    long long residue_size_E() const { return f == 2 ? ctx.p * ctx.p : ctx.p; }
    int ram_index() const { return is_case_R() ? 2 : 1; }

    FieldElem fe(const Rat& r) const { return FieldElem::from_rational(ctx, r); }
    FieldElem fzero() const { return FieldElem::zero(ctx); }
};

inline bool is_qr_mod_p(long long a, long long p) {
    a %= p;
    if (a < 0) a += p;
    for (long long x = 0; x < p; ++x)
        if (x * x % p == a) return true;
    return false;
}

inline QuadExt classify(long long p, EDescriptor d, int N = 8, std::optional<Rat> e_override = std::nullopt) {
    bool prime = p >= 2;
    for (long long k = 2; k * k <= p; ++k)
        if (p % k == 0) prime = false;
    if (!prime) throw std::invalid_argument("classify: p must be prime");
    QuadExt E;
    E.ctx = PadicCtx(p, N);
    switch (d) {
        case EDescriptor::Split:
            E.kase = ECase::Split;
            E.f = 1;
            E.dv = 1;
            E.m0 = 1;
            E.diff_exp = 0;
            return E;
        case EDescriptor::NonsquareUnit: {
            if (p == 2) {
                // dyadic nonsquare unit without the U-ii condition: ramified, case R-ii
                E.kase = ECase::R_ii;
                E.e = e_override.value_or(Rat(7));
                E.alpha = Rat(3);  // alpha^2 - e = 9 - 7 = 2
                if (E.alpha * E.alpha - E.e != Rat(p))
                    throw std::invalid_argument("classify: R-ii requires alpha^2 - e = p");
                E.f = 1;
                E.dv = 1;
                E.m0 = 2;
            } else {
                E.kase = ECase::U_i;
                if (e_override) {
                    E.e = *e_override;
                } else {
                    long long cand = 2;
                    while (is_qr_mod_p(cand, p)) ++cand;
                    E.e = Rat(cand);
                }
                if (rat_valuation(E.e, Int(p)) != 0 || is_qr_mod_p((long long)numerator(E.e) % p, p))
                    throw std::invalid_argument("classify: U-i requires a nonsquare unit e");
                E.f = 2;
                E.dv = 1;
                E.m0 = 1;
            }
            break;
        }
        case EDescriptor::Uniformizer:
            E.kase = ECase::R_i;
            E.e = e_override.value_or(Rat(p));
            if (rat_valuation(E.e, Int(p)) != 1)
                throw std::invalid_argument("classify: R-i requires e of valuation 1");
            E.f = 1;
            E.dv = 1;
            E.m0 = 2;
            break;
        case EDescriptor::UnitWith2adicCondition:
            if (p != 2) throw std::invalid_argument("classify: 2-adic descriptor requires p = 2");
            E.kase = ECase::U_ii;
            E.e = e_override.value_or(Rat(5));
            E.b = Rat(1);  // 1 - b^2 e = -4 in 4o
            if (rat_valuation(Rat(1) - E.b * E.b * E.e, Int(2)) < 2)
                throw std::invalid_argument("classify: U-ii requires 1 - b^2 e in 4o");
            E.f = 2;
            E.dv = 2;
            E.m0 = 1;
            break;
    }
    // different/discriminant exponent: 0 unless ramified, where it is
    // v_p(disc of the minimal polynomial of rho) = v_p(4e).
    if (E.is_case_R())
        E.diff_exp = (int)rat_valuation(Rat(4) * E.e, Int(p));
    else
        E.diff_exp = 0;
    return E;
}

// ---------------------------------------------------------------------------
// Elements of E in coordinates (x, y): x + y*sigma for field cases, a pair
// (x, y) of F-components in the split case.

class QuadElem {
    const QuadExt* E_ = nullptr;
    FieldElem x_, y_;

public:
    QuadElem() = default;
    QuadElem(const QuadExt& E, FieldElem x, FieldElem y) : E_(&E), x_(x), y_(y) {}
    static QuadElem from_rationals(const QuadExt& E, const Rat& x, const Rat& y) {
        return QuadElem(E, E.fe(x), E.fe(y));
    }
    static QuadElem zero(const QuadExt& E) { return QuadElem(E, E.fzero(), E.fzero()); }
    static QuadElem one(const QuadExt& E) {
        return E.is_split() ? QuadElem(E, E.fe(1), E.fe(1)) : QuadElem(E, E.fe(1), E.fzero());
    }
    static QuadElem sigma(const QuadExt& E) {
        if (E.is_split()) return QuadElem(E, E.fe(1), E.fe(-1));  // (1,-1): trace 0, square 1
        return QuadElem(E, E.fzero(), E.fe(1));
    }
    // fixed generator of P: pi in case U, sigma in R-i, alpha + sigma in R-ii
    static QuadElem rho(const QuadExt& E) {
        switch (E.kase) {
            case ECase::U_i:
            case ECase::U_ii: return from_rationals(E, Rat(E.p()), 0);
            case ECase::R_i: return sigma(E);
            case ECase::R_ii: return QuadElem(E, E.fe(E.alpha), E.fe(1));
            case ECase::Split: throw std::domain_error("rho undefined in the split case");
        }
        throw std::domain_error("rho");
    }
    // second basis vector of O over o: sigma, or (1 + b sigma)/2 in case U-ii
    static QuadElem omega(const QuadExt& E) {
        if (E.kase == ECase::U_ii)
            return QuadElem(E, E.fe(Rat(1, 2)), E.fe(E.b / 2));
        return sigma(E);
    }

    const QuadExt& ext() const { return *E_; }
    const FieldElem& x() const { return x_; }
    const FieldElem& y() const { return y_; }
    bool is_zeroish() const { return x_.is_zeroish() && y_.is_zeroish(); }

    QuadElem operator+(const QuadElem& o) const { return QuadElem(*E_, x_ + o.x_, y_ + o.y_); }
    QuadElem operator-(const QuadElem& o) const { return QuadElem(*E_, x_ - o.x_, y_ - o.y_); }
    QuadElem negated() const { return QuadElem(*E_, x_.negated(), y_.negated()); }

    QuadElem operator*(const QuadElem& o) const {
        if (E_->is_split()) return QuadElem(*E_, x_ * o.x_, y_ * o.y_);
        FieldElem e = E_->fe(E_->e);
        return QuadElem(*E_, x_ * o.x_ + e * (y_ * o.y_), x_ * o.y_ + y_ * o.x_);
    }
    QuadElem scale(const FieldElem& c) const { return QuadElem(*E_, c * x_, c * y_); }

    QuadElem conj() const {
        if (E_->is_split()) return QuadElem(*E_, y_, x_);
        return QuadElem(*E_, x_, y_.negated());
    }
    FieldElem norm() const {
        if (E_->is_split()) return x_ * y_;
        FieldElem e = E_->fe(E_->e);
        return x_ * x_ - e * (y_ * y_);
    }
    FieldElem trace() const {
        if (E_->is_split()) return x_ + y_;
        return x_ + x_;
    }
    QuadElem inverse() const {
        if (E_->is_split()) return QuadElem(*E_, x_.inverse(), y_.inverse());
        return conj().scale(norm().inverse());
    }
    QuadElem pow(long n) const {
        QuadElem base = n >= 0 ? *this : inverse();
        unsigned long k = n >= 0 ? n : -n;
        QuadElem acc = one(*E_);
        while (k) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    // normalized P-valuation: val_E(rho) = 1. Split elements use min of
    // component valuations (the O = o+o model).
    Tri valE_at_least(long k) const {
        if (E_->is_split()) {
            Tri a = x_.val_at_least(k), b = y_.val_at_least(k);
            if (a == Tri::No || b == Tri::No) return Tri::No;
            if (a == Tri::Yes && b == Tri::Yes) return Tri::Yes;
            return Tri::Unknown;
        }
        if (E_->is_case_U()) {
            // unramified: val_E(x + y sigma) = min(v(x), v(y)) in the sigma basis
            // except U-ii where half-integral coordinates shift by v(2).
            // Uniform rule: val_E = v_F(norm)/2, so test norm >= 2k.
            return norm().val_at_least(2 * k);
        }
        return norm().val_at_least(k);  // ramified: val_E = v_F(norm)
    }
    bool in_P(long k) const {
        Tri t = valE_at_least(k);
        if (t == Tri::Unknown) throw precision_error("in_P: undecidable at working precision");
        return t == Tri::Yes;
    }
    bool is_integral() const { return in_P(0); }
    bool is_unit_O() const { return is_integral() && !in_P(1); }

    bool operator==(const QuadElem& o) const { return x_ == o.x_ && y_ == o.y_; }
    bool operator!=(const QuadElem& o) const { return !(*this == o); }

    std::string str() const { return "(" + x_.str() + ") + (" + y_.str() + ")*s"; }
};

// Representatives of O/P^k, exactly q^(f k) of them.
inline std::vector<QuadElem> residue_reps(const QuadExt& E, int k, long long size_limit = 2000000) {
    if (k < 1) throw std::invalid_argument("residue_reps: k >= 1");
    if (E.is_split()) {
        // O = o + o, P^k corresponds to p^k in each factor; this helper serves the
        // field cases of the Hecke sums, split callers enumerate o/p^k pairs.
        long long n = E.ctx.pow(k);
        if (n * n > size_limit) throw std::length_error("residue_reps: size bound exceeded");
        std::vector<QuadElem> out;
        for (long long i = 0; i < n; ++i)
            for (long long j = 0; j < n; ++j)
                out.push_back(QuadElem::from_rationals(E, Rat(i), Rat(j)));
        return out;
    }
    // rho-adic digits with digit set = residue field representatives
    std::vector<QuadElem> digits;
    if (E.f == 2) {
        for (long long i = 0; i < E.p(); ++i)
            for (long long j = 0; j < E.p(); ++j)
                digits.push_back(QuadElem::from_rationals(E, Rat(i), 0) +
                                 QuadElem::omega(E).scale(E.fe(Rat(j))));
    } else {
        for (long long i = 0; i < E.p(); ++i) digits.push_back(QuadElem::from_rationals(E, Rat(i), 0));
    }
    double total = 1;
    for (int i = 0; i < k; ++i) total *= (double)digits.size();
    if (total > (double)size_limit) throw std::length_error("residue_reps: size bound exceeded");
    std::vector<QuadElem> out{QuadElem::zero(E)};
    QuadElem rho = QuadElem::rho(E);
    QuadElem rho_pow = QuadElem::one(E);
    for (int i = 0; i < k; ++i) {
        std::vector<QuadElem> next;
        next.reserve(out.size() * digits.size());
        for (const auto& base : out)
            for (const auto& d : digits) next.push_back(base + d * rho_pow);
        out = std::move(next);
        rho_pow = rho_pow * rho;
    }
    return out;
}

// Representatives of the residue field o/p of F.
inline std::vector<FieldElem> residue_reps_F(const QuadExt& E) {
    std::vector<FieldElem> out;
    for (long long i = 0; i < E.p(); ++i) out.push_back(E.fe(Rat(i)));
    return out;
}

// Inverse of zeta_E(s + 1/2) as a Laurent polynomial in X.
inline LaurentPoly zeta_E_inverse(const QuadExt& E, const AmbientParams& par) {
    LaurentPoly one(Rat(1)), Xp = par.Xp();
    if (E.is_split()) return (one - Xp) * (one - Xp);
    if (E.is_case_U()) return one - Xp * Xp;
    return one - Xp;
}

inline std::string quadext_json(const QuadExt& E) {
    std::ostringstream os;
    os << "{\"p\":" << E.p() << ",\"case\":\"" << ecase_name(E.kase) << "\",\"f\":" << E.f
       << ",\"dv\":" << E.dv << ",\"m0\":" << E.m0 << ",\"diff_exp\":" << E.diff_exp << "}";
    return os.str();
}

}  // namespace skbessel
