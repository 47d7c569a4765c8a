#pragma once

// Symbolic zeta layer: Hecke recursion solvers, canonical Piatetski-Shapiro
// zeta assembly, zeta polynomials with their functional equation, level
// raising, and the split-case series identity.

#include "localfield.hpp"

namespace skbessel {

enum class ProfileFlavor { Complete, Flat, Plain, Sharp };

inline const char* profile_flavor_name(ProfileFlavor f) {
    switch (f) {
        case ProfileFlavor::Complete: return "complete";
        case ProfileFlavor::Flat: return "flat";
        case ProfileFlavor::Plain: return "plain";
        case ProfileFlavor::Sharp: return "sharp";
    }
    return "?";
}

// zeta_E(s + 1/2)^-1 by case of E, without a full QuadExt at hand
inline LaurentPoly zeta_E_inverse_case(ECase kase, const AmbientParams& par) {
    LaurentPoly one(Rat(1)), Xp = par.Xp();
    if (kase == ECase::Split) return (one - Xp) * (one - Xp);
    if (kase == ECase::U_i || kase == ECase::U_ii) return one - Xp * Xp;
    return one - Xp;
}

struct ZetaProfile {
    RationalFn Z;
    std::optional<RationalFn> Zstar;
    ProfileFlavor flavor = ProfileFlavor::Complete;
    long m = 0;  // principal level
    int f = 1;
    std::optional<int> kappa;  // w'_m eigenvalue, case U noncomplete flavors
    int sign_eps = +1;         // Atkin-Lehner sign
    ECase kase = ECase::Split;

    std::string json(const AmbientParams& par) const {
        std::ostringstream os;
        os << "{\"Z\":\"" << Z.str() << "\"";
        if (Zstar) os << ",\"Zstar\":\"" << Zstar->str() << "\"";
        os << ",\"flavor\":\"" << profile_flavor_name(flavor) << "\",\"m\":" << m << ",\"f\":" << f;
        if (kappa) os << ",\"kappa\":" << *kappa;
        os << ",\"sign\":" << sign_eps << ",\"case\":\"" << ecase_name(kase)
           << "\",\"q\":\"" << rat_str(par.q) << "\"}";
        return os.str();
    }
};

struct ZetaPolynomial {
    LaurentPoly P;
    long index_m = 0;
};

// ---------------------------------------------------------------------------
// Case U recursion: lambda_kappa c_i = q^3 c_{i+1} + c_{i-1} for i >= 1 with
// c_0, c_1 given; the zeta is Z(X) = sum c_i q^i X^i. Denominator from eq. fl;
// the numerator carries the boundary so that [X]Z = q c_1 exactly.
inline RationalFn solve_recursion_U(const AmbientParams& par, const Rat& lambda_kappa,
                                    const Rat& c0, const Rat& c1) {
    const Rat& q = par.q;
    LaurentPoly X = LaurentPoly::X();
    LaurentPoly f = LaurentPoly(Rat(1)) - LaurentPoly::monomial(lambda_kappa / (q * q), 1) +
                    LaurentPoly::monomial(Rat(1) / q, 2);
    LaurentPoly num = LaurentPoly(c0) + LaurentPoly::monomial(q * c1 - lambda_kappa * c0 / (q * q), 1);
    RationalFn Z(num, f);
    // series self-check of the recursion to order 20
    auto z = Z.taylor(21);
    for (long i = 1; i <= 19; ++i) {
        Rat wi = z[i] / rat_pow(q, i), wip = z[i + 1] / rat_pow(q, i + 1),
            wim = z[i - 1] / rat_pow(q, i - 1);
        if (lambda_kappa * wi != rat_pow(q, 3) * wip + wim)
            throw std::logic_error("solve_recursion_U: self-check failed");
    }
    return Z;
}

// Case R coupled system (strict newforms fixed by K_2m+1^sharp):
//   lambda c_i  = q^3 c_{i+1}  + c_{i-1}   + q^2 (q-1) c*_i   (i >= 1)
//   lambda c*_i = q^3 c*_{i+1} + c*_{i-1}  + (q-1) c_i        (i >= 0)
// Solved through the 2x2 linear system with determinant Delta_lambda.
struct CaseRZetas {
    RationalFn Z;
    RationalFn Zstar;
    LaurentPoly Delta;
};

inline CaseRZetas solve_recursion_R(const AmbientParams& par, const Rat& lambda, const Rat& c0,
                                    const Rat& c1, const Rat& cstar_m1, const Rat& cstar_0) {
    const Rat& q = par.q;
    Rat a = q - 1;
    LaurentPoly f = LaurentPoly(Rat(1)) - LaurentPoly::monomial(lambda / (q * q), 1) +
                    LaurentPoly::monomial(Rat(1) / q, 2);
    LaurentPoly aX = LaurentPoly::monomial(a, 1);
    LaurentPoly Delta = f * f - LaurentPoly::monomial(a * a / (q * q), 2);
    if (Delta.is_zero()) throw std::domain_error("solve_recursion_R: degenerate Delta");
    LaurentPoly rhs1 = LaurentPoly(c0 + a * cstar_m1 / q) +
                       LaurentPoly::monomial(a * cstar_0 - lambda * c0 / (q * q) + q * c1, 1);
    LaurentPoly rhs2 =
        LaurentPoly(cstar_0 - lambda * cstar_m1 / rat_pow(q, 3)) + LaurentPoly::monomial(cstar_m1 / q, -1);
    // Cramer: [f, aX; a X / q^2, f] [Z, Z*]^t = [rhs1, rhs2]^t
    RationalFn Z(f * rhs1 - aX * rhs2, Delta);
    RationalFn Zs(f * rhs2 - LaurentPoly::monomial(a / (q * q), 1) * rhs1, Delta);

    // structural shape checks: Z = Q/Delta with deg Q <= 3, Z* = R/(X Delta), deg R <= 3
    LaurentPoly Q = f * rhs1 - aX * rhs2;
    LaurentPoly Rp = (f * rhs2 - LaurentPoly::monomial(a / (q * q), 1) * rhs1).shifted(1);
    if (!Q.is_zero() && (Q.min_exp() < 0 || Q.max_exp() > 3))
        throw std::logic_error("solve_recursion_R: deg Q out of range");
    if (!Rp.is_zero() && (Rp.min_exp() < 0 || Rp.max_exp() > 3))
        throw std::logic_error("solve_recursion_R: deg R out of range");

    // coupled series self-check to order 20
    Series sz = Z.series(22), szs = Zs.series(23);
    auto w = [&](const Series& s, long i) { return s.at(i) / rat_pow(q, i); };
    for (long i = 1; i <= 19; ++i)
        if (lambda * w(sz, i) != rat_pow(q, 3) * w(sz, i + 1) + w(sz, i - 1) + q * q * a * w(szs, i))
            throw std::logic_error("solve_recursion_R: Z self-check failed");
    for (long i = 0; i <= 19; ++i)
        if (lambda * w(szs, i) != rat_pow(q, 3) * w(szs, i + 1) + w(szs, i - 1) + a * w(sz, i))
            throw std::logic_error("solve_recursion_R: Z* self-check failed");
    return CaseRZetas{Z, Zs, Delta};
}

// ---------------------------------------------------------------------------
// Canonical n-th Piatetski-Shapiro zeta of a profile, n in {m, m+1}.
inline RationalFn ps_zeta(const ZetaProfile& pr, long n, const AmbientParams& par) {
    if (n != pr.m && n != pr.m + 1) throw std::invalid_argument("ps_zeta: n must be m or m+1");
    const Rat& q = par.q;
    bool at_m = n == pr.m;
    bool caseU = pr.kase == ECase::U_i || pr.kase == ECase::U_ii;
    if (caseU && pr.kappa && pr.flavor != ProfileFlavor::Complete &&
        pr.flavor != ProfileFlavor::Flat) {
        // kappa-eigenvector formulas of the plain/sharp case-U flavors
        Rat kap(*pr.kappa);
        LaurentPoly d = at_m ? LaurentPoly(Rat(1)) - LaurentPoly::monomial(kap * q, -1)
                             : LaurentPoly(Rat(1)) - LaurentPoly::monomial(kap / q, 1);
        return pr.Z / RationalFn(d * LaurentPoly(Rat(1) + q * q));
    }
    RationalFn Zs = pr.flavor == ProfileFlavor::Complete
                        ? pr.Z
                        : (pr.Zstar ? *pr.Zstar
                                    : throw std::invalid_argument("ps_zeta: missing Zstar"));
    Rat qf = rat_pow(q, pr.f);
    RationalFn mixed = at_m ? pr.Z + RationalFn(LaurentPoly(qf)) * Zs
                            : pr.Z + RationalFn(LaurentPoly::X(pr.f)) * Zs;
    RationalFn zetaE(LaurentPoly(Rat(1)), zeta_E_inverse_case(pr.kase, par));
    return zetaE * mixed / RationalFn(LaurentPoly(Rat(1) + qf));
}

// Z_n / L as an exact Laurent polynomial; throws on inexact division.
inline ZetaPolynomial zeta_polynomial(const RationalFn& Zn, const RationalFn& L, long n) {
    RationalFn ratio = Zn / L;
    auto P = LaurentPoly::divide_exact(ratio.num(), ratio.den());
    if (!P) throw std::domain_error("zeta_polynomial: quotient is not a Laurent polynomial");
    return ZetaPolynomial{*P, n};
}

// P(X^-1) = eps eps_pi X^(n_pi - f m) P(X)
inline bool check_functional_equation(const ZetaPolynomial& P, int eps, int eps_pi, long n_pi,
                                      int f) {
    LaurentPoly lhs = P.P.invert_variable();
    LaurentPoly rhs = P.P.shifted(n_pi - (long)f * P.index_m);
    if (eps * eps_pi < 0) rhs = rhs.negated();
    return lhs == rhs;
}

enum class RaiseOp { E, Eta };

inline ZetaPolynomial raise_level(const ZetaPolynomial& P, RaiseOp op, int f,
                                  const AmbientParams& par) {
    Rat qf = rat_pow(par.q, f);
    if (op == RaiseOp::E) {
        LaurentPoly factor = LaurentPoly(qf) * (LaurentPoly(Rat(1)) + LaurentPoly::X(f));
        return ZetaPolynomial{factor * P.P, P.index_m + 1};
    }
    return ZetaPolynomial{LaurentPoly::monomial(qf, f) * P.P, P.index_m + 2};
}

// rank of {eta^a e^b 1 : 2a + b = k} inside the sign-plus polynomials of
// mirror degree f k; the oldform dimension count
inline long oldform_basis_rank(long M, long k, int f, const AmbientParams& par) {
    if (k < 0) throw std::invalid_argument("oldform_basis_rank: k >= 0");
    std::vector<LaurentPoly> polys;
    for (long a = 0; 2 * a <= k; ++a) {
        long b = k - 2 * a;
        ZetaPolynomial P{LaurentPoly(Rat(1)), M};
        for (long i = 0; i < b; ++i) P = raise_level(P, RaiseOp::E, f, par);
        for (long i = 0; i < a; ++i) P = raise_level(P, RaiseOp::Eta, f, par);
        if (P.index_m != M + k) throw std::logic_error("oldform_basis_rank: index bookkeeping");
        auto ds = P.P.diameter_and_sign();
        if (ds.sign != +1) throw std::logic_error("oldform_basis_rank: sign");
        if (P.P.mirror_degree() != (long)f * k) throw std::logic_error("oldform_basis_rank: diameter");
        polys.push_back(P.P);
    }
    // exact rank by Gaussian elimination on dense coefficient vectors
    long lo = 0, hi = 0;
    for (const auto& p : polys) {
        lo = std::min(lo, p.min_exp());
        hi = std::max(hi, p.max_exp());
    }
    std::vector<std::vector<Rat>> rows;
    for (const auto& p : polys) {
        std::vector<Rat> row(hi - lo + 1, Rat(0));
        for (const auto& [e, c] : p.terms()) row[e - lo] = c;
        rows.push_back(std::move(row));
    }
    long rank = 0;
    size_t ncols = hi - lo + 1;
    std::vector<bool> used(rows.size(), false);
    for (size_t c = 0; c < ncols; ++c) {
        size_t piv = SIZE_MAX;
        for (size_t r = 0; r < rows.size(); ++r)
            if (!used[r] && rows[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv == SIZE_MAX) continue;
        used[piv] = true;
        ++rank;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == piv || rows[r][c] == 0) continue;
            Rat fct = rows[r][c] / rows[piv][c];
            for (size_t cc = 0; cc < ncols; ++cc) rows[r][cc] -= fct * rows[piv][cc];
        }
    }
    return rank;
}

// Split-case series identity of the regular zeta: the transform
//   sum_i w_i (X^i + (1 - q^-1) sum_{j > i} X^j)
// of the coefficients w of L_tau agrees with L_tau (1 - X')/(1 - X).
inline bool split_zeta_identity(const RationalFn& L_tau, const AmbientParams& par, long order) {
    if (L_tau.is_zero()) return true;
    auto w = L_tau.taylor(order);
    Rat scale = Rat(1) - Rat(1) / par.q;
    std::vector<Rat> lhs(order + 1, Rat(0));
    Rat running(0);  // (1 - 1/q) * sum_{i < k} w_i
    for (long k = 0; k <= order; ++k) {
        lhs[k] = w[k] + running;
        running += scale * w[k];
    }
    RationalFn rhs = L_tau * RationalFn(LaurentPoly(Rat(1)) - par.Xp(),
                                        LaurentPoly(Rat(1)) - LaurentPoly::X());
    auto r = rhs.taylor(order);
    return lhs == r;
}

}  // namespace skbessel
