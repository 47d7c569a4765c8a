#pragma once

// Local Saito-Kurokawa classification: Bessel-model existence, minimal level
// and sign, L- and epsilon-factors of the Langlands parameter, the regular L,
// strict-newform zeta profiles, and oldform dimensions.

#include "zeta_engine.hpp"

namespace skbessel {

enum class TauKind {
    UnramifiedPrincipal,
    RamifiedPrincipal,
    Steinberg,
    TwistedSteinberg,
    Supercuspidal
};
enum class SKMember { SK_tau, SK_tauJL };
enum class ExistStatus { Exists, NoModel, NotDeterminedByPaper };

inline const char* tau_kind_name(TauKind k) {
    switch (k) {
        case TauKind::UnramifiedPrincipal: return "unramified";
        case TauKind::RamifiedPrincipal: return "ramified-principal";
        case TauKind::Steinberg: return "steinberg";
        case TauKind::TwistedSteinberg: return "twisted-steinberg";
        case TauKind::Supercuspidal: return "supercuspidal";
    }
    return "?";
}

struct TauLocalType {
    TauKind kind = TauKind::UnramifiedPrincipal;
    long n_tau = 0;
    int eps_tau = +1;
    std::optional<Rat> satake;     // unramified principal series parameter
    bool chi_matches_E = true;     // twisted Steinberg: chi = chi_E of the Bessel field

    static TauLocalType unramified(const Rat& a) {
        TauLocalType t;
        t.kind = TauKind::UnramifiedPrincipal;
        t.n_tau = 0;
        t.eps_tau = +1;
        t.satake = a;
        return t;
    }
    static TauLocalType ramified_principal(long n, int eps) {
        if (n < 2) throw std::invalid_argument("ramified principal series has conductor >= 2");
        TauLocalType t;
        t.kind = TauKind::RamifiedPrincipal;
        t.n_tau = n;
        t.eps_tau = eps;
        return t;
    }
    static TauLocalType steinberg() {
        TauLocalType t;
        t.kind = TauKind::Steinberg;
        t.n_tau = 1;
        t.eps_tau = -1;
        return t;
    }
    // n is the conductor of chi_E St: 1 when E/F is unramified, caller-supplied
    // (2 a(chi_E)) in the ramified case
    static TauLocalType twisted_steinberg(long n, int eps, bool matches_E = true) {
        TauLocalType t;
        t.kind = TauKind::TwistedSteinberg;
        t.n_tau = n;
        t.eps_tau = eps;
        t.chi_matches_E = matches_E;
        return t;
    }
    static TauLocalType supercuspidal(long n, int eps) {
        if (n < 2) throw std::invalid_argument("supercuspidal conductor >= 2");
        TauLocalType t;
        t.kind = TauKind::Supercuspidal;
        t.n_tau = n;
        t.eps_tau = eps;
        return t;
    }

    bool discrete() const {
        return kind == TauKind::Steinberg || kind == TauKind::TwistedSteinberg ||
               kind == TauKind::Supercuspidal;
    }

    // Convention: L(s, St)^-1 = 1 + X' (and the JL side 1 - X'); see README.
    LaurentPoly L_inverse(const AmbientParams& par) const {
        LaurentPoly one(Rat(1)), Xp = par.Xp();
        switch (kind) {
            case TauKind::UnramifiedPrincipal: {
                Rat a = *satake;
                return (one - LaurentPoly::monomial(a, 1)) * (one - Xp * (Rat(1) / a));
            }
            case TauKind::Steinberg: return one + Xp;
            case TauKind::TwistedSteinberg: return n_tau == 1 ? one - Xp : one;
            default: return one;
        }
    }
};

struct SKOptions {
    std::optional<int> dichotomy;  // +1: the tau side carries the Waldspurger functional
    bool assume_dyadic_gamma = true;
    std::optional<Rat> cstar_m1;  // free constant of the plain case-R strict rows
};

struct LanglandsFactors {
    LaurentPoly L_phi_inverse;
    long N_pi = 0;
    int E_pi = +1;
};

inline LanglandsFactors langlands_factors(const TauLocalType& tau, SKMember member,
                                          const AmbientParams& par,
                                          ECase kase = ECase::Split) {
    LaurentPoly one(Rat(1)), X = LaurentPoly::X(), Xp = par.Xp();
    if (member == SKMember::SK_tau)
        return LanglandsFactors{tau.L_inverse(par) * (one - Xp) * (one - X), tau.n_tau,
                                tau.eps_tau};
    if (!tau.discrete())
        throw std::invalid_argument("langlands_factors: SK(tau^JL) needs a discrete tau");
    LaurentPoly LJL_inv;
    switch (tau.kind) {
        case TauKind::Steinberg: LJL_inv = one - Xp; break;
        case TauKind::TwistedSteinberg:
            LJL_inv = (kase == ECase::U_i || kase == ECase::U_ii) ? one + Xp : one;
            break;
        default: LJL_inv = one;
    }
    return LanglandsFactors{LJL_inv * (one - Xp), tau.n_tau + 1, -tau.eps_tau};
}

inline ExistStatus bessel_exists(const TauLocalType& tau, SKMember member, const QuadExt& E,
                                 const SKOptions& opts = {}) {
    if (member == SKMember::SK_tauJL && !tau.discrete())
        throw std::invalid_argument("bessel_exists: SK(tau^JL) needs a discrete tau");
    if (tau.kind == TauKind::TwistedSteinberg && !tau.chi_matches_E)
        return ExistStatus::NotDeterminedByPaper;
    if (E.is_split()) return member == SKMember::SK_tau ? ExistStatus::Exists : ExistStatus::NoModel;
    if (E.p() == 2 && member == SKMember::SK_tauJL && !opts.assume_dyadic_gamma)
        return ExistStatus::NotDeterminedByPaper;
    if (E.is_case_U()) {
        bool tau_side = tau.n_tau % 2 == 0;
        if (opts.dichotomy && tau.discrete()) {
            bool bit_tau_side = *opts.dichotomy > 0;
            if (bit_tau_side != tau_side)
                throw std::invalid_argument("bessel_exists: dichotomy bit violates parity");
        }
        return (member == SKMember::SK_tau) == tau_side ? ExistStatus::Exists
                                                        : ExistStatus::NoModel;
    }
    // case R
    switch (tau.kind) {
        case TauKind::UnramifiedPrincipal:
        case TauKind::RamifiedPrincipal:
            return member == SKMember::SK_tau ? ExistStatus::Exists : ExistStatus::NoModel;
        case TauKind::Steinberg:
            // Waldspurger/Bessel models on the tau side vanish for n_tau = 1
            return member == SKMember::SK_tauJL ? ExistStatus::Exists : ExistStatus::NoModel;
        case TauKind::TwistedSteinberg:
            // chi_E-twist: the invariant functional lives on the JL side
            return member == SKMember::SK_tauJL ? ExistStatus::Exists : ExistStatus::NoModel;
        case TauKind::Supercuspidal: {
            if (!opts.dichotomy) return ExistStatus::NotDeterminedByPaper;
            bool tau_side = *opts.dichotomy > 0;
            return (member == SKMember::SK_tau) == tau_side ? ExistStatus::Exists
                                                            : ExistStatus::NoModel;
        }
    }
    return ExistStatus::NotDeterminedByPaper;
}

struct MinimalLevel {
    long M_pi = 0;
    int eps_pi = +1;
    std::string strict_space_tag;
};

inline MinimalLevel minimal_level(const TauLocalType& tau, SKMember member, const QuadExt& E) {
    long raw = member == SKMember::SK_tau ? tau.n_tau : tau.n_tau + 1;
    if (raw % E.f != 0)
        throw std::logic_error("minimal_level: non-integral M_pi (internal inconsistency)");
    MinimalLevel out;
    out.M_pi = raw / E.f;
    out.eps_pi = member == SKMember::SK_tau ? tau.eps_tau : -tau.eps_tau;
    auto sgn = [](int s) { return s > 0 ? std::string("+") : std::string("-"); };
    std::string s = sgn(out.eps_pi);
    if (member == SKMember::SK_tau) {
        if (tau.n_tau == 0)
            out.strict_space_tag = "B_{0}^{+}";
        else if (E.is_case_U())
            out.strict_space_tag = "B_{" + std::to_string(tau.n_tau - 1) + ",+}^{#," + s + "}";
        else
            out.strict_space_tag = "B_{" + std::to_string(2 * tau.n_tau - 1) + "}^{#," + s + "}";
    } else {
        switch (tau.kind) {
            case TauKind::Steinberg:
                out.strict_space_tag = E.is_case_U() ? "B_{1,+}^{+}" : "B_{3,+}^{+}";
                break;
            case TauKind::TwistedSteinberg:
                out.strict_space_tag = E.is_case_U()
                                           ? "B_{2}^{" + s + "}"
                                           : "B_{" + std::to_string(2 * tau.n_tau + 1) + "}^{" + s + "}";
                break;
            default:
                out.strict_space_tag = E.is_case_U()
                                           ? "B_{" + std::to_string(tau.n_tau) + ",+}^{" + s + "}"
                                           : "B_{" + std::to_string(2 * tau.n_tau + 1) + "}^{" + s + "}";
        }
    }
    return out;
}

// The regular part of the Piatetski-Shapiro L-function.
inline RationalFn regular_L(const TauLocalType& tau, SKMember member, const QuadExt& E,
                            const AmbientParams& par) {
    LaurentPoly one(Rat(1)), X = LaurentPoly::X(), Xp = par.Xp();
    if (member == SKMember::SK_tauJL) {
        if (tau.kind == TauKind::Steinberg) return RationalFn(one, one - Xp);  // type VIb
        return RationalFn(one);  // types Va*, XIb*
    }
    if (E.is_split())
        return RationalFn(one - Xp, tau.L_inverse(par) * (one - X));
    return RationalFn(one, tau.L_inverse(par) * (one - X));
}

struct NewformProfile {
    ZetaProfile strict;
    RationalFn newform_Z;  // zeta of the complete newform, up to scalar
    RationalFn ps_at_M;    // canonical PS zeta at index M_pi
    ZetaPolynomial P_M;    // its zeta polynomial (a nonzero constant)
};

inline NewformProfile newform_profile(const TauLocalType& tau, SKMember member, const QuadExt& E,
                                      const AmbientParams& par, const SKOptions& opts = {}) {
    if (bessel_exists(tau, member, E, opts) != ExistStatus::Exists)
        throw std::domain_error("newform_profile: no Bessel model for this configuration");
    LanglandsFactors lf = langlands_factors(tau, member, par, E.kase);
    MinimalLevel ml = minimal_level(tau, member, E);
    LaurentPoly one(Rat(1)), X = LaurentPoly::X(), Xp = par.Xp();
    const Rat& q = par.q;
    RationalFn L_phi(one, lf.L_phi_inverse);
    RationalFn L_tau(one, tau.L_inverse(par));

    ZetaProfile pr;
    pr.f = E.f;
    pr.kase = E.kase;
    pr.sign_eps = ml.eps_pi;
    RationalFn newform_Z(one);

    if (member == SKMember::SK_tau) {
        if (E.is_split() || tau.n_tau == 0) {
            // complete strict newform: Z = L(s, phi) zeta_E(s+1/2)^-1
            pr.flavor = ProfileFlavor::Complete;
            pr.m = ml.M_pi;
            pr.Z = L_phi * RationalFn(zeta_E_inverse_case(E.kase, par));
            newform_Z = pr.Z;
        } else if (E.is_case_U()) {
            pr.flavor = ProfileFlavor::Sharp;
            pr.m = ml.M_pi - 1;
            pr.kappa = +1;
            pr.Z = RationalFn(one, one - X);
            newform_Z = pr.Z;
        } else {
            pr.flavor = ProfileFlavor::Sharp;
            pr.m = ml.M_pi - 1;
            pr.Z = RationalFn(one, one - X);
            pr.Zstar = RationalFn(one, LaurentPoly::monomial(q, 1) * (one - X));
            newform_Z = pr.Z;
        }
    } else {
        switch (tau.kind) {
            case TauKind::Steinberg:
                pr.flavor = ProfileFlavor::Plain;
                pr.m = ml.M_pi - 1;
                pr.Z = RationalFn(one, one - Xp);
                if (E.is_case_U())
                    pr.kappa = +1;
                else
                    pr.Zstar = RationalFn(one, LaurentPoly::X() * (one - Xp));
                newform_Z = pr.Z;
                break;
            case TauKind::TwistedSteinberg:
                if (E.is_case_U()) {
                    pr.flavor = ProfileFlavor::Complete;
                    pr.m = ml.M_pi;
                    pr.Z = RationalFn(one);
                    newform_Z = pr.Z;
                    break;
                }
                [[fallthrough]];
            default: {
                pr.m = ml.M_pi - 1;
                pr.flavor = ProfileFlavor::Plain;
                pr.Z = RationalFn(one);
                if (E.is_case_U()) {
                    pr.kappa = +1;
                } else {
                    Rat c = opts.cstar_m1.value_or(Rat(1));
                    if (c == -q)
                        throw std::domain_error("newform_profile: cstar_m1 = -q degenerates Z_(m+1)");
                    pr.Zstar = RationalFn(LaurentPoly::monomial(c / q, -1));
                }
                newform_Z = pr.Z;
            }
        }
    }

    NewformProfile out{pr, newform_Z, RationalFn(one), ZetaPolynomial{}};
    out.ps_at_M = ps_zeta(pr, ml.M_pi, par);
    out.P_M = zeta_polynomial(out.ps_at_M, L_phi, ml.M_pi);
    if (out.P_M.P.is_zero() || !out.P_M.P.is_constant())
        throw std::logic_error("newform_profile: zeta polynomial at M_pi is not a nonzero constant");
    // the displayed newform zetas of the three eq-zetaintro shapes (SK(tau) member)
    if (member == SKMember::SK_tau) {
        RationalFn want = E.is_split()
                              ? L_tau * RationalFn(one - Xp, one - X)
                              : (tau.n_tau == 0 && E.is_case_U()
                                     ? L_tau * RationalFn(one + Xp, one - X)
                                     : L_tau * RationalFn(one, one - X));
        if (!RationalFn::proportional(newform_Z, want))
            throw std::logic_error("newform_profile: newform zeta shape mismatch");
    }
    return out;
}

inline long oldform_dimension(const TauLocalType& tau, SKMember member, const QuadExt& E,
                              const AmbientParams& par, long k, const SKOptions& opts = {}) {
    if (bessel_exists(tau, member, E, opts) != ExistStatus::Exists)
        throw std::domain_error("oldform_dimension: no Bessel model");
    long want = k / 2 + 1;
    MinimalLevel ml = minimal_level(tau, member, E);
    long rank = oldform_basis_rank(ml.M_pi, k, E.f, par);
    if (rank != want) throw std::logic_error("oldform_dimension: rank mismatch with [k/2]+1");
    return want;
}

// Bundled classification record.
struct LocalSKData {
    TauLocalType tau;
    SKMember member = SKMember::SK_tau;
    ECase kase = ECase::Split;
    ExistStatus status = ExistStatus::NoModel;
    LanglandsFactors factors;
    RationalFn Lreg;
    std::optional<MinimalLevel> minimal;
    std::optional<NewformProfile> profile;
};

inline LocalSKData classify_sk(const TauLocalType& tau, SKMember member, const QuadExt& E,
                               const AmbientParams& par, const SKOptions& opts = {}) {
    LocalSKData out;
    out.tau = tau;
    out.member = member;
    out.kase = E.kase;
    out.status = bessel_exists(tau, member, E, opts);
    out.factors = langlands_factors(tau, member, par, E.kase);
    out.Lreg = regular_L(tau, member, E, par);
    if (out.status == ExistStatus::Exists) {
        out.minimal = minimal_level(tau, member, E);
        out.profile = newform_profile(tau, member, E, par, opts);
    }
    return out;
}

inline std::string sk_json(const LocalSKData& d, const AmbientParams& par) {
    std::ostringstream os;
    os << "{\"tau\":\"" << tau_kind_name(d.tau.kind) << "\",\"n_tau\":" << d.tau.n_tau
       << ",\"eps_tau\":" << d.tau.eps_tau << ",\"member\":\""
       << (d.member == SKMember::SK_tau ? "sk" : "jl") << "\",\"case\":\"" << ecase_name(d.kase)
       << "\"";
    switch (d.status) {
        case ExistStatus::Exists: os << ",\"exists\":true"; break;
        case ExistStatus::NoModel: os << ",\"exists\":false"; break;
        case ExistStatus::NotDeterminedByPaper: os << ",\"exists\":\"not-determined-by-paper\""; break;
    }
    os << ",\"N_pi\":" << d.factors.N_pi << ",\"E_pi\":" << d.factors.E_pi
       << ",\"L_phi_inverse\":\"" << d.factors.L_phi_inverse.str() << "\",\"Lreg\":\""
       << d.Lreg.str() << "\"";
    if (d.minimal) {
        os << ",\"M_pi\":" << d.minimal->M_pi << ",\"eps_pi\":" << d.minimal->eps_pi
           << ",\"strict_space\":\"" << d.minimal->strict_space_tag << "\"";
    }
    if (d.profile) {
        os << ",\"newform_Z\":\"" << d.profile->newform_Z.str() << "\",\"newform_PSzeta\":\""
           << d.profile->ps_at_M.str() << "\",\"strict_profile\":" << d.profile->strict.json(par);
    }
    os << "}";
    return os.str();
}

}  // namespace skbessel
