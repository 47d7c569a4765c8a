#pragma once

// Nonsplit paramodular group families K_2m, K_2m+1^flat, K_2m+1, K_2m+1^sharp
// with membership tests, coset systems, Hecke coset representatives and the
// Iwasawa-type cell decompositions, plus the split-case classical family.

#include <random>

#include "gsp4.hpp"

namespace skbessel {

enum class Flavor { Complete, Flat, Plain, Sharp };

inline const char* flavor_name(Flavor f) {
    switch (f) {
        case Flavor::Complete: return "complete";
        case Flavor::Flat: return "flat";
        case Flavor::Plain: return "plain";
        case Flavor::Sharp: return "sharp";
    }
    return "?";
}
inline Flavor flavor_from_name(const std::string& s) {
    if (s == "complete") return Flavor::Complete;
    if (s == "flat") return Flavor::Flat;
    if (s == "plain") return Flavor::Plain;
    if (s == "sharp") return Flavor::Sharp;
    throw std::invalid_argument("unknown flavor: " + s);
}

struct ParamodularSpec {
    const QuadExt* ctx = nullptr;
    long level_m = 0;
    Flavor flavor = Flavor::Complete;

    ParamodularSpec(const QuadExt& E, long m, Flavor f) : ctx(&E), level_m(m), flavor(f) {
        if (m < 0) throw std::invalid_argument("ParamodularSpec: level >= 0");
        if (E.is_split()) {
            if (f != Flavor::Complete)
                throw std::invalid_argument("ParamodularSpec: split family has complete flavor only");
            return;
        }
        if (f == Flavor::Flat && m < 1) throw std::invalid_argument("flat flavor requires m >= 1");
        if ((f == Flavor::Plain || f == Flavor::Sharp) && E.is_case_R() && m < 1)
            throw std::invalid_argument("plain/sharp flavors require m >= 1 in case R");
    }
};

// (dv^dvpow rho^shift R_mR)^H as a rank-3 lattice
inline Lattice2 hankel_lattice(const QuadExt& E, int dvpow, long shift, long mR) {
    if (mR < 0) throw std::invalid_argument("hankel_lattice: mR >= 0");
    QuadElem sc = QuadElem::rho(E).pow(shift).scale(E.fe(rat_pow(Rat(E.dv), dvpow)));
    SplitLattice s = split_form_Rm(E, mR);
    QuadElem a1 = sc * s.a1, a2 = sc * s.a2, b1 = sc * s.b1;
    long j = hankel_pi_exponent(E, b1);
    return Lattice2(E, {Mat2::from_quad(a1), Mat2::from_quad(a2),
                        Mat2::h(E).scale(E.fe(rat_pow(Rat(E.p()), j)))});
}

class ParamodularGroup {
    ParamodularSpec spec_;
    // nonsplit block lattices (diag blocks share lat_A)
    Lattice2 lat_A_, lat_B_, lat_C_;
    Lattice2 Y_, Ybar_;           // Hankel lattices of the unipotent radicals
    std::array<long, 16> vb_{};   // split: entrywise valuation bounds

    static Lattice2 scaled_Rm(const QuadExt& E, int dvpow, long shift, long mR) {
        Lattice2 L = build_Rm(E, mR);
        QuadElem sc = QuadElem::rho(E).pow(shift).scale(E.fe(rat_pow(Rat(E.dv), dvpow)));
        return L.scaled(sc);
    }

public:
    explicit ParamodularGroup(const ParamodularSpec& spec) : spec_(spec) {
        const QuadExt& E = *spec.ctx;
        long m = spec.level_m;
        if (E.is_split()) {
            long n = m;
            std::array<long, 16> vb{0, 0, 0, -n,  //
                                    n, 0, 0, 0,   //
                                    n, 0, 0, 0,   //
                                    n, n, n, 0};
            vb_ = vb;
            Rat pn = rat_pow(Rat(E.p()), n);
            // Hankel blocks allowed in the unipotent radicals of K(n)
            Y_ = Lattice2(E, {Mat2::identity(E), Mat2::from_rationals(E, 0, 0, 1, 0),
                              Mat2::h(E).scale(E.fe(Rat(1) / pn))});
            Ybar_ = Lattice2(E, {Mat2::identity(E).scale(E.fe(pn)),
                                 Mat2::from_rationals(E, 0, 0, 1, 0).scale(E.fe(pn)), Mat2::h(E)});
            return;
        }
        switch (spec.flavor) {
            case Flavor::Complete:
                lat_A_ = build_Rm(E, m);
                lat_C_ = scaled_Rm(E, 1, m, m);
                break;
            case Flavor::Flat:
                lat_A_ = build_Rm(E, m);
                lat_C_ = scaled_Rm(E, 1, m + 1, m - 1);
                break;
            case Flavor::Plain:
                lat_A_ = build_Rm(E, m);
                lat_C_ = scaled_Rm(E, 1, m + 1, m);
                break;
            case Flavor::Sharp:
                lat_A_ = build_Rm(E, m + 1);
                lat_C_ = scaled_Rm(E, 1, m + 1, m);
                break;
        }
        lat_B_ = scaled_Rm(E, -1, -m, m);
        Y_ = hankel_lattice(E, -1, -m, m);
        switch (spec.flavor) {
            case Flavor::Complete: Ybar_ = hankel_lattice(E, 1, m, m); break;
            case Flavor::Flat: Ybar_ = hankel_lattice(E, 1, m + 1, m - 1); break;
            case Flavor::Plain:
            case Flavor::Sharp: Ybar_ = hankel_lattice(E, 1, m + 1, m); break;
        }
    }

    const ParamodularSpec& spec() const { return spec_; }
    const QuadExt& ext() const { return *spec_.ctx; }
    const Lattice2& Y() const { return Y_; }
    const Lattice2& Ybar() const { return Ybar_; }
    const Lattice2& block_A() const { return lat_A_; }
    const Lattice2& block_B() const { return lat_B_; }
    const Lattice2& block_C() const { return lat_C_; }

    bool contains(const GSp4Elem& g) const {
        const QuadExt& E = *spec_.ctx;
        if (!g.mu.is_unit()) return false;
        if (E.is_split()) {
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    Tri t = g.g.at(i, j).val_at_least(vb_[4 * i + j]);
                    if (t == Tri::Unknown) throw precision_error("split membership undecidable");
                    if (t == Tri::No) return false;
                }
            return true;
        }
        return lat_A_.contains(g.g.block(0, 0)) && lat_A_.contains(g.g.block(1, 1)) &&
               lat_B_.contains(g.g.block(0, 1)) && lat_C_.contains(g.g.block(1, 0));
    }
};

// ---------------------------------------------------------------------------
// Random elements and generators, built from the Iwasawa-type cells.

inline Mat2 diag2(const QuadExt& E, const FieldElem& a, const FieldElem& b) {
    return Mat2(a, E.fzero(), E.fzero(), b);
}

struct GroupSampler {
    const ParamodularGroup* G;
    std::mt19937_64 rng;
    std::vector<GSp4Elem> extra_gens;

    GroupSampler(const ParamodularGroup& grp, unsigned long long seed) : G(&grp), rng(seed) {}

    FieldElem rand_unit() {
        const QuadExt& E = G->ext();
        std::uniform_int_distribution<long long> d(1, E.ctx.pow(3) - 1);
        for (;;) {
            long long v = d(rng);
            if (v % E.p() != 0) return E.fe(Rat(v));
        }
    }
    QuadElem rand_unit_O() {
        const QuadExt& E = G->ext();
        std::uniform_int_distribution<long long> d(0, E.ctx.pow(3) - 1);
        for (;;) {
            QuadElem z = QuadElem::from_rationals(E, Rat(d(rng)), 0) +
                         QuadElem::omega(E).scale(E.fe(Rat(d(rng))));
            if (z.is_unit_O()) return z;
        }
    }
    Mat2 rand_hankel(const Lattice2& L, int depth) {
        const QuadExt& E = G->ext();
        std::uniform_int_distribution<long long> d(0, E.ctx.pow(depth) - 1);
        Mat2 y = Mat2::zero(E);
        for (const auto& b : L.basis()) y = y + b.scale(E.fe(Rat(d(rng))));
        return y;
    }

    GSp4Elem cell_element(bool allow_weyl) {
        const QuadExt& E = G->ext();
        long m = G->spec().level_m;
        int depth = (int)m + 2;
        GSp4Elem n = upper_unipotent(E, rand_hankel(G->Y(), depth));
        GSp4Elem nb = lower_unipotent(E, rand_hankel(G->Ybar(), depth));
        GSp4Elem a = E.is_split()
                         ? gsp4_mul(E, levi_elem(E, diag2(E, rand_unit(), rand_unit())),
                                    hat_scalar(E, rand_unit()))
                         : gsp4_mul(E, embed_torus(E, rand_unit_O()), hat_scalar(E, rand_unit()));
        GSp4Elem g = gsp4_mul(E, n, gsp4_mul(E, a, nb));
        if (allow_weyl && G->spec().flavor == Flavor::Complete && (rng() & 1)) {
            GSp4Elem w = E.is_split() ? weyl_split(E, m) : weyl(E, m);
            g = gsp4_mul(E, w, g);
        }
        return g;
    }

    // product of cell elements and occasional generators: mixes the cells
    GSp4Elem element(int factors = 2) {
        GSp4Elem g = cell_element(true);
        for (int i = 1; i < factors; ++i) g = gsp4_mul(G->ext(), g, cell_element(true));
        if (!extra_gens.empty()) {
            std::uniform_int_distribution<size_t> pick(0, extra_gens.size() - 1);
            g = gsp4_mul(G->ext(), g, extra_gens[pick(rng)]);
        }
        return g;
    }
};

// small generating set (as far as the cell decomposition reaches) of the group
inline std::vector<GSp4Elem> group_generators(const ParamodularGroup& G) {
    const QuadExt& E = G.ext();
    long m = G.spec().level_m;
    std::vector<GSp4Elem> gens;
    for (const auto& b : G.Y().basis())
        for (long long d = 1; d < E.p(); ++d)
            gens.push_back(upper_unipotent(E, b.scale(E.fe(Rat(d)))));
    for (const auto& b : G.Ybar().basis())
        for (long long d = 1; d < E.p(); ++d)
            gens.push_back(lower_unipotent(E, b.scale(E.fe(Rat(d)))));
    if (E.is_split()) {
        for (long long u = 1; u < E.p(); ++u) {
            gens.push_back(hat_scalar(E, E.fe(Rat(u))));
            gens.push_back(levi_elem(E, diag2(E, E.fe(Rat(u)), E.fe(1))));
            gens.push_back(levi_elem(E, diag2(E, E.fe(1), E.fe(Rat(u)))));
        }
        gens.push_back(hat_scalar(E, E.fe(Rat(1 + E.p()))));
        // GL2-Levi unipotents within the level bounds
        Mat2 e12 = Mat2::from_rationals(E, 0, 1, 0, 0);
        Mat2 e21 = Mat2::from_rationals(E, 0, 0, rat_pow(Rat(E.p()), m), 0);
        for (long long d = 1; d < E.p(); ++d) {
            gens.push_back(levi_elem(E, Mat2::identity(E) + e12.scale(E.fe(Rat(d)))));
            gens.push_back(levi_elem(E, Mat2::identity(E) + e21.scale(E.fe(Rat(d)))));
        }
        gens.push_back(weyl_split(E, m));
        return gens;
    }
    for (const auto& t : residue_reps(E, 2))
        if (t.is_unit_O()) gens.push_back(embed_torus(E, t));
    for (long long u = 1; u < E.p(); ++u) gens.push_back(hat_scalar(E, E.fe(Rat(u))));
    gens.push_back(hat_scalar(E, E.fe(Rat(1 + E.p()))));
    // Levi units along the h-directions of R_m
    {
        long mA = G.spec().flavor == Flavor::Sharp ? m + 1 : m;
        QuadElem rm = QuadElem::rho(E).pow(mA);
        FieldElem dv = E.fe(Rat(E.dv));
        Mat2 one = Mat2::identity(E), hm = Mat2::h(E);
        std::vector<Mat2> dirs{hm, Mat2::from_quad(QuadElem::omega(E)) * hm};
        for (const auto& dir : dirs)
            for (long long d = 1; d < E.p(); ++d) {
                Mat2 h = one + (Mat2::from_quad(rm).scale(dv) * dir).scale(E.fe(Rat(d)));
                GSp4Elem cand = levi_elem(E, h);
                try {
                    if (G.contains(cand)) gens.push_back(cand);
                } catch (const precision_error&) {
                }
            }
    }
    if (G.spec().flavor == Flavor::Complete) gens.push_back(weyl(E, m));
    return gens;
}

// ---------------------------------------------------------------------------
// Coset system driving the Hecke idempotent e_m: representatives of
// K_2(m+1) / (K_2(m+1) cap K_2m+1^sharp), of size q^f + 1.

struct CosetFamily {
    std::vector<GSp4Elem> reps;
    ParamodularSpec parent;
    std::string sub_tag;
};

inline CosetFamily coset_reps_em(const QuadExt& E, long m) {
    std::vector<GSp4Elem> reps;
    if (E.is_split()) {
        reps.push_back(weyl_split(E, m + 1));
        Rat sc = rat_pow(Rat(E.p()), -(m + 1));
        for (long long x = 0; x < E.p(); ++x)
            reps.push_back(upper_unipotent(E, Mat2::h(E).scale(E.fe(Rat(x) * sc))));
        return CosetFamily{std::move(reps), ParamodularSpec(E, m + 1, Flavor::Complete),
                           "K(m+1) cap K(m)"};
    }
    reps.push_back(weyl(E, m + 1));
    // translations along the corner where the intersection is q^f smaller:
    // x dv^-1 rho^-(m+1) over residue-field representatives x
    QuadElem rinv = QuadElem::rho(E).pow(-(m + 1)).scale(E.fe(Rat(1, E.dv)));
    for (const auto& x : residue_reps(E, 1))
        reps.push_back(upper_unipotent(E, Mat2::from_quad(x * rinv)));
    return CosetFamily{std::move(reps), ParamodularSpec(E, m + 1, Flavor::Complete),
                       "K_2m+2 cap K_2m+1^sharp"};
}

// the subgroup intersected against in coset_reps_em
struct EmSubgroup {
    ParamodularGroup parent;
    ParamodularGroup partner;

    EmSubgroup(const QuadExt& E, long m)
        : parent(ParamodularSpec(E, m + 1, Flavor::Complete)),
          partner(E.is_split() ? ParamodularSpec(E, m, Flavor::Complete)
                               : ParamodularSpec(E, m, Flavor::Sharp)) {}

    bool contains(const GSp4Elem& g) const { return parent.contains(g) && partner.contains(g); }
};

struct CosetVerification {
    size_t expected = 0;
    size_t bfs_count = 0;
    bool reps_in_parent = false;
    bool pairwise_distinct = false;
    bool bfs_matches = false;
    size_t samples_assigned = 0;
    size_t samples_total = 0;

    bool pass() const {
        return reps_in_parent && pairwise_distinct && bfs_matches && bfs_count == expected &&
               samples_assigned == samples_total;
    }
};

// Exhaustive partition check over the residue model: BFS over the coset space
// from a generating family, matched one-to-one against the candidate
// representatives, then random sampling assigns products of cell elements to
// exactly one representative each.
inline CosetVerification verify_coset_family(const QuadExt& E, long m, const CosetFamily& fam,
                                             size_t nsamples = 300,
                                             unsigned long long seed = 0x5eed) {
    EmSubgroup H(E, m);
    CosetVerification out;
    out.expected = fam.reps.size();
    out.samples_total = nsamples;

    out.reps_in_parent = true;
    for (const auto& r : fam.reps)
        if (!H.parent.contains(r)) out.reps_in_parent = false;

    auto same_coset = [&](const GSp4Elem& a, const GSp4Elem& b) {
        return H.contains(gsp4_mul(E, a.inverse(E), b));
    };

    out.pairwise_distinct = true;
    for (size_t i = 0; i < fam.reps.size(); ++i)
        for (size_t j = i + 1; j < fam.reps.size(); ++j)
            if (same_coset(fam.reps[i], fam.reps[j])) out.pairwise_distinct = false;

    std::function<GSp4Elem(const GSp4Elem&, const GSp4Elem&)> mul =
        [&](const GSp4Elem& a, const GSp4Elem& b) { return gsp4_mul(E, a, b); };
    std::function<bool(const GSp4Elem&, const GSp4Elem&)> same =
        [&](const GSp4Elem& a, const GSp4Elem& b) { return same_coset(a, b); };
    auto bfs = coset_bfs<GSp4Elem>(gsp4_identity(E), group_generators(H.parent), mul, same,
                                   4 * fam.reps.size() + 8);
    out.bfs_count = bfs.size();
    out.bfs_matches = true;
    for (const auto& c : bfs) {
        size_t hits = 0;
        for (const auto& r : fam.reps)
            if (same_coset(r, c)) ++hits;
        if (hits != 1) out.bfs_matches = false;
    }

    GroupSampler sampler(H.parent, seed);
    sampler.extra_gens = group_generators(H.parent);
    for (size_t s = 0; s < nsamples; ++s) {
        GSp4Elem k = sampler.element(2);
        size_t hits = 0;
        for (const auto& r : fam.reps)
            if (same_coset(r, k)) ++hits;
        if (hits == 1) ++out.samples_assigned;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hecke double-coset representatives.

// groups excluded from the structural minus-direction claims
inline bool hecke_excluded(const ParamodularSpec& s) {
    const QuadExt& E = *s.ctx;
    if (E.is_split()) return true;
    if (E.is_case_U()) {
        if (s.flavor == Flavor::Complete && s.level_m == 0) return true;
        if (s.flavor == Flavor::Plain && s.level_m == 0) return true;
        if (E.kase == ECase::U_ii && s.flavor == Flavor::Sharp && s.level_m == 0) return true;
        return false;
    }
    // case R: K_0, K_2, K_3^flat, K_3
    if (s.flavor == Flavor::Complete && s.level_m <= 1) return true;
    if (s.flavor == Flavor::Flat && s.level_m == 1) return true;
    if (s.flavor == Flavor::Plain && s.level_m == 1) return true;
    return false;
}

inline std::vector<Mat2> lattice_quotient_reps(const QuadExt& E, const Lattice2& big,
                                               const Lattice2& small, long long limit = 4096) {
    // digit enumeration over big's basis mod p, filtered to distinct classes mod small
    std::vector<Mat2> reps{Mat2::zero(E)};
    for (const auto& b : big.basis()) {
        std::vector<Mat2> next;
        for (const auto& r : reps)
            for (long long d = 0; d < E.p(); ++d) {
                next.push_back(r + b.scale(E.fe(Rat(d))));
                if ((long long)next.size() > limit)
                    throw std::length_error("lattice_quotient_reps: bound exceeded");
            }
        reps = std::move(next);
    }
    std::vector<Mat2> out;
    for (const auto& r : reps) {
        bool fresh = true;
        for (const auto& o : out)
            if (small.contains(r - o)) {
                fresh = false;
                break;
            }
        if (fresh) out.push_back(r);
    }
    return out;
}

enum class HeckeDirection { Plus, Minus };

inline CosetFamily hecke_coset_reps(const ParamodularGroup& G, HeckeDirection dir) {
    const QuadExt& E = G.ext();
    std::vector<GSp4Elem> reps;
    if (dir == HeckeDirection::Plus) {
        Lattice2 scaled = G.Y().scaled_rat(Rat(E.p()));
        for (const auto& y : lattice_quotient_reps(E, G.Y(), scaled))
            reps.push_back(upper_unipotent(E, y));
        return CosetFamily{std::move(reps), G.spec(), "N_K<hat pi>/N_K"};
    }
    if (hecke_excluded(G.spec()))
        throw std::domain_error("hecke_coset_reps: structural claim excluded for this group");
    if (G.spec().flavor == Flavor::Complete) {
        // Nbar_{K_2m-1} / Nbar_K
        ParamodularGroup prev(ParamodularSpec(E, G.spec().level_m - 1, Flavor::Plain));
        for (const auto& y : lattice_quotient_reps(E, prev.Ybar(), G.Ybar()))
            reps.push_back(lower_unipotent(E, y));
        return CosetFamily{std::move(reps), G.spec(), "Nbar_K_2m-1/Nbar_K"};
    }
    Lattice2 scaled = G.Ybar().scaled_rat(Rat(E.p()));
    for (const auto& y : lattice_quotient_reps(E, G.Ybar(), scaled))
        reps.push_back(lower_unipotent(E, y));
    return CosetFamily{std::move(reps), G.spec(), "Nbar_K<hat pi^-1>/Nbar_K"};
}

// ---------------------------------------------------------------------------
// Cell decomposition (Iwasawa-type): K = N A Nbar or N A Nbar cup w N A Nbar.

struct Factorization {
    bool ok = false;
    bool used_weyl = false;
    Mat2 y_upper, y_lower;  // Hankel parameters of the unipotent factors
    std::string reason;
};

inline bool decomposition_in_range(const ParamodularSpec& s) {
    const QuadExt& E = *s.ctx;
    if (E.is_split()) return false;  // handled by the split consistency tests only
    if (s.flavor == Flavor::Complete) {
        if (E.kase == ECase::U_ii) return s.level_m >= 0;
        if (E.kase == ECase::U_i) return s.level_m >= 1;
        return s.level_m >= 2;
    }
    // noncomplete: all but K_3^flat in case R
    if (s.flavor == Flavor::Flat && E.is_case_R() && s.level_m == 1) return false;
    return true;
}

inline Factorization factor_element(const ParamodularGroup& G, const GSp4Elem& g) {
    const QuadExt& E = G.ext();
    Factorization out;

    auto try_cell = [&](const GSp4Elem& x, bool weyl_cell) -> bool {
        Mat2 A = x.g.block(0, 0), B = x.g.block(0, 1), C = x.g.block(1, 0), D = x.g.block(1, 1);
        FieldElem det = D.det();
        if (det.is_zeroish()) return false;
        Mat2 Dinv = D.inverse();
        Mat2 y = B * Dinv, ybar = Dinv * C;
        try {
            if (!G.Y().contains(y) || !G.Ybar().contains(ybar)) return false;
            Mat4 mid(E);
            mid.set_block(0, 0, A - y * C);
            mid.set_block(1, 1, D);
            GSp4Elem a = make_gsp4(E, mid);
            if (!G.contains(a)) return false;
        } catch (const precision_error&) {
            return false;
        } catch (const std::domain_error&) {
            return false;
        }
        out.ok = true;
        out.used_weyl = weyl_cell;
        out.y_upper = y;
        out.y_lower = ybar;
        return true;
    };

    if (try_cell(g, false)) return out;
    if (G.spec().flavor == Flavor::Complete) {
        GSp4Elem w = weyl(E, G.spec().level_m);
        if (try_cell(gsp4_mul(E, w.inverse(E), g), true)) return out;
    }
    out.reason = "element resists factorization";
    return out;
}

struct DecompositionReport {
    size_t samples = 0;
    size_t factored = 0;
    size_t weyl_cell = 0;
    bool pass() const { return factored == samples; }
};

inline DecompositionReport verify_decomposition(const ParamodularGroup& G, size_t samples,
                                                unsigned long long seed = 0xdecade) {
    if (!decomposition_in_range(G.spec()))
        throw std::domain_error("verify_decomposition: level below the stated range (unsupported)");
    DecompositionReport rep;
    rep.samples = samples;
    GroupSampler sampler(G, seed);
    sampler.extra_gens = group_generators(G);
    for (size_t i = 0; i < samples; ++i) {
        GSp4Elem g = sampler.element(2);
        Factorization f = factor_element(G, g);
        if (f.ok) {
            ++rep.factored;
            if (f.used_weyl) ++rep.weyl_cell;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// CLI-facing verification bundle.

struct GroupVerifyReport {
    bool closure_pass = false;
    int decomposition_state = -1;  // 1 pass, 0 fail, -1 unsupported
    size_t coset_count = 0;
    bool coset_pass = false;
};

inline GroupVerifyReport group_verify(const QuadExt& E, long m, Flavor f, size_t nclosure = 200,
                                      unsigned long long seed = 99991) {
    ParamodularGroup G(ParamodularSpec(E, m, f));
    GroupVerifyReport out;
    GroupSampler sampler(G, seed);
    sampler.extra_gens = group_generators(G);
    out.closure_pass = true;
    for (size_t i = 0; i < nclosure; ++i) {
        GSp4Elem a = sampler.element(2), b = sampler.element(2);
        if (!G.contains(gsp4_mul(E, a, b)) || !G.contains(a.inverse(E))) out.closure_pass = false;
    }
    if (decomposition_in_range(G.spec())) {
        DecompositionReport dr = verify_decomposition(G, nclosure, seed + 1);
        out.decomposition_state = dr.pass() ? 1 : 0;
    }
    if (f == Flavor::Complete && m >= 1) {
        CosetFamily fam = coset_reps_em(E, m - 1);
        CosetVerification cv = verify_coset_family(E, m - 1, fam, 60, seed + 2);
        out.coset_count = cv.bfs_count;
        out.coset_pass = cv.pass();
    }
    return out;
}

}  // namespace skbessel
