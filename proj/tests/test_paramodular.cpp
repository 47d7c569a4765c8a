#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "skbessel/paramodular.hpp"

using namespace skbessel;

namespace {
QuadExt ui() { return classify(3, EDescriptor::NonsquareUnit, 16); }
QuadExt ri() { return classify(3, EDescriptor::Uniformizer, 16); }
QuadExt sp(long long p = 3) { return classify(p, EDescriptor::Split, 16); }

QuadElem rand_quad(const QuadExt& E, std::mt19937& rng, int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> d(lo, hi);
    return QuadElem::from_rationals(E, d(rng), d(rng));
}
}  // namespace

TEST_CASE("gsp4 basics and the defining form") {
    QuadExt E = ui();
    GSp4Elem id = gsp4_identity(E);
    CHECK(make_gsp4(E, id.g).mu == E.fe(1));
    GSp4Elem al = atkin_lehner(E);
    CHECK(al.mu == E.fe(1));
    CHECK(al.g.at(0, 0) == E.fe(1));
    CHECK(al.g.at(1, 1) == E.fe(-1));
    GSp4Elem w1 = hat_wpi(E, 1);
    CHECK(w1.g.at(0, 0) == E.fe(3));
    CHECK(w1.g.at(1, 1) == E.fe(3));
    CHECK(w1.g.at(2, 2) == E.fe(1));
    CHECK(w1.mu == E.fe(3));
    // inverse through the symplectic shortcut
    std::mt19937 rng(4242);
    for (int t = 0; t < 20; ++t) {
        QuadElem a = rand_quad(E, rng);
        if (!a.is_unit_O()) continue;
        GSp4Elem g = gsp4_mul(E, embed_torus(E, a), upper_unipotent(E, Mat2::h(E)));
        GSp4Elem gi = g.inverse(E);
        CHECK(gsp4_mul(E, g, gi).g == Mat4::identity(E));
    }
}

TEST_CASE("gamma embedding") {
    QuadExt E = ui();
    QuadElem zero = QuadElem::zero(E), one = QuadElem::one(E);
    GSp4Elem id = embed_gamma(E, one, zero, zero, one);
    CHECK(id.g == Mat4::identity(E));

    std::mt19937 rng(7);
    for (int t = 0; t < 30; ++t) {
        QuadElem a = rand_quad(E, rng);
        if (a.norm().is_zeroish()) continue;
        GSp4Elem tor = embed_torus(E, a);
        CHECK(tor.mu == a.norm());
    }

    // Atkin-Lehner conjugation acts as the Galois involution entrywise
    GSp4Elem al = atkin_lehner(E);
    for (int t = 0; t < 25; ++t) {
        QuadElem x = rand_quad(E, rng), y = rand_quad(E, rng), z = rand_quad(E, rng);
        // build an invertible gamma element [[x, y],[z, w]] with F-rational det:
        // take w = (1 + y z)/x when x is invertible
        if (x.norm().is_zeroish()) continue;
        QuadElem w = (QuadElem::one(E) + y * z) * x.inverse();
        QuadElem det = x * w - y * z;
        if (!det.y().is_zeroish() || det.x().is_zeroish()) continue;
        GSp4Elem g = embed_gamma(E, x, y, z, w);
        GSp4Elem conj = gsp4_mul(E, al, gsp4_mul(E, g, al.inverse(E)));
        GSp4Elem gc = embed_gamma(E, x.conj(), y.conj(), z.conj(), w.conj());
        CHECK(conj.g == gc.g);
    }

    // split checkerboard embedding
    QuadExt S = sp();
    Mat2 g1 = Mat2::from_rationals(S, 1, 2, 0, 1), g2 = Mat2::from_rationals(S, 1, 0, 2, 1);
    GSp4Elem gs = embed_gamma_split(S, g1, g2);
    CHECK(gs.g.at(0, 0) == S.fe(1));
    CHECK(gs.g.at(0, 3) == S.fe(2));
    CHECK(gs.g.at(2, 1) == S.fe(2));
    CHECK(gs.mu == S.fe(1));
    CHECK_THROWS(embed_gamma_split(S, g1, Mat2::from_rationals(S, 2, 0, 0, 1)));
}

TEST_CASE("special elements land in their groups") {
    QuadExt E = ui();
    for (long m = 0; m <= 2; ++m) {
        ParamodularGroup K(ParamodularSpec(E, m, Flavor::Complete));
        CHECK(K.contains(weyl(E, m)));
    }
    // iota lies in the principal-level-0 groups (it only normalizes the rest)
    CHECK(ParamodularGroup(ParamodularSpec(E, 0, Flavor::Complete)).contains(atkin_lehner(E)));
    CHECK(ParamodularGroup(ParamodularSpec(E, 0, Flavor::Plain)).contains(atkin_lehner(E)));
    CHECK(!ParamodularGroup(ParamodularSpec(E, 1, Flavor::Complete)).contains(atkin_lehner(E)));
    // weyl(0) in case U-i: plain antidiagonal two-by-two blocks
    GSp4Elem w0 = weyl(E, 0);
    CHECK(w0.g.block(0, 0) == Mat2::zero(E));
    CHECK(w0.g.block(0, 1) == Mat2::identity(E).negated());
    CHECK(w0.g.block(1, 0) == Mat2::identity(E));
    CHECK(w0.mu == E.fe(1));

    QuadExt R = ri();
    ParamodularGroup K2(ParamodularSpec(R, 1, Flavor::Complete));
    ParamodularGroup K3f(ParamodularSpec(R, 1, Flavor::Flat));
    CHECK(K2.contains(s_p(R)));
    CHECK(K3f.contains(s_p(R)));
    CHECK_THROWS(s_p(E));
    CHECK_THROWS(u_alpha(R));
    QuadExt rii = classify(2, EDescriptor::NonsquareUnit, 16);
    CHECK(u_alpha(rii).mu == rii.fe(1));
}

TEST_CASE("K1 coincides with the Hecke subgroup in case U-i") {
    QuadExt E = ui();
    ParamodularGroup K1(ParamodularSpec(E, 0, Flavor::Plain));
    GroupSampler sampler(K1, 314159);
    sampler.extra_gens = group_generators(K1);
    auto hecke_desc = [&](const GSp4Elem& g) {
        if (!g.mu.is_unit()) return false;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                long bound = (i >= 2 && j <= 1) ? 1 : 0;
                if (g.g.at(i, j).val_at_least(bound) != Tri::Yes) return false;
            }
        return true;
    };
    for (int t = 0; t < 200; ++t) {
        GSp4Elem g = sampler.element(2);
        CHECK(K1.contains(g));
        CHECK(hecke_desc(g));
    }
    // and elements violating the corner bound are excluded both ways
    GSp4Elem low = lower_unipotent(E, Mat2::h(E));
    CHECK(!K1.contains(low));
    CHECK(!hecke_desc(low));
}

TEST_CASE("group closure and inverses by sampling") {
    for (auto Ecase : {ui(), ri()}) {
        for (Flavor f : {Flavor::Complete, Flavor::Flat, Flavor::Plain, Flavor::Sharp}) {
            long m = 1;
            ParamodularGroup K(ParamodularSpec(Ecase, m, f));
            GroupSampler sampler(K, 271828);
            sampler.extra_gens = group_generators(K);
            for (int t = 0; t < 60; ++t) {
                GSp4Elem a = sampler.element(2), b = sampler.element(2);
                CHECK(K.contains(gsp4_mul(Ecase, a, b)));
                CHECK(K.contains(a.inverse(Ecase)));
            }
        }
    }
}

TEST_CASE("group inclusions along the refinement") {
    // invariant subspaces grow along K_2m > K^flat > K > K^sharp, so the
    // groups themselves shrink
    for (auto Ecase : {ui(), ri()}) {
        long m = 1;
        ParamodularGroup Kc(ParamodularSpec(Ecase, m, Flavor::Complete));
        ParamodularGroup Kf(ParamodularSpec(Ecase, m, Flavor::Flat));
        ParamodularGroup Kp(ParamodularSpec(Ecase, m, Flavor::Plain));
        ParamodularGroup Ks(ParamodularSpec(Ecase, m, Flavor::Sharp));
        GroupSampler sampler(Ks, 1618);
        sampler.extra_gens = group_generators(Ks);
        for (int t = 0; t < 50; ++t) {
            GSp4Elem g = sampler.element(2);
            CHECK(Ks.contains(g));
            CHECK(Kp.contains(g));
            CHECK(Kf.contains(g));
            CHECK(Kc.contains(g));
        }
        GroupSampler sp2(Kp, 1618033);
        sp2.extra_gens = group_generators(Kp);
        for (int t = 0; t < 50; ++t) {
            GSp4Elem g = sp2.element(2);
            CHECK(Kf.contains(g));
            CHECK(Kc.contains(g));
        }
    }
}

TEST_CASE("normalizer facts") {
    QuadExt E = ui();
    for (Flavor f : {Flavor::Plain, Flavor::Sharp}) {
        long m = 1;
        ParamodularGroup K(ParamodularSpec(E, m, f));
        GSp4Elem wp = weyl_prime(E, m);
        GSp4Elem wpi = wp.inverse(E);
        GroupSampler sampler(K, 5551);
        sampler.extra_gens = group_generators(K);
        for (int t = 0; t < 40; ++t) {
            GSp4Elem k = sampler.element(2);
            CHECK(K.contains(gsp4_mul(E, wp, gsp4_mul(E, k, wpi))));
        }
    }
    // iota and torus elements normalize every flavor
    for (auto Ecase : {ui(), ri()}) {
        std::mt19937 rng(11);
        for (Flavor f : {Flavor::Complete, Flavor::Flat, Flavor::Plain, Flavor::Sharp}) {
            ParamodularGroup K(ParamodularSpec(Ecase, 1, f));
            GSp4Elem al = atkin_lehner(Ecase), ali = al.inverse(Ecase);
            GroupSampler sampler(K, 777);
            sampler.extra_gens = group_generators(K);
            for (int t = 0; t < 25; ++t) {
                GSp4Elem k = sampler.element(2);
                CHECK(K.contains(gsp4_mul(Ecase, al, gsp4_mul(Ecase, k, ali))));
                QuadElem u = rand_quad(Ecase, rng);
                if (!u.is_unit_O()) continue;
                GSp4Elem tor = embed_torus(Ecase, u), tori = tor.inverse(Ecase);
                CHECK(K.contains(gsp4_mul(Ecase, tor, gsp4_mul(Ecase, k, tori))));
            }
        }
    }
}

TEST_CASE("coset representatives for the idempotent") {
    {
        QuadExt E = ui();
        CosetFamily fam = coset_reps_em(E, 1);
        CHECK(fam.reps.size() == 10);  // q^f + 1 = 10
        CosetVerification v = verify_coset_family(E, 1, fam, 40);
        INFO("bfs=" << v.bfs_count << " assigned=" << v.samples_assigned << "/" << v.samples_total);
        CHECK(v.pass());
    }
    {
        QuadExt E = ri();
        CosetFamily fam = coset_reps_em(E, 1);
        CHECK(fam.reps.size() == 4);  // q + 1
        CosetVerification v = verify_coset_family(E, 1, fam, 40);
        CHECK(v.pass());
    }
    {
        QuadExt E = sp();
        CosetFamily fam = coset_reps_em(E, 1);
        CHECK(fam.reps.size() == 4);
        CosetVerification v = verify_coset_family(E, 1, fam, 40);
        CHECK(v.pass());
    }
}

TEST_CASE("hecke coset representatives") {
    QuadExt E = ui();
    // K_1^sharp, minus direction: 27 representatives at p = 3
    ParamodularGroup K1s(ParamodularSpec(E, 0, Flavor::Sharp));
    CosetFamily fam = hecke_coset_reps(K1s, HeckeDirection::Minus);
    CHECK(fam.reps.size() == 27);
    // pairwise distinct modulo Nbar conjugated down
    Lattice2 small = K1s.Ybar().scaled_rat(Rat(3));
    for (size_t i = 0; i < fam.reps.size(); ++i)
        for (size_t j = i + 1; j < fam.reps.size(); ++j) {
            Mat2 d = fam.reps[i].g.block(1, 0) - fam.reps[j].g.block(1, 0);
            CHECK(!small.contains(d));
        }

    // plus direction: q^3 representatives for any admissible spec
    CosetFamily plus = hecke_coset_reps(K1s, HeckeDirection::Plus);
    CHECK(plus.reps.size() == 27);

    QuadExt R = ri();
    ParamodularGroup K3s(ParamodularSpec(R, 1, Flavor::Sharp));
    CHECK(hecke_coset_reps(K3s, HeckeDirection::Minus).reps.size() == 27);
    CHECK(hecke_coset_reps(K3s, HeckeDirection::Plus).reps.size() == 27);

    // excluded small-level groups refuse the structural minus-direction query
    ParamodularGroup K0(ParamodularSpec(E, 0, Flavor::Complete));
    CHECK_THROWS_AS(hecke_coset_reps(K0, HeckeDirection::Minus), std::domain_error);
    ParamodularGroup K2(ParamodularSpec(R, 1, Flavor::Complete));
    CHECK_THROWS_AS(hecke_coset_reps(K2, HeckeDirection::Minus), std::domain_error);

    // complete-group minus direction at admissible level: size q
    ParamodularGroup K4(ParamodularSpec(E, 2, Flavor::Complete));
    CHECK(hecke_coset_reps(K4, HeckeDirection::Minus).reps.size() == 3);
}

TEST_CASE("cell decomposition") {
    QuadExt E = ui();
    ParamodularGroup K2(ParamodularSpec(E, 1, Flavor::Complete));
    // identity factors trivially
    Factorization f0 = factor_element(K2, gsp4_identity(E));
    CHECK(f0.ok);
    CHECK(!f0.used_weyl);

    DecompositionReport rep = verify_decomposition(K2, 300);
    CHECK(rep.pass());
    CHECK(rep.weyl_cell > 0);  // both cells occur

    // flat flavor: single-cell decomposition, no Weyl coset
    ParamodularGroup Kf(ParamodularSpec(E, 1, Flavor::Flat));
    DecompositionReport repf = verify_decomposition(Kf, 300);
    CHECK(repf.pass());
    CHECK(repf.weyl_cell == 0);

    // below-range complete specs are unsupported rather than failing
    QuadExt R = ri();
    ParamodularGroup K2r(ParamodularSpec(R, 1, Flavor::Complete));
    CHECK_THROWS_AS(verify_decomposition(K2r, 10), std::domain_error);
    ParamodularGroup K4r(ParamodularSpec(R, 2, Flavor::Complete));
    DecompositionReport repr = verify_decomposition(K4r, 200);
    CHECK(repr.pass());
}
