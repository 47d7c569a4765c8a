#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "skbessel/orders.hpp"

using namespace skbessel;

namespace {

Mat2 rand_mat(const QuadExt& E, std::mt19937& rng, int lo = -20, int hi = 20) {
    std::uniform_int_distribution<int> d(lo, hi);
    return Mat2::from_rationals(E, d(rng), d(rng), d(rng), d(rng));
}

bool entrywise_integral(const Mat2& m) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (m.at(i, j).val_at_least(0) != Tri::Yes) return false;
    return true;
}

std::vector<Mat2> unit_group_generators(const QuadExt& E, long m) {
    Lattice2 Rm = build_Rm(E, m);
    std::vector<Mat2> cand;
    for (const auto& t : residue_reps(E, 2))
        if (t.is_unit_O()) cand.push_back(Mat2::from_quad(t));
    QuadElem rho_m = QuadElem::rho(E).pow(m);
    FieldElem dv = E.fe(Rat(E.dv));
    Mat2 one = Mat2::identity(E), hm = Mat2::h(E);
    std::vector<Mat2> dirs{hm, Mat2::from_quad(QuadElem::omega(E)) * hm};
    for (const auto& dir : dirs)
        for (long long d = 1; d < E.p(); ++d)
            cand.push_back(one + (Mat2::from_quad(rho_m).scale(dv) * dir).scale(E.fe(Rat(d))));
    if (m == 0 && E.kase == ECase::U_i) {
        // lower unipotents of R_0 = M_2(o)
        Mat2 low = Mat2::from_rationals(E, 0, 0, 1, 0);
        for (long long d = 1; d < E.p(); ++d) cand.push_back(one + low.scale(E.fe(Rat(d))));
    }
    std::vector<Mat2> gens;
    for (const auto& g : cand)
        if (is_unit_of_order(Rm, g)) gens.push_back(g);
    return gens;
}

size_t unit_quotient_size_bfs(const QuadExt& E, long m) {
    Lattice2 Rnext = build_Rm(E, m + 1);
    std::function<Mat2(const Mat2&, const Mat2&)> mul = [](const Mat2& a, const Mat2& b) {
        return a * b;
    };
    std::function<bool(const Mat2&, const Mat2&)> same = [&](const Mat2& a, const Mat2& b) {
        return is_unit_of_order(Rnext, a.inverse() * b);
    };
    std::function<Mat2(const Mat2&)> canon = [&](const Mat2& x) {
        return reduce_mat_mod(E, x, (int)m + 4);
    };
    auto reps =
        coset_bfs<Mat2>(Mat2::identity(E), unit_group_generators(E, m), mul, same, 512, canon);
    return reps.size();
}

}  // namespace

TEST_CASE("R equals M_2(o) outside case U-ii") {
    std::mt19937 rng(1001);
    for (EDescriptor d : {EDescriptor::NonsquareUnit, EDescriptor::Uniformizer}) {
        QuadExt E = classify(3, d);
        Lattice2 R = build_R(E);
        for (int t = 0; t < 60; ++t) {
            Mat2 m = rand_mat(E, rng);
            CHECK(R.contains(m) == entrywise_integral(m));
        }
        Mat2 third = Mat2::from_rationals(E, Rat(1, 3), 0, 0, 0);
        CHECK(!R.contains(third));
    }
    // U-ii: R is strictly smaller than M_2(o): h is not in R
    QuadExt uii = classify(2, EDescriptor::UnitWith2adicCondition);
    CHECK(!build_R(uii).contains(Mat2::h(uii)));
    CHECK(build_R(uii).contains(Mat2::h(uii).scale(uii.fe(2))));
}

TEST_CASE("R_m shapes") {
    QuadExt ri = classify(3, EDescriptor::Uniformizer);
    Lattice2 Rrho = build_Rrho(ri);  // = R_1 in case R
    std::mt19937 rng(77);
    // explicit picture [[o, p],[o, o]]
    for (int t = 0; t < 80; ++t) {
        Mat2 m = rand_mat(ri, rng);
        bool expect = m.at(0, 0).val_at_least(0) == Tri::Yes &&
                      m.at(0, 1).val_at_least(1) == Tri::Yes &&
                      m.at(1, 0).val_at_least(0) == Tri::Yes &&
                      m.at(1, 1).val_at_least(0) == Tri::Yes;
        CHECK(Rrho.contains(m) == expect);
    }
    Mat2 pu = Mat2::from_rationals(ri, 0, 3, 0, 0);
    CHECK(Rrho.contains(pu));
    CHECK(!Rrho.contains(Mat2::h(ri)));

    // build_Rm(ctx, 0) == R in every case
    for (EDescriptor d : {EDescriptor::NonsquareUnit, EDescriptor::Uniformizer}) {
        QuadExt E = classify(3, d);
        Lattice2 R0 = build_Rm(E, 0), R = build_R(E);
        for (int t = 0; t < 40; ++t) {
            Mat2 m = rand_mat(E, rng);
            CHECK(R0.contains(m) == R.contains(m));
        }
    }
}

TEST_CASE("order closure and torus normalization") {
    for (EDescriptor d : {EDescriptor::NonsquareUnit, EDescriptor::Uniformizer}) {
        QuadExt E = classify(3, d);
        for (long m = 0; m <= 3; ++m) {
            Lattice2 Rm = build_Rm(E, m);
            for (const auto& a : Rm.basis())
                for (const auto& b : Rm.basis()) CHECK(Rm.contains(a * b));
            CHECK(Rm.contains(Mat2::identity(E)));
            // any unit of O normalizes R_m
            for (const auto& t : residue_reps(E, 2)) {
                if (!t.is_unit_O()) continue;
                Mat2 tm = Mat2::from_quad(t), ti = tm.inverse();
                for (const auto& b : Rm.basis()) CHECK(Rm.contains(tm * b * ti));
            }
        }
    }
}

TEST_CASE("filtration and additive index") {
    for (EDescriptor d : {EDescriptor::NonsquareUnit, EDescriptor::Uniformizer}) {
        QuadExt E = classify(3, d);
        std::mt19937 rng(5);
        for (long m = 0; m <= 4; ++m) {
            Lattice2 Rm = build_Rm(E, m), Rn = build_Rm(E, m + 1);
            for (const auto& b : Rn.basis()) CHECK(Rm.contains(b));
            // additive quotient R_m / R_{m+1} is O/P: q^f classes represented by
            // s * dv * rho^m * h over residue representatives s
            QuadElem rho_m = QuadElem::rho(E).pow(m);
            FieldElem dv = E.fe(Rat(E.dv));
            std::vector<Mat2> reps;
            for (const auto& s : residue_reps(E, 1))
                reps.push_back(Mat2::from_quad((s * rho_m).scale(dv)) * Mat2::h(E));
            for (size_t i = 0; i < reps.size(); ++i)
                for (size_t j = i + 1; j < reps.size(); ++j)
                    CHECK(!Rn.contains(reps[i] - reps[j]));
            // random elements of R_m land in exactly one class
            std::uniform_int_distribution<int> pick(-8, 8);
            for (int t = 0; t < 25; ++t) {
                Mat2 x = Mat2::zero(E);
                for (const auto& b : Rm.basis()) x = x + b.scale(E.fe(pick(rng)));
                int hits = 0;
                for (const auto& r : reps)
                    if (Rn.contains(x - r)) ++hits;
                CHECK(hits == 1);
            }
        }
    }
}

TEST_CASE("hankel parts match the structure lemma") {
    QuadExt ui = classify(3, EDescriptor::NonsquareUnit);
    std::mt19937 rng(31);

    Lattice2 RH = hankel_part(ui, NamedLattice::R);
    CHECK(RH.rank() == 3);
    CHECK(RH.contains(Mat2::identity(ui)));
    CHECK(RH.contains(Mat2::from_quad(QuadElem::sigma(ui))));
    CHECK(RH.contains(Mat2::h(ui)));
    // and RH = R cap H_2 on samples
    Lattice2 R = build_R(ui);
    for (int t = 0; t < 60; ++t) {
        Mat2 m = rand_mat(ui, rng, -6, 6);
        bool in_rh = RH.contains(m);
        bool expect = R.contains(m) && m.is_hankel();
        CHECK(in_rh == expect);
    }

    Lattice2 rRH = hankel_part(ui, NamedLattice::RhoR);  // {3, 3 sigma, 3 h}
    CHECK(rRH.contains(Mat2::scalar(ui, 3)));
    CHECK(rRH.contains(Mat2::from_quad(QuadElem::sigma(ui)).scale(ui.fe(3))));
    CHECK(rRH.contains(Mat2::h(ui).scale(ui.fe(3))));
    CHECK(!rRH.contains(Mat2::identity(ui)));
    CHECK(!rRH.contains(Mat2::h(ui)));

    QuadExt ri = classify(3, EDescriptor::Uniformizer);
    Lattice2 rhoH = hankel_part(ri, NamedLattice::Rrho);  // {1, sigma, 3h}
    CHECK(rhoH.contains(Mat2::identity(ri)));
    CHECK(rhoH.contains(Mat2::from_quad(QuadElem::sigma(ri))));
    CHECK(rhoH.contains(Mat2::h(ri).scale(ri.fe(3))));
    CHECK(!rhoH.contains(Mat2::h(ri)));

    // lem:R^0 ii): in case R, h lies in rho^-1 R^rho but not in R^rho
    Lattice2 Rrho = build_Rrho(ri);
    QuadElem rho = QuadElem::rho(ri);
    CHECK(!Rrho.contains(Mat2::h(ri)));
    CHECK(Rrho.contains(Mat2::from_quad(rho) * Mat2::h(ri)));
}

TEST_CASE("unit quotient representatives") {
    QuadExt ui = classify(3, EDescriptor::NonsquareUnit);
    QuadExt ri = classify(3, EDescriptor::Uniformizer);

    auto check_reps = [](const QuadExt& E, long m, size_t expected) {
        auto reps = unit_quotient_reps(E, m);
        CHECK(reps.size() == expected);
        Lattice2 Rm = build_Rm(E, m), Rnext = build_Rm(E, m + 1);
        for (const auto& r : reps) CHECK(is_unit_of_order(Rm, r));
        for (size_t i = 0; i < reps.size(); ++i)
            for (size_t j = i + 1; j < reps.size(); ++j)
                CHECK(!is_unit_of_order(Rnext, reps[i].inverse() * reps[j]));
        CHECK(unit_quotient_size_bfs(E, m) == expected);
    };

    check_reps(ui, 1, 9);  // q^f = 9
    check_reps(ui, 2, 9);
    check_reps(ri, 2, 3);  // q^f = 3
    check_reps(ri, 3, 3);
    check_reps(ui, 0, 6);  // m = m0 - 1: det-nonzero subset of E-bar
    check_reps(ri, 1, 2);  // m = m0 - 1 in case R
    CHECK_THROWS(unit_quotient_reps(ri, 0));
}

TEST_CASE("dual lattices and L_m") {
    QuadExt ui = classify(3, EDescriptor::NonsquareUnit);
    Lattice2 R = build_R(ui);
    Lattice2 D = dual_lattice(R);
    std::mt19937 rng(8);
    // self-dual at p = 3 under Tr(x* y)/2
    for (int t = 0; t < 60; ++t) {
        Mat2 m = rand_mat(ui, rng, -9, 9);
        CHECK(D.contains(m) == R.contains(m));
    }
    // duality property: the Gram between dual and original basis is the identity
    for (size_t i = 0; i < D.rank(); ++i)
        for (size_t j = 0; j < R.rank(); ++j) {
            FieldElem v = trace_pairing(ui, D.basis()[i], R.basis()[j]);
            CHECK(v == (i == j ? ui.fe(1) : ui.fzero()));
        }

    LatticeLm L0 = build_Lm(ui, 0);
    for (int t = 0; t < 20; ++t) {
        Mat2 m = rand_mat(ui, rng, -9, 9);
        CHECK(L0.scaled_dual.contains(m) == dual_lattice(build_Rm(ui, 0)).contains(m));
        CHECK(L0.order_part.contains(m) == build_Rm(ui, 0).contains(m));
    }
    // scaling: first summand of L_m is pi^(2m) dual(R_m) in case U
    LatticeLm L1 = build_Lm(ui, 1);
    Lattice2 want = dual_lattice(build_Rm(ui, 1)).scaled_rat(Rat(9));
    for (int t = 0; t < 20; ++t) {
        Mat2 m = rand_mat(ui, rng, -30, 30);
        CHECK(L1.scaled_dual.contains(m) == want.contains(m));
    }
}
