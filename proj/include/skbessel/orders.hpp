#pragma once

// Orders and lattices in M_2(F) containing the embedded quadratic algebra E:
// R, R^rho, R_m, their Hankel parts, dual lattices and unit quotients.

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "localfield.hpp"

namespace skbessel {

class Mat2 {
    std::array<FieldElem, 4> a_;  // row major
    long long p_ = 0;

public:
    Mat2() = default;
    Mat2(FieldElem a, FieldElem b, FieldElem c, FieldElem d) : a_{a, b, c, d}, p_(a.p()) {}

    static Mat2 zero(const QuadExt& E) {
        FieldElem z = E.fzero();
        return Mat2(z, z, z, z);
    }
    static Mat2 identity(const QuadExt& E) {
        return Mat2(E.fe(1), E.fzero(), E.fzero(), E.fe(1));
    }
    // x + y*sigma with sigma = [[0, e], [1, 0]]
    static Mat2 from_quad(const QuadElem& z) {
        const QuadExt& E = z.ext();
        if (E.is_split()) throw std::domain_error("from_quad: nonsplit only");
        FieldElem e = E.fe(E.e);
        return Mat2(z.x(), e * z.y(), z.y(), z.x());
    }
    static Mat2 h(const QuadExt& E) {  // [[0,1],[0,0]]
        return Mat2(E.fzero(), E.fe(1), E.fzero(), E.fzero());
    }
    static Mat2 iota(const QuadExt& E) {  // diag(1,-1)
        return Mat2(E.fe(1), E.fzero(), E.fzero(), E.fe(-1));
    }
    static Mat2 scalar(const QuadExt& E, const Rat& r) {
        return Mat2(E.fe(r), E.fzero(), E.fzero(), E.fe(r));
    }
    static Mat2 from_rationals(const QuadExt& E, Rat a, Rat b, Rat c, Rat d) {
        return Mat2(E.fe(a), E.fe(b), E.fe(c), E.fe(d));
    }

    const FieldElem& at(int i, int j) const { return a_[2 * i + j]; }
    FieldElem& at(int i, int j) { return a_[2 * i + j]; }

    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        Mat2 r = x;
        for (int i = 0; i < 4; ++i) r.a_[i] = x.a_[i] + y.a_[i];
        return r;
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        Mat2 r = x;
        for (int i = 0; i < 4; ++i) r.a_[i] = x.a_[i] - y.a_[i];
        return r;
    }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        Mat2 r = x;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.at(i, j) = x.at(i, 0) * y.at(0, j) + x.at(i, 1) * y.at(1, j);
        return r;
    }
    Mat2 scale(const FieldElem& c) const {
        Mat2 r = *this;
        for (auto& v : r.a_) v = c * v;
        return r;
    }
    Mat2 negated() const {
        Mat2 r = *this;
        for (auto& v : r.a_) v = v.negated();
        return r;
    }

    FieldElem det() const { return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0); }
    FieldElem tr() const { return at(0, 0) + at(1, 1); }
    // main involution: m* = det(m) m^-1 = adjugate
    Mat2 main_involution() const {
        return Mat2(at(1, 1), at(0, 1).negated(), at(1, 0).negated(), at(0, 0));
    }
    Mat2 inverse() const {
        FieldElem d = det();
        return main_involution().scale(d.inverse());
    }
    Mat2 transpose() const { return Mat2(at(0, 0), at(1, 0), at(0, 1), at(1, 1)); }

    // decomposition m = u + v*h with u, v in E (nonsplit cases)
    std::pair<QuadElem, QuadElem> quad_coords(const QuadExt& E) const {
        FieldElem e = E.fe(E.e);
        QuadElem u(E, at(0, 0), at(1, 0));
        QuadElem v(E, at(0, 1) - at(1, 0) * e, at(1, 1) - at(0, 0));
        return {u, v};
    }
    // Hankel here means equal diagonal entries (the paper's H_2)
    bool is_hankel() const {
        FieldElem d = at(0, 0) - at(1, 1);
        return d.is_zeroish() || d.val_at_least(1) == Tri::Yes ? (at(0, 0) == at(1, 1)) : false;
    }

    bool operator==(const Mat2& o) const {
        for (int i = 0; i < 4; ++i)
            if (!(a_[i] == o.a_[i])) return false;
        return true;
    }

    std::string str() const {
        return "[[" + at(0, 0).str() + ", " + at(0, 1).str() + "], [" + at(1, 0).str() + ", " +
               at(1, 1).str() + "]]";
    }
};

// Solve a small linear system A x = b over F by Gauss-Jordan row elimination
// with minimal-valuation pivoting. Columns of A are the generators. Row
// operations preserve the solution, so the returned coordinates refer to the
// original generators. Returns nullopt if inconsistent at working precision.
inline std::optional<std::vector<FieldElem>> solve_linear(
    const std::vector<std::vector<FieldElem>>& cols, const std::vector<FieldElem>& rhs_in) {
    size_t rows = rhs_in.size(), ncols = cols.size();
    std::vector<std::vector<FieldElem>> M(rows, std::vector<FieldElem>(ncols));
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < ncols; ++c) M[r][c] = cols[c][r];
    std::vector<FieldElem> rhs = rhs_in;
    std::vector<bool> row_used(rows, false), col_used(ncols, false);
    std::vector<std::pair<size_t, size_t>> pivots;
    for (;;) {
        long best_val = 0;
        size_t pr = SIZE_MAX, pc = SIZE_MAX;
        for (size_t r = 0; r < rows; ++r) {
            if (row_used[r]) continue;
            for (size_t c = 0; c < ncols; ++c) {
                if (col_used[c] || M[r][c].is_zeroish()) continue;
                long v = M[r][c].valuation();
                if (pr == SIZE_MAX || v < best_val) {
                    best_val = v;
                    pr = r;
                    pc = c;
                }
            }
        }
        if (pr == SIZE_MAX) break;
        row_used[pr] = true;
        col_used[pc] = true;
        pivots.emplace_back(pr, pc);
        FieldElem inv = M[pr][pc].inverse();
        for (size_t r = 0; r < rows; ++r) {
            if (r == pr || M[r][pc].is_zeroish()) continue;
            FieldElem f = M[r][pc] * inv;
            for (size_t c = 0; c < ncols; ++c) M[r][c] = M[r][c] - f * M[pr][c];
            rhs[r] = rhs[r] - f * rhs[pr];
        }
    }
    for (size_t r = 0; r < rows; ++r)
        if (!row_used[r] && !rhs[r].is_zeroish()) return std::nullopt;
    std::vector<FieldElem> coords(ncols);
    long long p = rhs_in.empty() ? 2 : rhs_in[0].p();
    for (size_t c = 0; c < ncols; ++c) coords[c] = FieldElem::approx_zero(p, 1 << 20);
    for (auto [r, c] : pivots) coords[c] = rhs[r] / M[r][c];
    return coords;
}

// o-lattice in M_2(F) presented by generators; membership by linear solve.
class Lattice2 {
    const QuadExt* E_ = nullptr;
    std::vector<Mat2> basis_;

public:
    Lattice2() = default;
    Lattice2(const QuadExt& E, std::vector<Mat2> basis) : E_(&E), basis_(std::move(basis)) {}

    const QuadExt& ext() const { return *E_; }
    const std::vector<Mat2>& basis() const { return basis_; }
    size_t rank() const { return basis_.size(); }

    std::optional<std::vector<FieldElem>> coords(const Mat2& m) const {
        std::vector<std::vector<FieldElem>> cols;
        for (const auto& b : basis_) {
            std::vector<FieldElem> col;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) col.push_back(b.at(i, j));
            cols.push_back(std::move(col));
        }
        std::vector<FieldElem> rhs;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) rhs.push_back(m.at(i, j));
        return solve_linear(std::move(cols), std::move(rhs));
    }

    bool contains(const Mat2& m) const {
        auto c = coords(m);
        if (!c) return false;
        for (const auto& v : *c) {
            Tri t = v.val_at_least(0);
            if (t == Tri::Unknown) throw precision_error("lattice membership undecidable");
            if (t == Tri::No) return false;
        }
        return true;
    }

    Lattice2 scaled(const QuadElem& s) const {  // left multiply basis by s in E
        std::vector<Mat2> b;
        for (const auto& m : basis_) b.push_back(Mat2::from_quad(s) * m);
        return Lattice2(*E_, std::move(b));
    }
    Lattice2 scaled_rat(const Rat& r) const {
        std::vector<Mat2> b;
        FieldElem c = E_->fe(r);
        for (const auto& m : basis_) b.push_back(m.scale(c));
        return Lattice2(*E_, std::move(b));
    }
};

// R = O + dv O h; equals M_2(o) except in the case U-ii.
inline Lattice2 build_R(const QuadExt& E) {
    QuadElem one = QuadElem::one(E), om = QuadElem::omega(E);
    Mat2 hm = Mat2::h(E);
    Rat dv(E.dv);
    return Lattice2(E, {Mat2::from_quad(one), Mat2::from_quad(om),
                        Mat2::from_quad(one.scale(E.fe(dv))) * hm,
                        Mat2::from_quad(om.scale(E.fe(dv))) * hm});
}

// R_m = O + rho^m R, an order for m >= 0, a plain lattice otherwise.
inline Lattice2 build_Rm(const QuadExt& E, long m) {
    QuadElem one = QuadElem::one(E), om = QuadElem::omega(E), rho = QuadElem::rho(E);
    QuadElem rm = rho.pow(m);
    Mat2 hm = Mat2::h(E);
    FieldElem dv = E.fe(Rat(E.dv));
    QuadElem ea = m >= 0 ? one : rm;            // E-part: O for m >= 0, rho^m O otherwise
    QuadElem eb = m >= 0 ? om : rm * om;
    return Lattice2(E, {Mat2::from_quad(ea), Mat2::from_quad(eb),
                        Mat2::from_quad((rm * one).scale(dv)) * hm,
                        Mat2::from_quad((rm * om).scale(dv)) * hm});
}

// R^rho = R intersect R<rho>; equals R in case U and R_1 in case R.
inline Lattice2 build_Rrho(const QuadExt& E) {
    return E.is_case_U() ? build_R(E) : build_Rm(E, 1);
}

// Hankel part of a lattice A + B h: A + (B cap F) h, rank 3.
// Callers pass the E-part generators and the h-part generators.
struct SplitLattice {
    QuadElem a1, a2;  // E-part o-basis
    QuadElem b1, b2;  // h-part o-basis
};

inline SplitLattice split_form_Rm(const QuadExt& E, long m) {
    QuadElem one = QuadElem::one(E), om = QuadElem::omega(E), rho = QuadElem::rho(E);
    QuadElem rm = rho.pow(m);
    FieldElem dv = E.fe(Rat(E.dv));
    QuadElem ea = m >= 0 ? one : rm;
    QuadElem eb = m >= 0 ? om : rm * om;
    return {ea, eb, (rm * one).scale(dv), (rm * om).scale(dv)};
}

// smallest j with pi^j inside the fractional ideal generated by g = b1 (assumed
// principal with b2 = b1 * omega): pi^j in gO  iff  valE(pi^j) >= valE(g).
inline long valE(const QuadExt& E, const QuadElem& z) {
    long vn = z.norm().valuation();
    return E.is_case_R() ? vn : vn / 2;
}
inline long hankel_pi_exponent(const QuadExt& E, const QuadElem& gen) {
    long e_ram = E.ram_index();
    long v = valE(E, gen);
    long j = v >= 0 ? (v + e_ram - 1) / e_ram : -((-v) / e_ram);
    while (e_ram * j < v) ++j;
    return j;
}

inline Lattice2 hankel_part_of_Rm_multiple(const QuadExt& E, long m, long rho_extra = 0) {
    // Hankel part of rho^rho_extra * R_m
    SplitLattice s = split_form_Rm(E, m);
    QuadElem rex = QuadElem::rho(E).pow(rho_extra);
    QuadElem a1 = rex * s.a1, a2 = rex * s.a2, b1 = rex * s.b1;
    long j = hankel_pi_exponent(E, b1);
    Mat2 hm = Mat2::h(E);
    return Lattice2(E, {Mat2::from_quad(a1), Mat2::from_quad(a2),
                        hm.scale(E.fe(rat_pow(Rat(E.p()), j)))});
}

// generic Hankel part for the named lattices of the construction
enum class NamedLattice { R, RhoR, Rrho, RhoRrho };
inline Lattice2 hankel_part(const QuadExt& E, NamedLattice which) {
    switch (which) {
        case NamedLattice::R: return hankel_part_of_Rm_multiple(E, 0, 0);
        case NamedLattice::RhoR: return hankel_part_of_Rm_multiple(E, 0, 1);
        case NamedLattice::Rrho:
            return E.is_case_U() ? hankel_part_of_Rm_multiple(E, 0, 0)
                                 : hankel_part_of_Rm_multiple(E, 1, 0);
        case NamedLattice::RhoRrho:
            return E.is_case_U() ? hankel_part_of_Rm_multiple(E, 0, 1)
                                 : hankel_part_of_Rm_multiple(E, 1, 1);
    }
    throw std::domain_error("hankel_part");
}

// Trace pairing <x, y> = Tr(x* y)/2 used for dual lattices.
inline FieldElem trace_pairing(const QuadExt& E, const Mat2& x, const Mat2& y) {
    return (x.main_involution() * y).tr() * E.fe(Rat(1, 2));
}

inline Lattice2 dual_lattice(const Lattice2& L) {
    const QuadExt& E = L.ext();
    size_t n = L.rank();
    if (n != 4) throw std::domain_error("dual_lattice: need full rank 4");
    // Gram matrix and inverse by solving G X = I column by column
    std::vector<std::vector<FieldElem>> G(n, std::vector<FieldElem>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) G[i][j] = trace_pairing(E, L.basis()[i], L.basis()[j]);
    std::vector<Mat2> dual;
    for (size_t k = 0; k < n; ++k) {
        std::vector<std::vector<FieldElem>> cols;
        for (size_t c = 0; c < n; ++c) {
            std::vector<FieldElem> col;
            for (size_t r = 0; r < n; ++r) col.push_back(G[r][c]);
            cols.push_back(col);
        }
        std::vector<FieldElem> rhs(n, E.fzero());
        rhs[k] = E.fe(1);
        auto sol = solve_linear(std::move(cols), std::move(rhs));
        if (!sol) throw std::domain_error("dual_lattice: degenerate Gram matrix");
        Mat2 d = Mat2::zero(E);
        for (size_t j = 0; j < n; ++j) d = d + L.basis()[j].scale((*sol)[j]);
        dual.push_back(d);
    }
    return Lattice2(E, std::move(dual));
}

// L_m = pi^(f m) R_m^sharp (+) R_m, kept as the two summands.
struct LatticeLm {
    Lattice2 scaled_dual;
    Lattice2 order_part;
};
inline LatticeLm build_Lm(const QuadExt& E, long m) {
    if (m < 0) throw std::invalid_argument("build_Lm: m >= 0");
    Lattice2 Rm = build_Rm(E, m);
    Lattice2 dual = dual_lattice(Rm);
    return {dual.scaled_rat(rat_pow(Rat(E.p()), E.f * m)), Rm};
}

// ---------------------------------------------------------------------------
// Unit group machinery.

inline bool is_unit_of_order(const Lattice2& L, const Mat2& m) {
    if (!L.contains(m)) return false;
    FieldElem d = m.det();
    if (d.is_zeroish() || d.valuation() != 0) return false;
    return L.contains(m.inverse());
}

// Representatives for R_m^x / R_{m+1}^x after Lemma lem:unitorder ii).
// For m >= m0: 1 + s dv rho^m h over residue-field representatives s.
// For m = m0 - 1: u + s dv rho^(m0-1) h with unit determinant, u = 1.
inline std::vector<Mat2> unit_quotient_reps(const QuadExt& E, long m) {
    if (m < E.m0 - 1) throw std::invalid_argument("unit_quotient_reps: m below m0 - 1");
    QuadElem rho_m = QuadElem::rho(E).pow(m);
    FieldElem dv = E.fe(Rat(E.dv));
    Mat2 hm = Mat2::h(E);
    Mat2 one = Mat2::identity(E);
    std::vector<Mat2> out;
    Lattice2 Rm = build_Rm(E, m);
    for (const auto& s : residue_reps(E, 1)) {
        Mat2 cand = one + Mat2::from_quad((s * rho_m).scale(dv)) * hm;
        if (m == E.m0 - 1) {
            FieldElem d = cand.det();
            if (d.is_zeroish() || d.valuation() > 0) continue;  // drop degenerate choices
        }
        out.push_back(cand);
    }
    return out;
}

// Entrywise reduction of a matrix with entries of valuation >= floor_val to a
// fresh full-precision representative of its class modulo p^k. Replacing a
// group element by such a representative stays within every open subgroup in
// play once k exceeds the subgroup's defining valuations; the BFS below uses
// this to stop precision from decaying along long product chains.
inline FieldElem reduce_fe_mod(const PadicCtx& ctx, const FieldElem& x, int k, int floor_val) {
    FieldElem shifted = x.times_p_power(-floor_val);
    long long r = shifted.residue(k - floor_val);
    return FieldElem::from_rational(ctx, Rat(r) * rat_pow(Rat(ctx.p), floor_val));
}

inline Mat2 reduce_mat_mod(const QuadExt& E, const Mat2& m, int k, int floor_val = 0) {
    Mat2 out = m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.at(i, j) = reduce_fe_mod(E.ctx, m.at(i, j), k, floor_val);
    return out;
}

// ---------------------------------------------------------------------------
// Generic left-coset BFS: explores G/H from the identity coset using a
// generating set of G and a membership oracle for H. Exhaustive as long as the
// generators generate G; bails out beyond max_cosets. The canonicalizer maps
// each candidate to an equivalent element (same H-coset) of full precision.
template <typename Elem>
std::vector<Elem> coset_bfs(const Elem& identity, const std::vector<Elem>& generators,
                            const std::function<Elem(const Elem&, const Elem&)>& mul,
                            const std::function<bool(const Elem&, const Elem&)>& same_coset,
                            size_t max_cosets,
                            const std::function<Elem(const Elem&)>& canonicalize = nullptr) {
    std::vector<Elem> reps{identity};
    size_t head = 0;
    while (head < reps.size()) {
        Elem cur = reps[head++];
        for (const auto& g : generators) {
            Elem cand = mul(g, cur);
            if (canonicalize) cand = canonicalize(cand);
            bool found = false;
            for (const auto& r : reps)
                if (same_coset(r, cand)) {
                    found = true;
                    break;
                }
            if (!found) {
                reps.push_back(cand);
                if (reps.size() > max_cosets) throw std::length_error("coset_bfs: bound exceeded");
            }
        }
    }
    return reps;
}

}  // namespace skbessel
