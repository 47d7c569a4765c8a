#pragma once

// GSp_4 over the truncated field: 4x4 matrices with similitude tracking,
// the Gamma embeddings and the special elements of the construction.

#include "orders.hpp"

namespace skbessel {

class Mat4 {
    std::array<FieldElem, 16> a_;

public:
    Mat4() = default;
    explicit Mat4(const QuadExt& E) {
        for (auto& v : a_) v = E.fzero();
    }
    static Mat4 identity(const QuadExt& E) {
        Mat4 m(E);
        for (int i = 0; i < 4; ++i) m.at(i, i) = E.fe(1);
        return m;
    }
    // the defining form: antidiagonal (-1, -1, 1, 1)
    static Mat4 J(const QuadExt& E) {
        Mat4 m(E);
        m.at(0, 3) = E.fe(-1);
        m.at(1, 2) = E.fe(-1);
        m.at(2, 1) = E.fe(1);
        m.at(3, 0) = E.fe(1);
        return m;
    }

    const FieldElem& at(int i, int j) const { return a_[4 * i + j]; }
    FieldElem& at(int i, int j) { return a_[4 * i + j]; }

    Mat2 block(int bi, int bj) const {  // 2x2 corner (bi, bj in {0,1})
        return Mat2(at(2 * bi, 2 * bj), at(2 * bi, 2 * bj + 1), at(2 * bi + 1, 2 * bj),
                    at(2 * bi + 1, 2 * bj + 1));
    }
    void set_block(int bi, int bj, const Mat2& m) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) at(2 * bi + i, 2 * bj + j) = m.at(i, j);
    }

    friend Mat4 operator*(const Mat4& x, const Mat4& y) {
        Mat4 r = x;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                FieldElem s = x.at(i, 0) * y.at(0, j);
                for (int k = 1; k < 4; ++k) s = s + x.at(i, k) * y.at(k, j);
                r.at(i, j) = s;
            }
        return r;
    }
    friend Mat4 operator+(const Mat4& x, const Mat4& y) {
        Mat4 r = x;
        for (int i = 0; i < 16; ++i) r.a_[i] = x.a_[i] + y.a_[i];
        return r;
    }
    friend Mat4 operator-(const Mat4& x, const Mat4& y) {
        Mat4 r = x;
        for (int i = 0; i < 16; ++i) r.a_[i] = x.a_[i] - y.a_[i];
        return r;
    }
    Mat4 transpose() const {
        Mat4 r = *this;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r.at(i, j) = at(j, i);
        return r;
    }
    Mat4 scale(const FieldElem& c) const {
        Mat4 r = *this;
        for (auto& v : r.a_) v = c * v;
        return r;
    }

    bool operator==(const Mat4& o) const {
        for (int i = 0; i < 16; ++i)
            if (!(a_[i] == o.a_[i])) return false;
        return true;
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < 4; ++i) {
            s += "[";
            for (int j = 0; j < 4; ++j) s += at(i, j).str() + (j < 3 ? ", " : "");
            s += i < 3 ? "], " : "]";
        }
        return s + "]";
    }
};

// Element of GSp_4(F) with verified similitude factor.
struct GSp4Elem {
    Mat4 g;
    FieldElem mu;

    GSp4Elem inverse(const QuadExt& E) const {
        // g^-1 = mu^-1 J^-1 (t g) J, and J^-1 = -J
        Mat4 Jm = Mat4::J(E);
        Mat4 inv = (Jm * g.transpose() * Jm).scale(mu.inverse().negated());
        return GSp4Elem{inv, mu.inverse()};
    }
};

// Verifies t(g) J g = mu J and extracts mu; throws if g is not a similitude.
inline GSp4Elem make_gsp4(const QuadExt& E, const Mat4& g) {
    Mat4 m = g.transpose() * Mat4::J(E) * g;
    FieldElem mu = m.at(0, 3).negated();
    Mat4 target = Mat4::J(E).scale(mu);
    if (!(m == target)) throw std::domain_error("make_gsp4: not a symplectic similitude");
    if (mu.is_zeroish()) throw std::domain_error("make_gsp4: degenerate similitude");
    return GSp4Elem{g, mu};
}

inline GSp4Elem gsp4_mul(const QuadExt& E, const GSp4Elem& a, const GSp4Elem& b) {
    (void)E;
    return GSp4Elem{a.g * b.g, a.mu * b.mu};
}

inline GSp4Elem gsp4_identity(const QuadExt& E) { return GSp4Elem{Mat4::identity(E), E.fe(1)}; }

// n_y, upper unipotent with Hankel block y
inline GSp4Elem upper_unipotent(const QuadExt& E, const Mat2& y) {
    Mat4 g = Mat4::identity(E);
    g.set_block(0, 1, y);
    return GSp4Elem{g, E.fe(1)};
}
inline GSp4Elem lower_unipotent(const QuadExt& E, const Mat2& y) {
    Mat4 g = Mat4::identity(E);
    g.set_block(1, 0, y);
    return GSp4Elem{g, E.fe(1)};
}
// hat(u) = diag(u, u, 1, 1)
inline GSp4Elem hat_scalar(const QuadExt& E, const FieldElem& u) {
    Mat4 g = Mat4::identity(E);
    g.at(0, 0) = u;
    g.at(1, 1) = u;
    return GSp4Elem{g, u};
}
// h-dagger = det(h) t(h)^-1 conjugated by the swap matrix
inline Mat2 dagger(const Mat2& h) {
    return Mat2(h.at(0, 0), h.at(0, 1).negated(), h.at(1, 0).negated(), h.at(1, 1));
}
// a_h = diag(h, h-dagger), similitude det h
inline GSp4Elem levi_elem(const QuadExt& E, const Mat2& h) {
    Mat4 g(E);
    g.set_block(0, 0, h);
    g.set_block(1, 1, dagger(h));
    return GSp4Elem{g, h.det()};
}
inline GSp4Elem block_antidiag(const QuadExt& E, const Mat2& b, const Mat2& c) {
    Mat4 g(E);
    g.set_block(0, 1, b);
    g.set_block(1, 0, c);
    return make_gsp4(E, g);
}

// ---------------------------------------------------------------------------
// Special elements.

// Atkin-Lehner element diag(iota, -iota) = diag(1, -1, -1, 1)
inline GSp4Elem atkin_lehner(const QuadExt& E) {
    Mat4 g(E);
    g.at(0, 0) = E.fe(1);
    g.at(1, 1) = E.fe(-1);
    g.at(2, 2) = E.fe(-1);
    g.at(3, 3) = E.fe(1);
    return make_gsp4(E, g);
}

// Weyl element of K_2m: [[0, -dv^-1 rho^-m], [dv rho^m, 0]] over E
inline GSp4Elem weyl(const QuadExt& E, long m) {
    if (E.is_split()) throw std::domain_error("weyl: nonsplit families only");
    QuadElem rho_m = QuadElem::rho(E).pow(m);
    FieldElem dv = E.fe(Rat(E.dv));
    Mat2 b = Mat2::from_quad(rho_m.inverse().scale(dv.inverse())).negated();
    Mat2 c = Mat2::from_quad(rho_m.scale(dv));
    return block_antidiag(E, b, c);
}

// w'_m of case U: [[0, -dv^-1 pi^-m], [dv pi^(m+1), 0]]
inline GSp4Elem weyl_prime(const QuadExt& E, long m) {
    if (!E.is_case_U()) throw std::domain_error("weyl_prime: case U only");
    Rat pi(E.p());
    FieldElem dv = E.fe(Rat(E.dv));
    Mat2 b = Mat2::scalar(E, rat_pow(pi, -m)).scale(dv.inverse()).negated();
    Mat2 c = Mat2::scalar(E, rat_pow(pi, m + 1)).scale(dv);
    return block_antidiag(E, b, c);
}

// s_p of case R: rotation in the (2,3) plane by (-pi^-1, pi)
inline GSp4Elem s_p(const QuadExt& E) {
    if (!E.is_case_R()) throw std::domain_error("s_p: case R only");
    Mat4 g(E);
    g.at(0, 0) = E.fe(1);
    g.at(3, 3) = E.fe(1);
    g.at(1, 2) = E.fe(Rat(-1) / Rat(E.p()));
    g.at(2, 1) = E.fe(Rat(E.p()));
    return make_gsp4(E, g);
}

// u_alpha of case R-ii
inline GSp4Elem u_alpha(const QuadExt& E) {
    if (E.kase != ECase::R_ii) throw std::domain_error("u_alpha: case R-ii only");
    Mat4 g = Mat4::identity(E);
    g.at(0, 1) = E.fe(E.alpha);
    g.at(2, 3) = E.fe(-E.alpha);
    return make_gsp4(E, g);
}

// hat(pi)^i = diag(pi^i, pi^i, 1, 1)
inline GSp4Elem hat_wpi(const QuadExt& E, long i) {
    return hat_scalar(E, E.fe(rat_pow(Rat(E.p()), i)));
}

// ---------------------------------------------------------------------------
// Embeddings of Gamma.

// Nonsplit: [[x, y],[z, w]] over E with F-rational determinant maps to the
// block matrix [[x, y sigma^-1 / 2], [2 sigma z, w]].
inline GSp4Elem embed_gamma(const QuadExt& E, const QuadElem& x, const QuadElem& y,
                            const QuadElem& z, const QuadElem& w) {
    if (E.is_split()) throw std::domain_error("embed_gamma: use embed_gamma_split");
    QuadElem det = x * w - y * z;
    if (!det.y().is_zeroish()) throw std::domain_error("embed_gamma: determinant not F-rational");
    if (det.x().is_zeroish()) throw std::domain_error("embed_gamma: not invertible at precision");
    QuadElem sig = QuadElem::sigma(E);
    QuadElem half = QuadElem::from_rationals(E, Rat(1, 2), 0);
    QuadElem two = QuadElem::from_rationals(E, 2, 0);
    Mat4 g(E);
    g.set_block(0, 0, Mat2::from_quad(x));
    g.set_block(0, 1, Mat2::from_quad(y * sig.inverse() * half));
    g.set_block(1, 0, Mat2::from_quad(two * sig * z));
    g.set_block(1, 1, Mat2::from_quad(w));
    return make_gsp4(E, g);
}

inline GSp4Elem embed_torus(const QuadExt& E, const QuadElem& a) {
    return embed_gamma(E, a, QuadElem::zero(E), QuadElem::zero(E), a.conj());
}

// Split: a pair (g1, g2) with equal determinants maps to the checkerboard
// block element of the split construction.
inline GSp4Elem embed_gamma_split(const QuadExt& E, const Mat2& g1, const Mat2& g2) {
    if (!E.is_split()) throw std::domain_error("embed_gamma_split: split case only");
    if (!(g1.det() == g2.det())) throw std::domain_error("embed_gamma_split: determinant mismatch");
    Mat4 g(E);
    g.at(0, 0) = g1.at(0, 0);
    g.at(0, 3) = g1.at(0, 1);
    g.at(3, 0) = g1.at(1, 0);
    g.at(3, 3) = g1.at(1, 1);
    g.at(1, 1) = g2.at(0, 0);
    g.at(1, 2) = g2.at(0, 1);
    g.at(2, 1) = g2.at(1, 0);
    g.at(2, 2) = g2.at(1, 1);
    return make_gsp4(E, g);
}

// split Atkin-Lehner element: swaps the two GL_2 factors
inline GSp4Elem atkin_lehner_split(const QuadExt& E) {
    Mat4 g(E);
    g.at(0, 1) = E.fe(1);
    g.at(1, 0) = E.fe(1);
    g.at(2, 3) = E.fe(1);
    g.at(3, 2) = E.fe(1);
    return make_gsp4(E, g);
}

// split Weyl-type element of the level-n paramodular group: the rotation by
// (-pi^-n, pi^n) in the (1,4) plane
inline GSp4Elem weyl_split(const QuadExt& E, long n) {
    Mat4 g(E);
    g.at(1, 1) = E.fe(1);
    g.at(2, 2) = E.fe(1);
    g.at(0, 3) = E.fe(-rat_pow(Rat(E.p()), -n));
    g.at(3, 0) = E.fe(rat_pow(Rat(E.p()), n));
    return make_gsp4(E, g);
}

// entrywise congruence representative of full precision; see reduce_mat_mod
inline Mat4 reduce_mat4_mod(const QuadExt& E, const Mat4& g, int k, int floor_val) {
    Mat4 out = g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out.at(i, j) = reduce_fe_mod(E.ctx, g.at(i, j), k, floor_val);
    return out;
}

}  // namespace skbessel
