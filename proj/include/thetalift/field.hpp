#pragma once

// Exact arithmetic in a totally real number field F of degree d on a
// user-supplied integral basis: embeddings with certified signs, trace and
// norm through the regular representation, and the codifferent as the
// trace-dual Z-module of O_F.

#include <array>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "numeric.hpp"

namespace thetalift {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class FieldElem {
public:
    FieldElem() = default;
    FieldElem(FieldPtr fld, QVec coords) : fld_(std::move(fld)), coords_(std::move(coords)) {}

    const QVec& coords() const { return coords_; }
    const FieldPtr& field() const { return fld_; }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (c != 0) return false;
        return true;
    }

    bool operator==(const FieldElem& o) const { return coords_ == o.coords_; }
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    FieldElem operator+(const FieldElem& o) const {
        QVec c = coords_;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
        return {fld_, std::move(c)};
    }
    FieldElem operator-(const FieldElem& o) const {
        QVec c = coords_;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
        return {fld_, std::move(c)};
    }
    FieldElem operator-() const {
        QVec c = coords_;
        for (auto& x : c) x = -x;
        return {fld_, std::move(c)};
    }
    FieldElem operator*(const Rational& r) const {
        QVec c = coords_;
        for (auto& x : c) x *= r;
        return {fld_, std::move(c)};
    }
    FieldElem operator*(const FieldElem& o) const;  // needs NumberField

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ",";
            s += rational_to_string(coords_[i]);
        }
        return s + "]";
    }

private:
    FieldPtr fld_;
    QVec coords_;
};

// Z-basis of a fractional ideal, rows in integral-basis coordinates.
struct FracIdealBasis {
    QMat basis;
};

class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    // poly: monic integer polynomial, ascending coefficients (constant first).
    // integral_basis: rows give an O_F basis in the power basis 1, x, ..., x^{d-1}.
    // sigma1_root_index: which real root (ascending order) plays sigma_1.
    static FieldPtr make(QPoly poly, QMat integral_basis, int sigma1_root_index,
                         int precision_digits = 50) {
        auto f = std::shared_ptr<NumberField>(new NumberField());
        f->init(std::move(poly), std::move(integral_basis), sigma1_root_index, precision_digits);
        return f;
    }

    // Convenience: power basis 1, x, ..., x^{d-1}.
    static FieldPtr make_power_basis(QPoly poly, int sigma1_root_index = 0,
                                     int precision_digits = 50) {
        int d = poly_deg(poly);
        return make(std::move(poly), qmat_identity(static_cast<std::size_t>(d)),
                    sigma1_root_index, precision_digits);
    }

    static FieldPtr rationals() { return make_power_basis({Rational(-1), Rational(1)}); }

    int degree() const { return d_; }
    int precision_digits() const { return prec_; }
    const QPoly& defining_poly() const { return poly_; }
    const QMat& integral_basis() const { return basis_; }
    const QMat& trace_form() const { return trace_form_; }
    Rational discriminant() const { return disc_; }

    FieldElem elem(QVec coords) const {
        if (static_cast<int>(coords.size()) != d_)
            throw std::invalid_argument("field element needs " + std::to_string(d_) + " coordinates");
        return {shared_from_this(), std::move(coords)};
    }
    FieldElem zero() const { return elem(QVec(d_, Rational(0))); }
    FieldElem one() const { return elem(one_coords_); }
    FieldElem from_rational(const Rational& r) const {
        QVec c = one_coords_;
        for (auto& x : c) x *= r;
        return elem(std::move(c));
    }

    FieldElem mul(const FieldElem& a, const FieldElem& b) const {
        QVec out(d_, Rational(0));
        for (int i = 0; i < d_; ++i) {
            if (a.coords()[i] == 0) continue;
            for (int j = 0; j < d_; ++j) {
                if (b.coords()[j] == 0) continue;
                Rational f = a.coords()[i] * b.coords()[j];
                for (int k = 0; k < d_; ++k) out[k] += f * struct_consts_[i][j][k];
            }
        }
        return {shared_from_this(), std::move(out)};
    }

    // Matrix of multiplication by x on the integral basis (columns are x*b_j).
    QMat regular_rep(const FieldElem& x) const {
        QMat m = qmat_zero(d_, d_);
        for (int j = 0; j < d_; ++j) {
            FieldElem col = mul(x, elem(unit_coords(j)));
            for (int i = 0; i < d_; ++i) m[i][j] = col.coords()[i];
        }
        return m;
    }

    Rational trace(const FieldElem& x) const {
        Rational t = 0;
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j)
                for (int k = 0; k < d_; ++k)
                    if (j == k) t += x.coords()[i] * struct_consts_[i][j][k];
        return t;
    }

    Rational norm(const FieldElem& x) const { return qmat_det(regular_rep(x)); }

    std::optional<FieldElem> inverse(const FieldElem& x) const {
        if (x.is_zero()) return std::nullopt;
        auto sol = qmat_solve(regular_rep(x), one_coords_);
        if (!sol) return std::nullopt;
        return elem(*sol);
    }

    // Floating embeddings ordered sigma_1, ..., sigma_d.
    std::vector<double> embed(const FieldElem& x) const {
        std::vector<double> out(d_, 0.0);
        for (int i = 0; i < d_; ++i) {
            double acc = 0;
            for (int j = 0; j < d_; ++j) acc += to_double(x.coords()[j]) * basis_embed_[i][j];
            out[i] = acc;
        }
        return out;
    }

    // Rational enclosure midpoints accurate to 10^{-digits}.
    QVec embed_exact(const FieldElem& x, int digits) const {
        QVec pw = power_coords(x);
        Rational target = pow10(-digits);
        QVec out(d_);
        for (int i = 0; i < d_; ++i) {
            RootInterval iv = roots_[i];
            while (true) {
                QInterval v = poly_eval_interval(pw, {iv.lo, iv.hi});
                if (v.hi - v.lo <= target) {
                    out[i] = (v.lo + v.hi) / 2;
                    break;
                }
                iv = refine_root(poly_, iv, iv.width() / 16);
            }
        }
        return out;
    }

    // Sign of sigma_i(x), certified by interval refinement; exact for x == 0.
    int certified_sign(const FieldElem& x, int i) const {
        if (x.is_zero()) return 0;
        QVec pw = power_coords(x);
        RootInterval iv = roots_[i];
        Rational cap = pow10(-(4 * prec_ + 32));
        while (true) {
            QInterval v = poly_eval_interval(pw, {iv.lo, iv.hi});
            int s = v.sign();
            if (s != 0) return s;
            if (iv.exact()) {
                // rational root, exact evaluation
                Rational val = poly_eval(pw, iv.lo);
                return val == 0 ? 0 : (val > 0 ? 1 : -1);
            }
            if (iv.width() < cap)
                throw std::runtime_error(
                    "sign not certifiable at requested precision; increase precision_digits");
            iv = refine_root(poly_, iv, iv.width() / 16);
        }
    }

    bool is_totally_positive(const FieldElem& x) const {
        if (x.is_zero()) return false;
        for (int i = 0; i < d_; ++i)
            if (certified_sign(x, i) <= 0) return false;
        return true;
    }

    // Trace-dual of O_F; rows are a Z-basis of the codifferent in
    // integral-basis coordinates.
    FracIdealBasis codifferent() const { return {codiff_}; }

    bool in_codifferent(const FieldElem& x) const {
        QVec y = qvec_mat(x.coords(), codiff_inv_);
        for (const auto& c : y)
            if (!is_integer(c)) return false;
        return true;
    }

    // Canonical representative of x mod the codifferent: coordinates on the
    // codifferent basis reduced into [0,1).
    FieldElem reduce_mod_codifferent(const FieldElem& x) const {
        QVec y = qvec_mat(x.coords(), codiff_inv_);
        for (auto& c : y) c = fractional_part(c);
        return elem(qvec_mat(y, codiff_));
    }

    QVec unit_coords(int j) const {
        QVec c(d_, Rational(0));
        c[j] = 1;
        return c;
    }

    // Coordinates of x on the power basis.
    QVec power_coords(const FieldElem& x) const { return qvec_mat(x.coords(), basis_); }

    // Inverse conversion; nullopt when the power-coordinate vector is not in
    // the span (cannot happen for genuine elements).
    FieldElem from_power_coords(const QVec& pw) const {
        return elem(qvec_mat(pw, basis_inv_));
    }

private:
    NumberField() = default;

    static Rational pow10(int e) {
        Rational r = 1;
        for (int i = 0; i < std::abs(e); ++i) r *= 10;
        return e >= 0 ? r : Rational(1) / r;
    }

    void init(QPoly poly, QMat basis, int sigma1_root_index, int precision_digits) {
        poly_ = poly_trim(std::move(poly));
        d_ = poly_deg(poly_);
        prec_ = precision_digits;
        if (d_ < 1) throw std::invalid_argument("defining polynomial must have degree >= 1");
        for (const auto& c : poly_)
            if (!is_integer(c)) throw std::invalid_argument("defining polynomial must have integer coefficients");
        if (poly_.back() != 1) throw std::invalid_argument("defining polynomial must be monic");
        if (poly_deg(poly_gcd(poly_, poly_derivative(poly_))) > 0)
            throw std::invalid_argument("defining polynomial must be squarefree");

        auto roots = isolate_real_roots(poly_);
        if (static_cast<int>(roots.size()) != d_)
            throw std::invalid_argument("defining polynomial is not totally real");
        if (sigma1_root_index < 0 || sigma1_root_index >= d_)
            throw std::invalid_argument("sigma1 root index out of range");

        // Order: designated root first, the rest ascending.
        Rational base_width = pow10(-(prec_ + 10));
        roots_.clear();
        roots_.push_back(refine_root(poly_, roots[sigma1_root_index], base_width));
        for (int i = 0; i < d_; ++i)
            if (i != sigma1_root_index) roots_.push_back(refine_root(poly_, roots[i], base_width));

        if (static_cast<int>(basis.size()) != d_)
            throw std::invalid_argument("integral basis must have d rows");
        for (const auto& r : basis)
            if (static_cast<int>(r.size()) != d_)
                throw std::invalid_argument("integral basis must be a d x d matrix");
        basis_ = std::move(basis);
        auto inv = qmat_inverse(basis_);
        if (!inv) throw std::invalid_argument("integral basis is singular");
        basis_inv_ = *inv;

        // 1 must lie in the Z-span.
        QVec one_pw(d_, Rational(0));
        one_pw[0] = 1;
        one_coords_ = qvec_mat(one_pw, basis_inv_);
        for (const auto& c : one_coords_)
            if (!is_integer(c))
                throw std::invalid_argument("integral basis does not contain 1 in its Z-span");

        // Structure constants; integrality certifies ring closure.
        struct_consts_.assign(d_, std::vector<QVec>(d_, QVec(d_, Rational(0))));
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) {
                QPoly pi(basis_[i].begin(), basis_[i].end());
                QPoly pj(basis_[j].begin(), basis_[j].end());
                QPoly prod = poly_mod_monic(poly_mul(pi, pj), poly_);
                prod.resize(d_, Rational(0));
                QVec coords = qvec_mat(prod, basis_inv_);
                for (const auto& c : coords)
                    if (!is_integer(c))
                        throw std::invalid_argument("integral basis does not span a ring");
                struct_consts_[i][j] = std::move(coords);
            }

        // Trace form and discriminant; tr(b_i b_j) via the regular representation.
        trace_form_ = qmat_zero(d_, d_);
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) {
                const QVec& c = struct_consts_[i][j];
                Rational t = 0;
                for (int a = 0; a < d_; ++a)
                    for (int k = 0; k < d_; ++k) t += c[a] * struct_consts_[a][k][k];
                trace_form_[i][j] = t;
            }
        disc_ = qmat_det(trace_form_);
        if (disc_ == 0) throw std::invalid_argument("degenerate trace form");

        auto tf_inv = qmat_inverse(trace_form_);
        codiff_ = *tf_inv;  // rows: dual basis in integral-basis coordinates
        codiff_inv_ = trace_form_;

        // Floating embeddings of the basis.
        basis_embed_.assign(d_, std::vector<double>(d_, 0.0));
        for (int i = 0; i < d_; ++i) {
            Rational x = roots_[i].mid();
            for (int j = 0; j < d_; ++j) {
                QPoly pj(basis_[j].begin(), basis_[j].end());
                basis_embed_[i][j] = to_double(poly_eval(pj, x));
            }
        }
    }

    int d_ = 0;
    int prec_ = 50;
    QPoly poly_;
    QMat basis_, basis_inv_;
    QVec one_coords_;
    std::vector<std::vector<QVec>> struct_consts_;
    QMat trace_form_;
    Rational disc_;
    QMat codiff_, codiff_inv_;
    std::vector<RootInterval> roots_;
    std::vector<std::vector<double>> basis_embed_;
};

inline FieldElem FieldElem::operator*(const FieldElem& o) const {
    return fld_->mul(*this, o);
}

// Free-function forms mirroring the library API.
inline std::pair<Rational, Rational> trace_norm(const FieldElem& x) {
    return {x.field()->trace(x), x.field()->norm(x)};
}

inline bool is_totally_positive(const FieldElem& x) {
    return x.field()->is_totally_positive(x);
}

}  // namespace thetalift
