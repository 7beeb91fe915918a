#pragma once

// Even O_F-lattices in a quadratic space over a totally real field: exact
// Gram data, per-embedding signatures, the Z-dual under the trace form, the
// finite quadratic module L'/L, and lattice-point enumeration below a
// positive definite majorant.

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "field.hpp"

namespace thetalift {

using FVec = std::vector<FieldElem>;  // vector in V, rank-many field elements

struct QuadraticSpace {
    FieldPtr field;
    int rank = 0;                              // l = n + 2 for admissible spaces
    std::vector<std::vector<FieldElem>> gram;  // bilinear form (.,.), Q(x) = (x,x)/2
    bool admissible = false;

    FieldElem bilinear(const FVec& x, const FVec& y) const {
        FieldElem acc = field->zero();
        for (int i = 0; i < rank; ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j < rank; ++j) {
                if (y[j].is_zero()) continue;
                acc = acc + x[i] * gram[i][j] * y[j];
            }
        }
        return acc;
    }
    FieldElem quad(const FVec& x) const { return bilinear(x, x) * Rational(1, 2); }

    FieldElem det() const {
        // fraction-free not needed; plain elimination over the field
        auto m = gram;
        FieldElem d = field->one();
        int n = rank;
        for (int col = 0; col < n; ++col) {
            int piv = col;
            while (piv < n && m[piv][col].is_zero()) ++piv;
            if (piv == n) return field->zero();
            if (piv != col) {
                std::swap(m[piv], m[col]);
                d = -d;
            }
            d = d * m[col][col];
            auto pinv = field->inverse(m[col][col]);
            for (int r = col + 1; r < n; ++r) {
                if (m[r][col].is_zero()) continue;
                FieldElem f = m[r][col] * *pinv;
                for (int c = col; c < n; ++c) m[r][c] = m[r][c] - f * m[col][c];
            }
        }
        return d;
    }
};

// Inertia (p_i, q_i) at every embedding, by exact congruence diagonalization
// with certified signs of the diagonal entries.
inline std::vector<std::pair<int, int>> signatures(const QuadraticSpace& V) {
    const auto& F = V.field;
    int n = V.rank, d = F->degree();
    auto m = V.gram;
    std::vector<FieldElem> diag;
    for (int k = 0; k < n; ++k) {
        if (m[k][k].is_zero()) {
            int piv = -1;
            for (int i = k + 1; i < n && piv < 0; ++i)
                if (!m[i][i].is_zero()) piv = i;
            if (piv >= 0) {
                std::swap(m[piv], m[k]);
                for (int r = 0; r < n; ++r) std::swap(m[r][piv], m[r][k]);
            } else {
                int pi = -1, pj = -1;
                for (int i = k; i < n && pi < 0; ++i)
                    for (int j = i + 1; j < n; ++j)
                        if (!m[i][j].is_zero()) {
                            pi = i;
                            pj = j;
                            break;
                        }
                if (pi < 0) throw std::invalid_argument("signatures: degenerate quadratic space");
                // row/col i += row/col j creates a nonzero diagonal entry
                for (int c = 0; c < n; ++c) m[pi][c] = m[pi][c] + m[pj][c];
                for (int r = 0; r < n; ++r) m[r][pi] = m[r][pi] + m[r][pj];
                if (pi != k) {
                    std::swap(m[pi], m[k]);
                    for (int r = 0; r < n; ++r) std::swap(m[r][pi], m[r][k]);
                }
            }
        }
        auto pinv = F->inverse(m[k][k]);
        for (int r = k + 1; r < n; ++r) {
            if (m[r][k].is_zero()) continue;
            FieldElem f = m[r][k] * *pinv;
            for (int c = 0; c < n; ++c) m[r][c] = m[r][c] - f * m[k][c];
            for (int c = 0; c < n; ++c) m[c][r] = m[c][r] - f * m[c][k];
        }
        diag.push_back(m[k][k]);
    }
    std::vector<std::pair<int, int>> sig(d, {0, 0});
    for (const auto& e : diag)
        for (int i = 0; i < d; ++i) {
            int s = F->certified_sign(e, i);
            if (s > 0)
                ++sig[i].first;
            else if (s < 0)
                ++sig[i].second;
            else
                throw std::invalid_argument("signatures: degenerate quadratic space");
        }
    return sig;
}

inline QuadraticSpace make_quadratic_space(FieldPtr field,
                                           std::vector<std::vector<FieldElem>> gram,
                                           bool admissible = false) {
    QuadraticSpace V;
    V.field = std::move(field);
    V.rank = static_cast<int>(gram.size());
    for (const auto& row : gram)
        if (static_cast<int>(row.size()) != V.rank)
            throw std::invalid_argument("gram matrix must be square");
    for (int i = 0; i < V.rank; ++i)
        for (int j = 0; j < V.rank; ++j)
            if (gram[i][j] != gram[j][i])
                throw std::invalid_argument("gram matrix must be symmetric");
    V.gram = std::move(gram);
    if (V.rank == 0) throw std::invalid_argument("rank must be positive");
    if (V.det().is_zero()) throw std::invalid_argument("gram matrix is degenerate");
    V.admissible = admissible;
    if (admissible) {
        auto sig = signatures(V);
        int n = V.rank - 2;
        if (n < 0 || sig[0] != std::make_pair(n, 2))
            throw std::invalid_argument("admissible space needs signature (n,2) at sigma_1");
        for (std::size_t i = 1; i < sig.size(); ++i)
            if (sig[i] != std::make_pair(V.rank, 0))
                throw std::invalid_argument("admissible space needs definite signature at sigma_i, i>1");
    }
    return V;
}

// One coset of L'/L.
struct Coset {
    FVec rep;            // representative with L-basis coordinates in [0,1)
    QVec lcoords;        // those coordinates
    FieldElem q_value;   // Q(rep) reduced mod the codifferent
};

struct DiscriminantGroup {
    std::vector<Integer> invariant_factors;  // nontrivial ones, divisibility chain
    Integer order = 1;
    std::vector<Coset> cosets;               // index 0 is the zero coset
    std::unordered_map<std::string, int> index_by_key;

    int size() const { return static_cast<int>(cosets.size()); }

    static std::string key_of(const QVec& lcoords) {
        std::string k;
        for (const auto& c : lcoords) {
            k += rational_to_string(c);
            k += ';';
        }
        return k;
    }
    int index_of(const QVec& lcoords_reduced) const {
        auto it = index_by_key.find(key_of(lcoords_reduced));
        if (it == index_by_key.end())
            throw std::invalid_argument("coset representative not found");
        return it->second;
    }
};

class Lattice {
public:
    // zbasis rows are Z-basis vectors of L, each an FVec of length rank.
    // Default: O_F^rank on the field's integral basis.
    static Lattice make(QuadraticSpace space, std::optional<std::vector<FVec>> zbasis = {}) {
        Lattice L;
        L.space_ = std::move(space);
        const auto& F = L.space_.field;
        int d = F->degree(), l = L.space_.rank;
        L.N_ = d * l;
        if (zbasis) {
            if (static_cast<int>(zbasis->size()) != L.N_)
                throw std::invalid_argument("zbasis must have d*rank vectors");
            L.zbasis_ = std::move(*zbasis);
        } else {
            for (int i = 0; i < l; ++i)
                for (int a = 0; a < d; ++a) {
                    FVec v(l, F->zero());
                    v[i] = F->elem(F->unit_coords(a));
                    L.zbasis_.push_back(std::move(v));
                }
        }
        L.finish_init();
        return L;
    }

    const QuadraticSpace& space() const { return space_; }
    const FieldPtr& field() const { return space_.field; }
    int rank() const { return space_.rank; }
    int zrank() const { return N_; }
    const std::vector<FVec>& zbasis() const { return zbasis_; }
    bool is_even() const { return even_; }
    const QMat& tr_gram() const { return tr_gram_; }
    Rational tr_gram_det() const { return tr_det_; }

    // Flattened rational coordinates of v on {omega_a e_i}.
    QVec flatten(const FVec& v) const {
        QVec out;
        out.reserve(N_);
        for (const auto& comp : v)
            for (const auto& c : comp.coords()) out.push_back(c);
        return out;
    }

    // Coordinates of v on the Z-basis (rational; integers iff v in L).
    QVec lattice_coords(const FVec& v) const { return qvec_mat(flatten(v), zb_inv_); }

    bool contains(const FVec& v) const {
        for (const auto& c : lattice_coords(v))
            if (!is_integer(c)) return false;
        return true;
    }

    // The vector with the given (rational) Z-basis coordinates.
    FVec at_coords(const QVec& lc) const {
        const auto& F = space_.field;
        FVec out(space_.rank, F->zero());
        for (int k = 0; k < N_; ++k) {
            if (lc[k] == 0) continue;
            for (int c = 0; c < space_.rank; ++c)
                out[c] = out[c] + zbasis_[k][c] * lc[k];
        }
        return out;
    }

    FieldElem quad_at(const QVec& lc) const {
        const auto& F = space_.field;
        FieldElem acc = F->zero();
        for (int j = 0; j < N_; ++j) {
            if (lc[j] == 0) continue;
            for (int k = 0; k < N_; ++k) {
                if (lc[k] == 0) continue;
                acc = acc + f_gram_[j][k] * (lc[j] * lc[k]);
            }
        }
        return acc * Rational(1, 2);
    }

    // Z-dual with respect to tr Q.
    Lattice z_dual() const {
        auto inv = qmat_inverse(tr_gram_);
        if (!inv) throw std::invalid_argument("z_dual: degenerate trace form");
        std::vector<FVec> dual;
        for (int m = 0; m < N_; ++m) {
            FVec v(space_.rank, space_.field->zero());
            for (int k = 0; k < N_; ++k) {
                if ((*inv)[m][k] == 0) continue;
                for (int c = 0; c < space_.rank; ++c)
                    v[c] = v[c] + zbasis_[k][c] * (*inv)[m][k];
            }
            dual.push_back(std::move(v));
        }
        return make(space_, std::move(dual));
    }

    DiscriminantGroup discriminant_group() const {
        if (!even_) throw std::invalid_argument("discriminant group needs an even lattice");
        const auto& F = space_.field;
        std::vector<std::vector<Integer>> G(N_, std::vector<Integer>(N_));
        for (int i = 0; i < N_; ++i)
            for (int j = 0; j < N_; ++j) {
                if (!is_integer(tr_gram_[i][j]))
                    throw std::invalid_argument("trace Gram of an even lattice must be integral");
                G[i][j] = num(tr_gram_[i][j]);
            }
        auto snf = smith_normal_form(G);
        Lattice dual = z_dual();

        DiscriminantGroup D;
        D.order = 1;
        std::vector<int> gen_rows;
        std::vector<Integer> gen_orders;
        for (int i = 0; i < N_; ++i) {
            if (snf.diag[i] > 1) {
                D.invariant_factors.push_back(snf.diag[i]);
                gen_rows.push_back(i);
                gen_orders.push_back(snf.diag[i]);
            }
            D.order *= snf.diag[i];
        }

        // Enumerate t in prod [0, d_i); rep = sum t_i * (row i of V^{-1}) in
        // dual-basis coordinates, then reduce into [0,1) L-coordinates.
        std::vector<Integer> t(gen_rows.size(), 0);
        while (true) {
            QVec dual_coords(N_, Rational(0));
            for (std::size_t g = 0; g < gen_rows.size(); ++g)
                for (int k = 0; k < N_; ++k)
                    dual_coords[k] += Rational(t[g] * snf.vinv[gen_rows[g]][k]);
            FVec v = dual.at_coords(dual_coords);
            QVec lc = lattice_coords(v);
            for (auto& c : lc) c = fractional_part(c);
            std::string key = DiscriminantGroup::key_of(lc);
            if (!D.index_by_key.count(key)) {
                Coset cs;
                cs.lcoords = lc;
                cs.rep = at_coords(lc);
                cs.q_value = F->reduce_mod_codifferent(space_.quad(cs.rep));
                D.index_by_key[key] = static_cast<int>(D.cosets.size());
                D.cosets.push_back(std::move(cs));
            }
            // mixed-radix increment
            std::size_t g = 0;
            while (g < t.size()) {
                ++t[g];
                if (t[g] < gen_orders[g]) break;
                t[g] = 0;
                ++g;
            }
            if (g == t.size()) break;
            if (t.empty()) break;
        }
        if (Integer(D.cosets.size()) != D.order)
            throw std::runtime_error("discriminant group enumeration mismatch");

        // zero coset first, rest sorted by key for determinism
        std::sort(D.cosets.begin(), D.cosets.end(), [](const Coset& a, const Coset& b) {
            auto az = std::all_of(a.lcoords.begin(), a.lcoords.end(),
                                  [](const Rational& r) { return r == 0; });
            auto bz = std::all_of(b.lcoords.begin(), b.lcoords.end(),
                                  [](const Rational& r) { return r == 0; });
            if (az != bz) return az;
            return DiscriminantGroup::key_of(a.lcoords) < DiscriminantGroup::key_of(b.lcoords);
        });
        D.index_by_key.clear();
        for (int i = 0; i < static_cast<int>(D.cosets.size()); ++i)
            D.index_by_key[DiscriminantGroup::key_of(D.cosets[i].lcoords)] = i;
        return D;
    }

    // Index of -mu in the discriminant group.
    int neg_index(const DiscriminantGroup& D, int i) const {
        QVec lc = D.cosets[i].lcoords;
        for (auto& c : lc) c = fractional_part(-c);
        return D.index_of(lc);
    }

    // Index of u * mu for a field element u with uL = L (e.g. a unit of O_F).
    int scaled_index(const DiscriminantGroup& D, int i, const FieldElem& u) const {
        FVec v = D.cosets[i].rep;
        for (auto& comp : v) comp = comp * u;
        QVec lc = lattice_coords(v);
        for (auto& c : lc) c = fractional_part(c);
        return D.index_of(lc);
    }

    // (mu_i, mu_j) in F (exact, not reduced).
    FieldElem coset_pairing(const DiscriminantGroup& D, int i, int j) const {
        return space_.bilinear(D.cosets[i].rep, D.cosets[j].rep);
    }

private:
    void finish_init() {
        const auto& F = space_.field;
        // flattened basis matrix, rows = basis vectors
        QMat zb = qmat_zero(N_, N_);
        for (int k = 0; k < N_; ++k) {
            QVec f = flatten(zbasis_[k]);
            for (int c = 0; c < N_; ++c) zb[k][c] = f[c];
        }
        auto inv = qmat_inverse(zb);
        if (!inv) throw std::invalid_argument("zbasis is singular");
        zb_inv_ = *inv;

        // O_F-module: closure under multiplication by the integral basis generators
        for (int a = 0; a < F->degree(); ++a) {
            FieldElem w = F->elem(F->unit_coords(a));
            for (const auto& b : zbasis_) {
                FVec wb = b;
                for (auto& comp : wb) comp = comp * w;
                if (!contains(wb))
                    throw std::invalid_argument("zbasis does not span an O_F-module");
            }
        }

        f_gram_.assign(N_, std::vector<FieldElem>(N_, F->zero()));
        tr_gram_ = qmat_zero(N_, N_);
        for (int i = 0; i < N_; ++i)
            for (int j = 0; j < N_; ++j) {
                f_gram_[i][j] = space_.bilinear(zbasis_[i], zbasis_[j]);
                tr_gram_[i][j] = F->trace(f_gram_[i][j]);
            }
        tr_det_ = qmat_det(tr_gram_);
        if (tr_det_ == 0) throw std::invalid_argument("degenerate lattice");

        even_ = true;
        for (int i = 0; i < N_ && even_; ++i) {
            if (!F->in_codifferent(f_gram_[i][i] * Rational(1, 2))) even_ = false;
            for (int j = i + 1; j < N_ && even_; ++j)
                if (!F->in_codifferent(f_gram_[i][j])) even_ = false;
        }
    }

    QuadraticSpace space_;
    std::vector<FVec> zbasis_;
    int N_ = 0;
    QMat zb_inv_;
    std::vector<std::vector<FieldElem>> f_gram_;
    QMat tr_gram_;
    Rational tr_det_;
    bool even_ = false;

    friend struct EmbeddedLattice;
};

// Per-embedding floating data for numerics: coordinates of the Z-basis at
// each real place and the embedded Gram matrices.
struct EmbeddedLattice {
    const Lattice* L = nullptr;
    std::vector<Eigen::MatrixXd> coords;  // d matrices, rank x N
    std::vector<Eigen::MatrixXd> gram;    // d matrices, rank x rank
    std::vector<Eigen::MatrixXd> full;    // d matrices, N x N: tr-gram contribution per place

    explicit EmbeddedLattice(const Lattice& lat) : L(&lat) {
        const auto& F = lat.field();
        int d = F->degree(), l = lat.rank(), N = lat.zrank();
        coords.assign(d, Eigen::MatrixXd::Zero(l, N));
        gram.assign(d, Eigen::MatrixXd::Zero(l, l));
        full.assign(d, Eigen::MatrixXd::Zero(N, N));
        for (int k = 0; k < N; ++k)
            for (int c = 0; c < l; ++c) {
                auto em = F->embed(lat.zbasis()[k][c]);
                for (int i = 0; i < d; ++i) coords[i](c, k) = em[i];
            }
        for (int a = 0; a < l; ++a)
            for (int b = 0; b < l; ++b) {
                auto em = F->embed(lat.space().gram[a][b]);
                for (int i = 0; i < d; ++i) gram[i](a, b) = em[i];
            }
        for (int i = 0; i < d; ++i) full[i] = coords[i].transpose() * gram[i] * coords[i];
    }

    // Real coordinates of the point with (rational) Z-basis coordinates lc at place i.
    Eigen::VectorXd embed_coords(const QVec& lc, int i) const {
        Eigen::VectorXd x(L->zrank());
        for (int k = 0; k < L->zrank(); ++k) x(k) = to_double(lc[k]);
        return coords[i] * x;
    }
};

// Positive definite quadratic form on the Z-coordinate space used to drive
// enumeration.
struct MajorantForm {
    Eigen::MatrixXd mat;  // N x N symmetric positive definite
};

struct EnumPoint {
    std::vector<long> x;  // integer Z-coordinates (shift excluded)
    double value;         // majorant value of x + shift
};

// All x in Z^N with (x+shift)^T A (x+shift) <= bound (+ a small safety
// margin), each exactly once, sorted lexicographically. Fincke-Pohst with a
// floating Cholesky factor.
inline std::vector<EnumPoint> enumerate_majorant(const Lattice& L, const QVec& shift_coords,
                                                 const MajorantForm& A, double bound,
                                                 std::size_t max_points = 200000000) {
    const int N = L.zrank();
    Eigen::LLT<Eigen::MatrixXd> llt(A.mat);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("enumerate_majorant: majorant is not positive definite");
    Eigen::MatrixXd U = llt.matrixL().transpose();  // upper triangular, A = U^T U
    for (int i = 0; i < N; ++i)
        if (!(U(i, i) > 1e-10 * (1.0 + A.mat.norm())))
            throw std::invalid_argument("enumerate_majorant: majorant is numerically singular");

    std::vector<double> r(N);
    for (int i = 0; i < N; ++i) r[i] = to_double(shift_coords[i]);

    const double margin = 1e-9 * std::max(1.0, bound);
    const double R = bound + margin;

    std::vector<EnumPoint> out;
    std::vector<long> x(N, 0);
    std::vector<double> partial(N + 1, 0.0);        // accumulated square terms above level k
    std::vector<double> lin(N, 0.0);                // sum_{j>k} U(k,j) (x_j + r_j)

    std::function<void(int)> descend = [&](int k) {
        if (k < 0) {
            // independent recomputation of the value, straight from A
            Eigen::VectorXd y(N);
            for (int i = 0; i < N; ++i) y(i) = x[i] + r[i];
            double val = y.dot(A.mat * y);
            if (val <= R) {
                if (out.size() >= max_points)
                    throw std::runtime_error("enumerate_majorant: point budget exceeded");
                out.push_back({x, val});
            }
            return;
        }
        double rem = R - partial[k + 1];
        if (rem < 0) return;
        double lk = 0;
        for (int j = k + 1; j < N; ++j) lk += U(k, j) * (x[j] + r[j]);
        double center = -r[k] - lk / U(k, k);
        double halfw = std::sqrt(rem) / U(k, k);
        long lo = static_cast<long>(std::ceil(center - halfw - 1e-12));
        long hi = static_cast<long>(std::floor(center + halfw + 1e-12));
        for (long v = lo; v <= hi; ++v) {
            x[k] = v;
            double term = U(k, k) * (v + r[k]) + lk;
            partial[k] = partial[k + 1] + term * term;
            descend(k - 1);
        }
        x[k] = 0;
    };
    descend(N - 1);

    std::sort(out.begin(), out.end(),
              [](const EnumPoint& a, const EnumPoint& b) { return a.x < b.x; });
    return out;
}

// Exact representation count #{lambda in mu+L : Q(lambda) = m} for a totally
// definite lattice and totally positive m.
inline long representation_count(const Lattice& L, const QVec& coset_lcoords,
                                 const FieldElem& m) {
    auto sig = signatures(L.space());
    for (auto [p, q] : sig)
        if (q != 0) throw std::invalid_argument("representation_count needs a totally definite lattice");
    if (!L.field()->is_totally_positive(m))
        throw std::invalid_argument("representation_count needs totally positive m");

    EmbeddedLattice emb(L);
    MajorantForm A;
    A.mat = Eigen::MatrixXd::Zero(L.zrank(), L.zrank());
    for (int i = 0; i < L.field()->degree(); ++i) A.mat += emb.full[i];
    // tr-Gram is twice tr Q; bound tr Q(lambda) <= tr m means x^T A x <= 2 tr m
    double bound = 2.0 * to_double(L.field()->trace(m));

    long count = 0;
    for (const auto& p : enumerate_majorant(L, coset_lcoords, A, bound)) {
        QVec lc(coset_lcoords);
        for (int k = 0; k < L.zrank(); ++k) lc[k] += p.x[k];
        if (L.quad_at(lc) == m) ++count;
    }
    return count;
}

}  // namespace thetalift
