#pragma once

// Exact rational scalars, small dense rational linear algebra, Smith normal
// form over the integers, and certified real root isolation via Sturm chains.
// Everything here is deterministic; no floating point except the explicit
// to_double conversions.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace thetalift {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using QVec = std::vector<Rational>;
using QMat = std::vector<std::vector<Rational>>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

// floor(p/q) with sign-correct rounding toward -inf.
inline Integer rfloor(const Rational& q) {
    Integer n = num(q), d = den(q);
    Integer t = n / d;
    if (n < 0 && t * d != n) --t;
    return t;
}

// q - floor(q), in [0,1).
inline Rational fractional_part(const Rational& q) {
    return q - Rational(rfloor(q));
}

inline std::string rational_to_string(const Rational& q) {
    std::string s = num(q).str();
    if (den(q) != 1) s += "/" + den(q).str();
    return s;
}

// Accepts "p", "p/q", and optional surrounding whitespace.
inline Rational parse_rational(const std::string& in) {
    std::string s;
    for (char c : in)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer p(s.substr(0, slash)), q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator");
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational literal: " + in);
    }
}

// ---------------------------------------------------------------------------
// Dense rational linear algebra (desk-scale matrices; plain Gauss with
// partial pivoting on exact rationals).

inline QMat qmat_zero(std::size_t r, std::size_t c) {
    return QMat(r, QVec(c, Rational(0)));
}

inline QMat qmat_identity(std::size_t n) {
    QMat m = qmat_zero(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline QMat qmat_mul(const QMat& a, const QMat& b) {
    std::size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    QMat out = qmat_zero(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            Rational s = 0;
            for (std::size_t t = 0; t < k; ++t) s += a[i][t] * b[t][j];
            out[i][j] = s;
        }
    return out;
}

inline QVec qmat_vec(const QMat& a, const QVec& x) {
    QVec out(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < x.size(); ++j) s += a[i][j] * x[j];
        out[i] = s;
    }
    return out;
}

inline QVec qvec_mat(const QVec& x, const QMat& a) {
    std::size_t c = a.empty() ? 0 : a[0].size();
    QVec out(c, Rational(0));
    for (std::size_t j = 0; j < c; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * a[i][j];
        out[j] = s;
    }
    return out;
}

inline QMat qmat_transpose(const QMat& a) {
    std::size_t r = a.size(), c = a.empty() ? 0 : a[0].size();
    QMat out = qmat_zero(c, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) out[j][i] = a[i][j];
    return out;
}

inline Rational qmat_det(QMat a) {
    std::size_t n = a.size();
    Rational d = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            d = -d;
        }
        d *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return d;
}

// Solves A x = b exactly; nullopt when A is singular.
inline std::optional<QVec> qmat_solve(QMat a, QVec b) {
    std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    QVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

inline std::optional<QMat> qmat_inverse(const QMat& a) {
    std::size_t n = a.size();
    QMat aug = a, inv = qmat_identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && aug[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(aug[piv], aug[col]);
        std::swap(inv[piv], inv[col]);
        Rational p = aug[col][col];
        for (std::size_t c = 0; c < n; ++c) {
            aug[col][c] /= p;
            inv[col][c] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || aug[r][col] == 0) continue;
            Rational f = aug[r][col];
            for (std::size_t c = 0; c < n; ++c) {
                aug[r][c] -= f * aug[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

// ---------------------------------------------------------------------------
// Smith normal form over Z.
//
// For a nonsingular square integer matrix A, computes diagonal invariant
// factors d_1 | d_2 | ... | d_n (all positive) together with the inverse of
// the right transform V, where U A V = D.  Row transforms are not tracked.

struct SmithResult {
    std::vector<Integer> diag;               // invariant factors, divisibility chain
    std::vector<std::vector<Integer>> vinv;  // V^{-1}, rows index quotient generators
};

inline SmithResult smith_normal_form(std::vector<std::vector<Integer>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<Integer>> vinv(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) vinv[i][i] = 1;

    auto col_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
        std::swap(vinv[i], vinv[j]);  // row swap on V^{-1}
    };
    auto col_axpy = [&](std::size_t j, std::size_t i, const Integer& c) {
        // col_j += c * col_i;  V^{-1} row_i -= c * row_j
        for (std::size_t r = 0; r < n; ++r) a[r][j] += c * a[r][i];
        for (std::size_t k = 0; k < n; ++k) vinv[i][k] -= c * vinv[j][k];
    };
    auto col_negate = [&](std::size_t i) {
        for (std::size_t r = 0; r < n; ++r) a[r][i] = -a[r][i];
        for (std::size_t k = 0; k < n; ++k) vinv[i][k] = -vinv[i][k];
    };
    auto row_swap = [&](std::size_t i, std::size_t j) { std::swap(a[i], a[j]); };
    auto row_axpy = [&](std::size_t j, std::size_t i, const Integer& c) {
        for (std::size_t k = 0; k < n; ++k) a[j][k] += c * a[i][k];
    };

    for (std::size_t t = 0; t < n; ++t) {
        // Find a nonzero pivot of minimal absolute value in the trailing block.
        while (true) {
            std::size_t pi = n, pj = n;
            Integer best = 0;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a[i][j] != 0 && (best == 0 || abs(a[i][j]) < best)) {
                        best = abs(a[i][j]);
                        pi = i;
                        pj = j;
                    }
            if (pi == n) throw std::runtime_error("smith_normal_form: singular matrix");
            if (pi != t) row_swap(pi, t);
            if (pj != t) col_swap(pj, t);

            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i)
                if (a[i][t] != 0) {
                    Integer q = a[i][t] / a[t][t];
                    row_axpy(i, t, -q);
                    if (a[i][t] != 0) clean = false;
                }
            for (std::size_t j = t + 1; j < n; ++j)
                if (a[t][j] != 0) {
                    Integer q = a[t][j] / a[t][t];
                    col_axpy(j, t, -q);
                    if (a[t][j] != 0) clean = false;
                }
            if (!clean) continue;

            // Enforce divisibility of the remaining block by the pivot.
            bool divides = true;
            for (std::size_t i = t + 1; i < n && divides; ++i)
                for (std::size_t j = t + 1; j < n && divides; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        row_axpy(i, t, 1);  // pull the offending row into row t
                        divides = false;
                    }
            if (divides) break;
        }
        if (a[t][t] < 0) col_negate(t);
    }

    SmithResult res;
    res.diag.resize(n);
    for (std::size_t i = 0; i < n; ++i) res.diag[i] = a[i][i];
    res.vinv = std::move(vinv);
    return res;
}

// ---------------------------------------------------------------------------
// Polynomials with rational coefficients, ascending order (p[0] + p[1] x + ...).

using QPoly = std::vector<Rational>;

inline QPoly poly_trim(QPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

inline int poly_deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

inline Rational poly_eval(const QPoly& p, const Rational& x) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline QPoly poly_derivative(const QPoly& p) {
    QPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(Integer(i)));
    return d;
}

inline QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return poly_trim(out);
}

// Remainder of a by b (b nonzero).
inline QPoly poly_rem(QPoly a, const QPoly& b) {
    a = poly_trim(a);
    QPoly bb = poly_trim(b);
    while (poly_deg(a) >= poly_deg(bb) && !a.empty()) {
        Rational f = a.back() / bb.back();
        std::size_t shift = a.size() - bb.size();
        for (std::size_t i = 0; i < bb.size(); ++i) a[i + shift] -= f * bb[i];
        a = poly_trim(a);
    }
    return a;
}

inline QPoly poly_gcd(QPoly a, QPoly b) {
    a = poly_trim(a);
    b = poly_trim(b);
    while (!b.empty()) {
        QPoly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

// Reduce a modulo monic modulus m, in place semantics.
inline QPoly poly_mod_monic(QPoly a, const QPoly& m) { return poly_rem(std::move(a), m); }

// ---------------------------------------------------------------------------
// Sturm chains, real root isolation and certified refinement.

inline std::vector<QPoly> sturm_chain(const QPoly& f) {
    std::vector<QPoly> chain;
    chain.push_back(poly_trim(f));
    chain.push_back(poly_trim(poly_derivative(f)));
    while (!chain.back().empty() && poly_deg(chain.back()) > 0) {
        QPoly r = poly_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

inline int sturm_sign_changes(const std::vector<QPoly>& chain, const Rational& x) {
    int changes = 0, last = 0;
    for (const auto& p : chain) {
        Rational v = poly_eval(p, x);
        int s = v == 0 ? 0 : (v > 0 ? 1 : -1);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

// Number of real roots of the squarefree polynomial in (a, b].
inline int sturm_count(const std::vector<QPoly>& chain, const Rational& a, const Rational& b) {
    return sturm_sign_changes(chain, a) - sturm_sign_changes(chain, b);
}

struct RootInterval {
    Rational lo, hi;  // lo == hi means the root is exactly rational
    bool exact() const { return lo == hi; }
    Rational mid() const { return (lo + hi) / 2; }
    Rational width() const { return hi - lo; }
};

// Isolating intervals for all real roots of a squarefree polynomial,
// ascending.  Interval endpoints are never roots unless the interval is a
// single exact rational point.
inline std::vector<RootInterval> isolate_real_roots(const QPoly& fin) {
    QPoly f = poly_trim(fin);
    if (poly_deg(f) < 1) return {};
    auto chain = sturm_chain(f);

    Rational bound = 1;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        Rational r = abs(f[i] / f.back());
        if (r > bound) bound = r;
    }
    bound += 1;
    Rational lo = -bound, hi = bound;
    while (poly_eval(f, lo) == 0) lo -= 1;
    while (poly_eval(f, hi) == 0) hi += 1;

    std::vector<RootInterval> out;
    struct Item { Rational a, b; int count; };
    std::vector<Item> work{{lo, hi, sturm_count(chain, lo, hi)}};
    while (!work.empty()) {
        Item it = work.back();
        work.pop_back();
        if (it.count == 0) continue;
        if (it.count == 1) {
            // shrink a bit so later refinement is cheap, keeping endpoints non-roots
            out.push_back({it.a, it.b});
            continue;
        }
        Rational mid = (it.a + it.b) / 2;
        if (poly_eval(f, mid) == 0) {
            out.push_back({mid, mid});
            // Nudge the split points off the root.
            Rational d = (it.b - it.a);
            Rational eps = d;
            Rational l = mid, r = mid;
            do {
                eps /= 4;
                l = mid - eps;
                r = mid + eps;
            } while (poly_eval(f, l) == 0 || poly_eval(f, r) == 0);
            work.push_back({it.a, l, sturm_count(chain, it.a, l)});
            work.push_back({r, it.b, sturm_count(chain, r, it.b)});
        } else {
            work.push_back({it.a, mid, sturm_count(chain, it.a, mid)});
            work.push_back({mid, it.b, sturm_count(chain, mid, it.b)});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    return out;
}

// Bisect an isolating interval until its width is at most `width`.
inline RootInterval refine_root(const QPoly& f, RootInterval iv, const Rational& width) {
    if (iv.exact()) return iv;
    Rational flo = poly_eval(f, iv.lo);
    while (iv.width() > width) {
        Rational mid = iv.mid();
        Rational fm = poly_eval(f, mid);
        if (fm == 0) return {mid, mid};
        if ((flo > 0) == (fm > 0)) {
            iv.lo = mid;
            flo = fm;
        } else {
            iv.hi = mid;
        }
    }
    return iv;
}

// Closed rational interval arithmetic, enough for certified polynomial signs.
struct QInterval {
    Rational lo, hi;
    static QInterval point(const Rational& x) { return {x, x}; }
    QInterval operator+(const QInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    QInterval operator*(const QInterval& o) const {
        Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return {std::min(std::min(a, b), std::min(c, d)),
                std::max(std::max(a, b), std::max(c, d))};
    }
    int sign() const {
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        return 0;  // undetermined (or genuinely zero)
    }
};

inline QInterval poly_eval_interval(const QPoly& p, const QInterval& x) {
    QInterval acc = QInterval::point(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * x + QInterval::point(*it);
    return acc;
}

}  // namespace thetalift
