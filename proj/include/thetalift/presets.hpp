#pragma once

// Ready-made fields and lattices used in the worked examples and the test
// batteries: Q, Q(sqrt 3) with its even unimodular lattices, the totally real
// cubic field of discriminant 49, and a small indefinite lattice over Q.

#include "field.hpp"
#include "lattice.hpp"

namespace thetalift::presets {

inline FieldPtr rational_field() { return NumberField::rationals(); }

// Q(sqrt 3), basis {1, sqrt3}; sigma_1 is the embedding with sqrt3 > 0.
inline FieldPtr sqrt3_field() {
    return NumberField::make_power_basis({Rational(-3), Rational(0), Rational(1)},
                                         /*sigma1_root_index=*/1);
}

// Q(2 cos(2 pi / 7)) = Q[x]/(x^3 + x^2 - 2x - 1), discriminant 49.
// sigma_1 is the embedding sending the generator to 2 cos(2 pi / 7) = 1.2469...
inline FieldPtr cubic_field_disc49() {
    return NumberField::make_power_basis(
        {Rational(-1), Rational(-2), Rational(1), Rational(1)}, /*sigma1_root_index=*/2);
}

// Gram matrix over Q(sqrt 3) from integer pairs (a, b) meaning a + b*sqrt(3).
inline std::vector<std::vector<FieldElem>> sqrt3_gram(
    const FieldPtr& F, const std::vector<std::vector<std::pair<Rational, Rational>>>& g) {
    std::vector<std::vector<FieldElem>> out;
    for (const auto& row : g) {
        std::vector<FieldElem> r;
        for (const auto& [a, b] : row) r.push_back(F->elem({a, b}));
        out.push_back(std::move(r));
    }
    return out;
}

// Even unimodular O_F-lattice of signature ((4,0),(4,0)) over Q(sqrt 3);
// its trace form is the E8 lattice.
inline Lattice sqrt3_L0(const FieldPtr& F) {
    using P = std::pair<Rational, Rational>;
    Rational h(1, 2), s(1, 6);
    std::vector<std::vector<P>> g = {
        {P{2, -1}, P{-h, h}, P{h, -s}, P{0, s}},
        {P{-h, h}, P{3, 0}, P{0, h}, P{-h, -s}},
        {P{h, -s}, P{0, h}, P{1, 0}, P{h, h}},
        {P{0, s}, P{-h, -s}, P{h, h}, P{2, 1}},
    };
    return Lattice::make(make_quadratic_space(F, sqrt3_gram(F, g)));
}

// Even unimodular O_F-lattice of signature ((0,2),(2,0)) over Q(sqrt 3):
// Gram -(1/sqrt D) [[2, a],[a, 2b]] with a = sqrt 3, b = 1, D = 12.
inline Lattice sqrt3_L1(const FieldPtr& F) {
    using P = std::pair<Rational, Rational>;
    Rational t(1, 3), h(1, 2);
    std::vector<std::vector<P>> g = {
        {P{0, -t}, P{-h, 0}},
        {P{-h, 0}, P{0, -t}},
    };
    return Lattice::make(make_quadratic_space(F, sqrt3_gram(F, g)));
}

// Orthogonal direct sum on the default O_F^l basis.
inline Lattice direct_sum(const Lattice& A, const Lattice& B) {
    const auto& F = A.field();
    int ra = A.rank(), rb = B.rank(), r = ra + rb;
    std::vector<std::vector<FieldElem>> g(r, std::vector<FieldElem>(r, F->zero()));
    for (int i = 0; i < ra; ++i)
        for (int j = 0; j < ra; ++j) g[i][j] = A.space().gram[i][j];
    for (int i = 0; i < rb; ++i)
        for (int j = 0; j < rb; ++j) g[ra + i][ra + j] = B.space().gram[i][j];
    return Lattice::make(make_quadratic_space(F, std::move(g)));
}

// The signature ((4,2),(6,0)) even unimodular lattice L0 + L1 over Q(sqrt 3).
inline Lattice sqrt3_L(const FieldPtr& F) { return direct_sum(sqrt3_L0(F), sqrt3_L1(F)); }

// Small lattices over Q used throughout the tests.
inline Lattice a1_lattice() {
    auto F = rational_field();
    return Lattice::make(make_quadratic_space(F, {{F->from_rational(2)}}));
}

inline Lattice hyperbolic_plane() {
    auto F = rational_field();
    auto z = F->zero(), o = F->one();
    return Lattice::make(make_quadratic_space(F, {{z, o}, {o, z}}));
}

// Even lattice of signature (1,2) over Q, Gram diag(2,-4,-2).  The isometry
// (x,y,z) -> (3x+4y, 2x+3y, z) generates an infinite hyperbolic subgroup of
// its automorphisms.
inline Lattice rational_lattice_sig12() {
    auto F = rational_field();
    auto e = [&](long v) { return F->from_rational(Rational(v)); };
    auto z = F->zero();
    return Lattice::make(make_quadratic_space(
        F, {{e(2), z, z}, {z, e(-4), z}, {z, z, e(-2)}}));
}

// Exact Pell isometry of rational_lattice_sig12 (fixes the lattice).
inline std::vector<std::vector<FieldElem>> pell_isometry(const FieldPtr& F) {
    auto e = [&](long v) { return F->from_rational(Rational(v)); };
    return {{e(3), e(4), e(0)}, {e(2), e(3), e(0)}, {e(0), e(0), e(1)}};
}

}  // namespace thetalift::presets
