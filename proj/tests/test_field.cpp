#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "thetalift/field.hpp"
#include "thetalift/presets.hpp"

using namespace thetalift;

TEST_CASE("rational field has discriminant 1") {
    auto F = NumberField::rationals();
    REQUIRE(F->degree() == 1);
    REQUIRE(F->discriminant() == 1);
}

TEST_CASE("Q(sqrt 3) discriminant and trace form") {
    auto F = presets::sqrt3_field();
    // trace-form Gram on {1, sqrt3} is [[2,0],[0,6]], det 12
    REQUIRE(F->trace_form() == QMat{{Rational(2), Rational(0)}, {Rational(0), Rational(6)}});
    REQUIRE(F->discriminant() == 12);
}

TEST_CASE("cubic field x^3+x^2-2x-1 has discriminant 49") {
    auto F = presets::cubic_field_disc49();
    REQUIRE(F->discriminant() == 49);
}

TEST_CASE("make_field rejects bad input") {
    // not totally real
    CHECK_THROWS(NumberField::make_power_basis({Rational(1), Rational(0), Rational(1)}));
    // non-monic
    CHECK_THROWS(NumberField::make_power_basis({Rational(-3), Rational(0), Rational(2)}));
    // basis not a ring: {1, sqrt3/2} has (sqrt3/2)^2 = 3/4 not in span
    CHECK_THROWS(NumberField::make({Rational(-3), Rational(0), Rational(1)},
                                   QMat{{Rational(1), Rational(0)}, {Rational(0), Rational(1, 2)}},
                                   0));
}

TEST_CASE("embeddings of sqrt3 and the cubic generator") {
    auto F = presets::sqrt3_field();
    auto s3 = F->elem({Rational(0), Rational(1)});
    auto e = F->embed(s3);
    REQUIRE(e.size() == 2);
    // sigma1 designated as the positive root in the preset
    CHECK(e[0] == Catch::Approx(1.7320508075688772).epsilon(1e-12));
    CHECK(e[1] == Catch::Approx(-1.7320508075688772).epsilon(1e-12));

    auto ones = F->embed(F->one());
    CHECK(ones[0] == Catch::Approx(1.0));
    CHECK(ones[1] == Catch::Approx(1.0));

    auto C = presets::cubic_field_disc49();
    auto th = C->elem({Rational(0), Rational(1), Rational(0)});
    auto r = C->embed(th);
    std::sort(r.begin(), r.end());
    // roots of x^3+x^2-2x-1: 2cos(2 pi k/7)
    CHECK(r[0] == Catch::Approx(-1.8019377358048383).epsilon(1e-10));
    CHECK(r[1] == Catch::Approx(-0.4450418679126289).epsilon(1e-10));
    CHECK(r[2] == Catch::Approx(1.2469796037174672).epsilon(1e-10));
}

TEST_CASE("trace and norm") {
    auto F = presets::sqrt3_field();
    auto s3 = F->elem({Rational(0), Rational(1)});
    auto two_plus = F->elem({Rational(2), Rational(1)});
    CHECK(F->trace(s3) == 0);
    CHECK(F->norm(s3) == -3);
    CHECK(F->trace(two_plus) == 4);
    CHECK(F->norm(two_plus) == 1);

    auto C = presets::cubic_field_disc49();
    auto th = C->elem({Rational(0), Rational(1), Rational(0)});
    CHECK(C->trace(th) == -1);
}

TEST_CASE("codifferent as trace dual") {
    auto Q = NumberField::rationals();
    CHECK(Q->codifferent().basis == QMat{{Rational(1)}});

    auto F = presets::sqrt3_field();
    auto cd = F->codifferent().basis;
    // Z-basis {1/2, sqrt3/6}
    CHECK(cd == QMat{{Rational(1, 2), Rational(0)}, {Rational(0), Rational(1, 6)}});

    auto C = presets::cubic_field_disc49();
    auto cd3 = C->codifferent().basis;
    CHECK(abs(qmat_det(cd3)) == Rational(1, 49));

    // trace duality is exact: tr(x*y) integer for x in codifferent basis, y in O_F basis
    for (const auto& row : cd3) {
        FieldElem x = C->elem(row);
        for (int j = 0; j < 3; ++j) {
            FieldElem y = C->elem(C->unit_coords(j));
            CHECK(is_integer(C->trace(x * y)));
        }
    }
}

TEST_CASE("total positivity") {
    auto F = presets::sqrt3_field();
    CHECK(F->is_totally_positive(F->elem({Rational(2), Rational(1)})));      // 2+sqrt3
    CHECK_FALSE(F->is_totally_positive(F->from_rational(-1)));
    CHECK_FALSE(F->is_totally_positive(F->elem({Rational(1), Rational(1)})));  // 1+sqrt3
    CHECK_FALSE(F->is_totally_positive(F->zero()));
}

TEST_CASE("total positivity closed under sum and product") {
    auto F = presets::sqrt3_field();
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> coef(-6, 6);
    int found = 0;
    while (found < 25) {
        FieldElem x = F->elem({Rational(coef(rng)), Rational(coef(rng))});
        FieldElem y = F->elem({Rational(coef(rng)), Rational(coef(rng))});
        if (!F->is_totally_positive(x) || !F->is_totally_positive(y)) continue;
        ++found;
        CHECK(F->is_totally_positive(x * y));
        CHECK(F->is_totally_positive(x + y));
    }
}

TEST_CASE("trace and norm agree with floating embeddings") {
    auto C = presets::cubic_field_disc49();
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> coef(-1000000, 1000000);
    for (int t = 0; t < 20; ++t) {
        FieldElem x = C->elem({Rational(coef(rng)), Rational(coef(rng)), Rational(coef(rng))});
        QVec em = C->embed_exact(x, C->precision_digits());
        Rational s = 0, p = 1;
        for (const auto& v : em) {
            s += v;
            p *= v;
        }
        Rational tol = Rational(1, Integer("10000000000000000000000000000"));  // 1e-28 slack
        CHECK(abs(s - C->trace(x)) < tol * (1 + abs(C->trace(x))));
        CHECK(abs(p - C->norm(x)) < tol * (1 + abs(C->norm(x))));
    }
}

TEST_CASE("inverse and units") {
    auto F = presets::sqrt3_field();
    auto u = F->elem({Rational(2), Rational(1)});  // fundamental unit 2+sqrt3
    auto ui = F->inverse(u);
    REQUIRE(ui.has_value());
    CHECK((u * *ui) == F->one());
    CHECK(ui->coords() == QVec{Rational(2), Rational(-1)});
    CHECK_FALSE(F->inverse(F->zero()).has_value());
}
