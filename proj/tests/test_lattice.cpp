#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "thetalift/lattice.hpp"
#include "thetalift/presets.hpp"

using namespace thetalift;

namespace {
bool same_span(const Lattice& A, const Lattice& B) {
    for (const auto& v : A.zbasis())
        if (!B.contains(v)) return false;
    for (const auto& v : B.zbasis())
        if (!A.contains(v)) return false;
    return true;
}
}  // namespace

TEST_CASE("A1 dual and discriminant group") {
    auto L = presets::a1_lattice();
    REQUIRE(L.is_even());
    auto D = L.z_dual();
    CHECK(D.contains(L.zbasis()[0]));
    CHECK_FALSE(L.contains(D.zbasis()[0]));
    CHECK(L.tr_gram_det() == 2);

    auto G = L.discriminant_group();
    REQUIRE(G.order == 2);
    REQUIRE(G.invariant_factors == std::vector<Integer>{2});
    REQUIRE(G.size() == 2);
    CHECK(G.cosets[0].lcoords == QVec{Rational(0)});
    CHECK(G.cosets[1].lcoords == QVec{Rational(1, 2)});
    // Q(mu) = 1/4 mod 1 on the nonzero coset
    CHECK(G.cosets[1].q_value.coords() == QVec{Rational(1, 4)});
}

TEST_CASE("hyperbolic plane is unimodular") {
    auto L = presets::hyperbolic_plane();
    REQUIRE(L.is_even());
    CHECK(abs(L.tr_gram_det()) == 1);
    CHECK(same_span(L, L.z_dual()));
    CHECK(L.discriminant_group().order == 1);
}

TEST_CASE("A1 + A1 discriminant group is (Z/2)^2") {
    auto L = presets::direct_sum(presets::a1_lattice(), presets::a1_lattice());
    auto G = L.discriminant_group();
    CHECK(G.order == 4);
    CHECK(G.invariant_factors == std::vector<Integer>{2, 2});
    CHECK(G.size() == 4);
}

TEST_CASE("sqrt3 example lattices are even unimodular with the stated signatures") {
    auto F = presets::sqrt3_field();
    auto L0 = presets::sqrt3_L0(F);
    auto L1 = presets::sqrt3_L1(F);
    REQUIRE(L0.is_even());
    REQUIRE(L1.is_even());
    CHECK(abs(L0.tr_gram_det()) == 1);
    CHECK(abs(L1.tr_gram_det()) == 1);

    auto s0 = signatures(L0.space());
    CHECK(s0 == std::vector<std::pair<int, int>>{{4, 0}, {4, 0}});
    auto s1 = signatures(L1.space());
    CHECK(s1 == std::vector<std::pair<int, int>>{{0, 2}, {2, 0}});

    auto L = presets::sqrt3_L(F);
    REQUIRE(L.is_even());
    CHECK(same_span(L, L.z_dual()));
    CHECK(L.discriminant_group().order == 1);
    auto s = signatures(L.space());
    CHECK(s == std::vector<std::pair<int, int>>{{4, 2}, {6, 0}});
}

TEST_CASE("diag(1,-1) over Q has signature (1,1)") {
    auto F = presets::rational_field();
    auto V = make_quadratic_space(F, {{F->one(), F->zero()}, {F->zero(), -F->one()}});
    CHECK(signatures(V) == std::vector<std::pair<int, int>>{{1, 1}});
}

TEST_CASE("trace form of sqrt3 L0 is E8") {
    auto F = presets::sqrt3_field();
    auto L0 = presets::sqrt3_L0(F);
    REQUIRE(L0.zrank() == 8);
    // even: diagonal of the trace Gram is even
    for (int i = 0; i < 8; ++i) {
        REQUIRE(is_integer(L0.tr_gram()[i][i]));
        CHECK(num(L0.tr_gram()[i][i]) % 2 == 0);
    }
    CHECK(abs(L0.tr_gram_det()) == 1);

    EmbeddedLattice emb(L0);
    MajorantForm A{emb.full[0] + emb.full[1]};
    QVec zero(8, Rational(0));
    long roots = 0;
    for (const auto& p : enumerate_majorant(L0, zero, A, 2.0)) {
        QVec lc = zero;
        for (int k = 0; k < 8; ++k) lc[k] = Rational(p.x[k]);
        if (F->trace(L0.quad_at(lc)) == 1) ++roots;  // (lambda,lambda)_trace = 2
    }
    CHECK(roots == 240);
}

TEST_CASE("enumeration on the A1 coset") {
    auto L = presets::a1_lattice();
    auto G = L.discriminant_group();
    EmbeddedLattice emb(L);
    MajorantForm A{emb.full[0]};
    // Q(lambda) = 1/4 at the two minimal vectors +-1/2, majorant value 1/2
    auto pts = enumerate_majorant(L, G.cosets[1].lcoords, A, 0.5);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].x == std::vector<long>{-1});
    CHECK(pts[1].x == std::vector<long>{0});

    // below the minimum: empty
    CHECK(enumerate_majorant(L, G.cosets[1].lcoords, A, 0.4).empty());
}

TEST_CASE("representation counts") {
    auto L = presets::a1_lattice();
    auto F = L.field();
    auto G = L.discriminant_group();
    CHECK(representation_count(L, G.cosets[0].lcoords, F->one()) == 2);  // x^2 = 1
    CHECK(representation_count(L, G.cosets[0].lcoords, F->from_rational(3)) == 0);
    CHECK_THROWS(representation_count(presets::rational_lattice_sig12(),
                                      QVec(3, Rational(0)), F->one()));
}

TEST_CASE("representation counts bucket the E8 norm-2 vectors") {
    auto F = presets::sqrt3_field();
    auto L0 = presets::sqrt3_L0(F);
    QVec zero(8, Rational(0));
    // All totally positive m with tr m = 2 that occur as Q(lambda) of a
    // tr-norm-2 vector; their counts must sum to 240.
    EmbeddedLattice emb(L0);
    MajorantForm A{emb.full[0] + emb.full[1]};
    std::map<std::string, std::pair<FieldElem, long>> buckets;
    for (const auto& p : enumerate_majorant(L0, zero, A, 2.0)) {
        QVec lc = zero;
        for (int k = 0; k < 8; ++k) lc[k] = Rational(p.x[k]);
        FieldElem q = L0.quad_at(lc);
        if (F->trace(q) != 1) continue;
        auto key = q.to_string();
        if (!buckets.count(key)) buckets[key] = {q, 0};
        buckets[key].second++;
    }
    long total = 0;
    for (auto& [key, entry] : buckets) {
        CHECK(F->is_totally_positive(entry.first));
        CHECK(representation_count(L0, zero, entry.first) == entry.second);
        total += entry.second;
    }
    CHECK(total == 240);
}

TEST_CASE("dual of dual returns the lattice, pairings land in the codifferent") {
    std::mt19937 rng(123);
    for (int t = 0; t < 6; ++t) {
        int d = 1 + (t % 2);
        int rank = 1 + static_cast<int>(rng() % 3);
        auto L = testutil::random_even_lattice(rng, d, rank);
        auto D = L.z_dual();
        CHECK(same_span(L, D.z_dual()));

        const auto& F = L.field();
        for (const auto& a : L.zbasis())
            for (const auto& b : D.zbasis())
                CHECK(F->in_codifferent(L.space().bilinear(a, b)));

        // L subset L'
        for (const auto& a : L.zbasis()) CHECK(D.contains(a));

        auto G = L.discriminant_group();
        CHECK(G.order == abs(num(L.tr_gram_det())));
        Integer prod = 1;
        for (const auto& f : G.invariant_factors) prod *= f;
        CHECK(prod == G.order);

        // each coset rep pairs into the codifferent with L
        for (const auto& c : G.cosets)
            for (const auto& b : L.zbasis())
                CHECK(F->in_codifferent(L.space().bilinear(c.rep, b)));
    }
}

TEST_CASE("enumeration symmetry between mu and -mu") {
    std::mt19937 rng(77);
    auto L = testutil::random_even_lattice(rng, 1, 2);
    // make it definite for a finite check: fall back to A1+A1 if indefinite
    auto sig = signatures(L.space());
    if (sig[0].second != 0) L = presets::direct_sum(presets::a1_lattice(), presets::a1_lattice());
    auto G = L.discriminant_group();
    EmbeddedLattice emb(L);
    MajorantForm A{emb.full[0]};
    for (int i = 0; i < G.size(); ++i) {
        int ni = L.neg_index(G, i);
        auto p1 = enumerate_majorant(L, G.cosets[i].lcoords, A, 6.0);
        auto p2 = enumerate_majorant(L, G.cosets[ni].lcoords, A, 6.0);
        REQUIRE(p1.size() == p2.size());
        std::multiset<long long> v1, v2;
        for (const auto& p : p1) v1.insert(llround(p.value * 1e6));
        for (const auto& p : p2) v2.insert(llround(p.value * 1e6));
        CHECK(v1 == v2);
    }
}

TEST_CASE("non-O_F-module zbasis is rejected") {
    auto F = presets::sqrt3_field();
    auto V = make_quadratic_space(F, {{F->from_rational(2)}});
    // {1*e, 2*sqrt3*e} is a Z-module but not closed under sqrt3
    std::vector<FVec> zb = {{F->elem({Rational(1), Rational(0)})},
                            {F->elem({Rational(0), Rational(2)})}};
    CHECK_THROWS(Lattice::make(V, zb));
}

TEST_CASE("non-positive-definite majorant is rejected") {
    auto L = presets::rational_lattice_sig12();
    EmbeddedLattice emb(L);
    MajorantForm bad{emb.full[0]};  // indefinite
    CHECK_THROWS(enumerate_majorant(L, QVec(3, Rational(0)), bad, 1.0));
}
