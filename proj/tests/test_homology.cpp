#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gch/classes.hpp"
#include "gch/homology.hpp"

#include "corpus.hpp"

using namespace gch;
using gchtest::load;

namespace {
const FieldSpec kQ = FieldSpec::rationals();
}

TEST_CASE("point configurations: betti(0,0) = 1") {
    for (const auto& name : gchtest::small_corpus()) {
        Graph g = load(name);
        CHECK(betti(g, kQ, 0, 0, ComplexVariant::reduced(g)) == 1);
    }
}

TEST_CASE("two particles on the 3-star form a circle") {
    Graph g = load("s3");
    CHECK(betti(g, kQ, 1, 2, ComplexVariant::reduced(g)) == 1);
    CHECK(betti(g, kQ, 1, 2, ComplexVariant::full(g)) == 1);
}

TEST_CASE("three particles on the 4-banana form a genus-3 surface") {
    Graph g = load("banana4");
    ComplexVariant red = ComplexVariant::reduced(g);
    for (const FieldSpec& field : {kQ, FieldSpec::prime(2), FieldSpec::prime(3)}) {
        CHECK(betti(g, field, 0, 3, red) == 1);
        CHECK(betti(g, field, 1, 3, red) == 6);
        CHECK(betti(g, field, 2, 3, red) == 1);
    }
}

TEST_CASE("configurations on a circle stay a circle") {
    Graph g = load("triangle");
    for (int k = 1; k <= 4; ++k) {
        CHECK(betti(g, kQ, 1, k, ComplexVariant::reduced(g)) == 1);
        CHECK(betti(g, kQ, 1, k, ComplexVariant::full(g)) == 1);
    }
}

TEST_CASE("betti table rectangles") {
    Graph g = load("s3");
    BettiTable t = betti_table(g, kQ, 1, 2, ComplexVariant::reduced(g));
    CHECK(t.entries.at({0, 0}) == 1);
    CHECK(t.entries.at({0, 1}) == 1);
    CHECK(t.entries.at({0, 2}) == 1);
    CHECK(t.entries.at({1, 0}) == 0);
    CHECK(t.entries.at({1, 1}) == 0);
    CHECK(t.entries.at({1, 2}) == 1);

    BettiTable tiny = betti_table(g, kQ, 0, 0, ComplexVariant::reduced(g));
    CHECK(tiny.entries.size() == 1);
    CHECK(tiny.entries.at({0, 0}) == 1);
}

TEST_CASE("parallel table assembly matches the sequential one") {
    Graph g = load("theta3");
    EngineOptions serial;
    EngineOptions parallel;
    parallel.workers = 4;
    BettiTable a = betti_table(g, kQ, 2, 5, ComplexVariant::reduced(g), serial);
    BettiTable b = betti_table(g, kQ, 2, 5, ComplexVariant::reduced(g), parallel);
    CHECK(a.entries == b.entries);
}

TEST_CASE("euler characteristic is the alternating dimension sum") {
    for (const auto& name : {"triangle", "s3", "theta3", "lollipop"}) {
        Graph g = load(name);
        ComplexVariant red = ComplexVariant::reduced(g);
        BettiTable t = betti_table(g, kQ, g.vertex_count(), 5, red);
        for (int k = 0; k <= 5; ++k) {
            long long chi_h = 0, chi_c = 0;
            for (int i = 0; i <= g.vertex_count(); ++i) {
                long long sign = (i % 2 == 0) ? 1 : -1;
                chi_h += sign * t.entries.at({i, k});
                chi_c += sign * basis_dimension(g, red, i, k);
            }
            CHECK(chi_h == chi_c);
        }
    }
}

TEST_CASE("integral homology of trees is free") {
    Graph g = load("s3");
    auto [rank, torsion] = integral_homology(g, 1, 2, ComplexVariant::reduced(g));
    CHECK(rank == 1);
    CHECK(torsion.empty());
}

TEST_CASE("H_0 is free with the component count of the configuration space") {
    Graph g = load("lollipop");
    for (int k = 0; k <= 4; ++k) {
        auto [rank, torsion] = integral_homology(g, 0, k, ComplexVariant::reduced(g));
        CHECK(torsion.empty());
        CHECK(rank == betti(g, kQ, 0, k, ComplexVariant::reduced(g)));
    }
}

TEST_CASE("two points on K5: even torsion detects non-planarity") {
    Graph g = load("k5");
    ComplexVariant red = ComplexVariant::reduced(g);
    auto [rank, torsion] = integral_homology(g, 1, 2, red);
    REQUIRE(!torsion.empty());
    for (const auto& d : torsion) CHECK(d % 2 == 0);

    long long dim_q = betti(g, kQ, 1, 2, red);
    long long dim_f2 = betti(g, FieldSpec::prime(2), 1, 2, red);
    CHECK(rank == dim_q);
    CHECK(dim_f2 > dim_q);
    // universal coefficients: no torsion in degree 0, so the F2 jump counts
    // exactly the even invariant factors in degree 1
    long long evens = 0;
    for (const auto& d : torsion)
        if (d % 2 == 0) ++evens;
    CHECK(dim_f2 == dim_q + evens);
    // no odd torsion at this bidegree
    for (const auto& d : torsion) {
        mpz_class rest = d;
        while (rest % 2 == 0) rest /= 2;
        CHECK(rest == 1);
    }
}

TEST_CASE("universal coefficients bookkeeping on the theta graph") {
    Graph g = load("theta3");
    ComplexVariant red = ComplexVariant::reduced(g);
    for (int i = 0; i <= 2; ++i)
        for (int k = 0; k <= 4; ++k) {
            auto [rank, torsion] = integral_homology(g, i, k, red);
            auto [rank_prev, torsion_prev] =
                i == 0 ? std::make_pair(0ll, std::vector<mpz_class>{})
                       : integral_homology(g, i - 1, k, red);
            (void)rank_prev;
            for (std::uint64_t p : {2ull, 3ull, 5ull}) {
                long long here = 0, below = 0;
                for (const auto& d : torsion)
                    if (d % static_cast<long>(p) == 0) ++here;
                for (const auto& d : torsion_prev)
                    if (d % static_cast<long>(p) == 0) ++below;
                CHECK(betti(g, FieldSpec::prime(p), i, k, red) == rank + here + below);
            }
        }
}

TEST_CASE("field independence away from torsion") {
    Graph g = load("htree");
    ComplexVariant red = ComplexVariant::reduced(g);
    for (int i = 0; i <= 2; ++i)
        for (int k = 0; k <= 4; ++k) {
            auto [rank, torsion] = integral_homology(g, i, k, red);
            auto torsion_below =
                i == 0 ? std::vector<mpz_class>{} : integral_homology(g, i - 1, k, red).second;
            if (!torsion.empty() || !torsion_below.empty()) continue;
            for (std::uint64_t p : {2ull, 3ull})
                CHECK(betti(g, FieldSpec::prime(p), i, k, red) == rank);
        }
}

TEST_CASE("is_boundary") {
    Graph g = load("s3");
    ComplexVariant red = ComplexVariant::reduced(g);
    CHECK(is_boundary(g, red, kQ, Chain{})); // zero chain

    // the star representative generates H_1(B_2) and does not bound
    StarSpec spec{g.vertex_index("a"),
                  {g.half_index("ab:0"), g.half_index("ac:0"), g.half_index("ad:0")},
                  +1};
    Chain star = star_class(g, red, spec);
    CHECK_FALSE(is_boundary(g, red, kQ, star));

    // boundaries bound
    Graph theta = load("theta3");
    ComplexVariant tred = ComplexVariant::reduced(theta);
    for (const auto& elem : enumerate_basis(theta, tred, 2, 3)) {
        Chain c;
        c.add_term(elem, 1);
        CHECK(is_boundary(theta, tred, kQ, apply_differential(theta, tred, c)));
    }

    // non-cycles are rejected
    Chain not_cycle = encode_chain(g, red, {{1, "e:ab d:ac:0"}});
    CHECK_THROWS_AS(is_boundary(g, red, kQ, not_cycle), InputError);
}

TEST_CASE("quotient rank of cycle spans") {
    Graph g = load("s3");
    ComplexVariant red = ComplexVariant::reduced(g);
    CHECK(homology_quotient_rank(g, red, kQ, {}) == 0);

    StarSpec spec{g.vertex_index("a"),
                  {g.half_index("ab:0"), g.half_index("ac:0"), g.half_index("ad:0")},
                  +1};
    Chain star = star_class(g, red, spec);
    CHECK(homology_quotient_rank(g, red, kQ, {star}) == 1);
    CHECK(homology_quotient_rank(g, red, kQ, {star, star.scaled(3)}) == 1);

    Graph theta = load("theta3");
    ComplexVariant tred = ComplexVariant::reduced(theta);
    auto basis = enumerate_basis(theta, tred, 2, 3);
    Chain c;
    c.add_term(basis.front(), 1);
    Chain boundary = apply_differential(theta, tred, c);
    CHECK(homology_quotient_rank(theta, tred, kQ, {boundary}) == 0);
    Chain bad = encode_chain(theta, tred, {{1, "e:x d:y:0"}});
    CHECK_THROWS_AS(homology_quotient_rank(theta, tred, kQ, {bad}), InputError);
}

TEST_CASE("exactness of the explosion sequence: path graph (contractible)") {
    Graph g = load("path3");
    VertexId mid = g.vertex_index("b");
    for (int i = 0; i <= 1; ++i)
        for (int k = 0; k <= 3; ++k) {
            LesReport rep = les_check(g, mid, i, k, kQ);
            CHECK(rep.passed());
        }
}

TEST_CASE("exactness of the explosion sequence: subdivided lollipop") {
    auto sub = load("lollipop").subdivide(0); // subdivide the loop
    const Graph& g = sub.graph;
    VertexId mid = g.vertex_index(sub.new_vertex);
    for (int i = 0; i <= 1; ++i)
        for (int k = 0; k <= 4; ++k) {
            LesReport rep = les_check(g, mid, i, k, kQ);
            CHECK_MESSAGE(rep.passed(), "i=", i, " k=", k);
        }
}

TEST_CASE("exactness of the explosion sequence: subdivided theta") {
    auto sub = load("theta3").subdivide(0);
    const Graph& g = sub.graph;
    VertexId mid = g.vertex_index(sub.new_vertex);
    for (int i = 0; i <= 1; ++i)
        for (int k = 0; k <= 3; ++k) {
            LesReport rep = les_check(g, mid, i, k, kQ);
            CHECK_MESSAGE(rep.passed(), "i=", i, " k=", k);
        }
}

TEST_CASE("les_check rejects bad vertices") {
    Graph g = load("s3");
    CHECK_THROWS_AS(les_check(g, g.vertex_index("a"), 1, 2, kQ), InputError);
    CHECK_THROWS_AS(les_check(g, 99, 1, 2, kQ), InputError);
}

TEST_CASE("kunneth: disjoint unions convolve") {
    CHECK(kunneth_check(load("s3"), load("interval"), kQ, 1, 3));
    CHECK(kunneth_check(load("triangle"), load("triangle"), kQ, 1, 3));

    // two intervals: k+1 ways to split the particles, all contractible
    Graph two = disjoint_union(load("interval"), load("interval"));
    for (int k = 0; k <= 4; ++k)
        CHECK(betti(two, kQ, 0, k, ComplexVariant::reduced(two)) == k + 1);
}

TEST_CASE("full and reduced variants agree (spot checks)") {
    for (const auto& name : {"lollipop", "theta3", "htree"}) {
        Graph g = load(name);
        for (int i = 0; i <= 2; ++i)
            for (int k = 0; k <= 4; ++k)
                CHECK(betti(g, kQ, i, k, ComplexVariant::full(g)) ==
                      betti(g, kQ, i, k, ComplexVariant::reduced(g)));
    }
    Graph k5 = load("k5");
    CHECK(betti(k5, kQ, 1, 2, ComplexVariant::full(k5)) ==
          betti(k5, kQ, 1, 2, ComplexVariant::reduced(k5)));
}

TEST_CASE("subdivision invariance (spot checks)") {
    for (const auto& name : {"s3", "theta3", "lollipop"}) {
        Graph g = load(name);
        Graph h = g.subdivide(0).graph;
        for (int i = 0; i <= 2; ++i)
            for (int k = 0; k <= 4; ++k)
                CHECK(betti(g, kQ, i, k, ComplexVariant::reduced(g)) ==
                      betti(h, kQ, i, k, ComplexVariant::reduced(h)));
    }
}

TEST_CASE("resource guard") {
    Graph g = load("banana4");
    EngineOptions opts;
    opts.cap = 10;
    CHECK_THROWS_AS(betti(g, kQ, 1, 5, ComplexVariant::reduced(g), opts), ResourceError);
}

TEST_CASE("csv and json serialization") {
    Graph g = load("s3");
    BettiTable t = betti_table(g, kQ, 1, 2, ComplexVariant::reduced(g));
    std::string csv = t.to_csv();
    CHECK(csv.find("graph,field,i,k,betti,torsion") == 0);
    CHECK(csv.find(g.hash() + ",q,1,2,1,") != std::string::npos);
    std::string json = t.to_json();
    CHECK(json.find("\"graph\"") != std::string::npos);
}
