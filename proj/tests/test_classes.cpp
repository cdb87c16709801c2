#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gch/classes.hpp"

#include "corpus.hpp"

using namespace gch;
using gchtest::load;

namespace {

const FieldSpec kQ = FieldSpec::rationals();

StarSpec s3_star(const Graph& g) {
    return StarSpec{g.vertex_index("a"),
                    {g.half_index("ab:0"), g.half_index("ac:0"), g.half_index("ad:0")},
                    +1};
}

// theta with an extra stick: one vertex of degree four whose star can use
// three half-edges in a single component of the complement
Graph theta_stick() {
    return Graph::parse("vertex w\nvertex a\nvertex b\n"
                        "edge wa1 w a\nedge wa2 w a\nedge wa3 w a\nedge wb w b\n");
}

} // namespace

TEST_CASE("lollipop loop class is the half-edge difference") {
    Graph g = load("lollipop");
    ComplexVariant red = ComplexVariant::reduced(g);
    Chain gamma = loop_class(g, red, {WalkStep{g.edge_index("loop"), true}});
    // arrives through loop:1, departs through loop:0 (the privileged half)
    Chain expected = encode_chain(g, red, {{1, "d:loop:1"}});
    CHECK(gamma.terms == expected.terms);
}

TEST_CASE("triangle loop class") {
    Graph g = load("triangle");
    ComplexVariant red = ComplexVariant::reduced(g);
    std::vector<WalkStep> walk{{g.edge_index("ab"), true},
                               {g.edge_index("bc"), true},
                               {g.edge_index("ca"), true}};
    Chain gamma = loop_class(g, red, walk);
    CHECK_FALSE(gamma.is_zero());
    CHECK(apply_differential(g, red, gamma).is_zero());
    auto deg = chain_bidegree(g, red, gamma);
    REQUIRE(deg);
    CHECK(deg->i == 1);
    CHECK(deg->k == 1);

    std::vector<WalkStep> reversed{{g.edge_index("ca"), false},
                                   {g.edge_index("bc"), false},
                                   {g.edge_index("ab"), false}};
    Chain backwards = loop_class(g, red, reversed);
    CHECK((gamma + backwards).is_zero());

    std::vector<WalkStep> broken{{g.edge_index("ab"), true}, {g.edge_index("ab"), true}};
    CHECK_THROWS_AS(loop_class(g, red, broken), InputError);
}

TEST_CASE("star representative: symmetric and privileged forms coincide") {
    Graph g = load("s3");
    ComplexVariant red = ComplexVariant::reduced(g);
    Chain star = star_class(g, red, s3_star(g));
    // (e1 - e3)(h2 - h1) - (e1 - e2)(h3 - h1) expanded in the basis
    Chain privileged = encode_chain(g, red, {{1, "e:ab d:ac:0"},
                                             {-1, "e:ad d:ac:0"},
                                             {-1, "e:ab d:ad:0"},
                                             {1, "e:ac d:ad:0"}});
    CHECK(star.terms == privileged.terms);
    auto deg = chain_bidegree(g, red, star);
    REQUIRE(deg);
    CHECK(deg->i == 1);
    CHECK(deg->k == 2);
}

TEST_CASE("star representative is alternating in the triple") {
    Graph g = load("s3");
    for (bool reduced : {true, false}) {
        ComplexVariant var = reduced ? ComplexVariant::reduced(g) : ComplexVariant::full(g);
        StarSpec spec = s3_star(g);
        Chain star = star_class(g, var, spec);
        std::swap(spec.halves[0], spec.halves[1]);
        Chain swapped = star_class(g, var, spec);
        CHECK((star + swapped).is_zero());
        // cyclic permutations are even
        StarSpec cyc = s3_star(g);
        std::rotate(cyc.halves.begin(), cyc.halves.begin() + 1, cyc.halves.end());
        CHECK(star_class(g, var, cyc).terms == star.terms);
    }
    CHECK_THROWS_AS(star_class(g, ComplexVariant::reduced(g),
                               StarSpec{g.vertex_index("b"),
                                        {g.half_index("ab:0"), g.half_index("ac:0"),
                                         g.half_index("ad:0")},
                                        +1}),
                    InputError);
}

TEST_CASE("torus with one factor is the star") {
    Graph g = load("s3");
    ComplexVariant red = ComplexVariant::reduced(g);
    TorusSpec spec;
    spec.stars.push_back(s3_star(g));
    CHECK(torus_class(g, red, spec).terms == star_class(g, red, s3_star(g)).terms);
}

TEST_CASE("torus on the h-tree") {
    Graph g = load("htree");
    ComplexVariant red = ComplexVariant::reduced(g);
    TorusSpec spec;
    spec.stars.push_back(StarSpec{g.vertex_index("u"),
                                  {g.half_index("up:0"), g.half_index("uq:0"), g.half_index("uw:0")},
                                  +1});
    spec.stars.push_back(StarSpec{g.vertex_index("w"),
                                  {g.half_index("uw:1"), g.half_index("wr:0"), g.half_index("ws:0")},
                                  +1});
    Chain torus = torus_class(g, red, spec);
    CHECK_FALSE(torus.is_zero());
    auto deg = chain_bidegree(g, red, torus);
    REQUIRE(deg);
    CHECK(deg->i == 2);
    CHECK(deg->k == 4);

    // a stabilizing exponent in the spec equals stabilization after the fact
    TorusSpec stabbed = spec;
    stabbed.monomial[g.edge_index("uw")] = 2;
    CHECK(torus_class(g, red, stabbed).terms ==
          stabilize(g, torus, g.edge_index("uw"), 2).terms);

    TorusSpec overlap;
    overlap.stars = {spec.stars[0], spec.stars[0]};
    CHECK_THROWS_AS(torus_class(g, red, overlap), InputError);
}

TEST_CASE("standard family sizes") {
    Graph s3 = load("s3");
    CHECK(a_w_family(s3, {s3.vertex_index("a")}).members.size() == 1);
    Graph s5 = load("s5");
    CHECK(a_w_family(s5, {s5.vertex_index("a")}).members.size() == 3);
    Graph ht = load("htree");
    auto fam = a_w_family(ht, {ht.vertex_index("u"), ht.vertex_index("w")});
    CHECK(fam.members.size() == 1);
    CHECK(fam.partition.block_count == 5);

    Graph theta = load("theta3");
    CHECK_THROWS_AS(a_w_family(theta, {theta.vertex_index("p")}), InputError);
}

TEST_CASE("explicit family choices are validated") {
    Graph g = load("htree");
    std::vector<std::array<HalfId, 2>> same_block{
        {g.half_index("uw:0"), g.half_index("uw:0")},
        {g.half_index("wr:0"), g.half_index("ws:0")}};
    CHECK_THROWS_AS(a_w_family(g, {g.vertex_index("u"), g.vertex_index("w")}, same_block),
                    InputError);
    std::vector<std::array<HalfId, 2>> fine{{g.half_index("up:0"), g.half_index("uq:0")},
                                            {g.half_index("wr:0"), g.half_index("ws:0")}};
    auto fam = a_w_family(g, {g.vertex_index("u"), g.vertex_index("w")}, fine);
    CHECK(fam.members.size() == 1);
}

TEST_CASE("family members are rigid; rigidity matches the symbol criterion") {
    for (const auto& name : {"s3", "s4", "s5", "htree", "banana4", "caterpillar"}) {
        Graph g = load(name);
        auto ess = g.essential_vertices();
        for (int i = 1; i <= static_cast<int>(ess.size()) && i <= 2; ++i) {
            auto ramos = ramos_number(g, i);
            if (ramos.delta <= 1) continue;
            for (const auto& w : ramos.maximizers) {
                if (!is_well_separating(g, w)) continue;
                auto fam = a_w_family(g, w);
                for (const auto& member : fam.members) {
                    CHECK(is_rigid(g, member));
                    CHECK(top_symbol_nonzero(g, member));
                }
            }
        }
    }
}

TEST_CASE("a non-rigid torus and the symbol cross-check") {
    Graph g = theta_stick();
    VertexId w = g.vertex_index("w");
    REQUIRE(is_well_separating(g, {w}));

    TorusSpec shy; // all three half-edges in the block through a
    shy.stars.push_back(
        StarSpec{w, {g.half_index("wa1:0"), g.half_index("wa2:0"), g.half_index("wa3:0")}, +1});
    CHECK_FALSE(is_rigid(g, shy));
    CHECK_FALSE(top_symbol_nonzero(g, shy));

    TorusSpec bold;
    bold.stars.push_back(
        StarSpec{w, {g.half_index("wa1:0"), g.half_index("wa2:0"), g.half_index("wb:0")}, +1});
    CHECK(is_rigid(g, bold));
    CHECK(top_symbol_nonzero(g, bold));

    Graph theta = load("theta3");
    TorusSpec unsupported;
    unsupported.stars.push_back(StarSpec{
        theta.vertex_index("p"),
        {theta.half_index("x:0"), theta.half_index("y:0"), theta.half_index("z:0")},
        +1});
    CHECK_THROWS_AS(is_rigid(theta, unsupported), InputError);
}

TEST_CASE("caterpillar: the star at d with forced half-edges is rigid") {
    Graph g = load("caterpillar");
    std::vector<VertexId> w{g.vertex_index("c"), g.vertex_index("d")};
    TorusSpec spec;
    spec.stars.push_back(StarSpec{
        g.vertex_index("c"),
        {g.half_index("ac:1"), g.half_index("bc:1"), g.half_index("cd:0")},
        +1});
    spec.stars.push_back(StarSpec{
        g.vertex_index("d"),
        {g.half_index("cd:1"), g.half_index("de:0"), g.half_index("df:0")},
        +1});
    CHECK(is_rigid(g, spec));
    CHECK(top_symbol_nonzero(g, spec));
}

TEST_CASE("torus annihilation: same-block edge differences kill tori") {
    Graph g = load("caterpillar");
    ComplexVariant red = ComplexVariant::reduced(g);
    std::vector<VertexId> w{g.vertex_index("c"), g.vertex_index("d")};
    auto fam = a_w_family(g, w);
    REQUIRE(fam.members.size() == 1);
    Chain torus = torus_class(g, red, fam.members[0]);
    EdgeId df = g.edge_index("df"), fg = g.edge_index("fg");
    REQUIRE(fam.partition.same_block(df, fg));
    Chain difference = stabilize(g, torus, df) - stabilize(g, torus, fg);
    CHECK(is_boundary(g, red, kQ, difference));
}

TEST_CASE("torus module dimensions") {
    Graph s3 = load("s3");
    auto fam = a_w_family(s3, {s3.vertex_index("a")});
    CHECK(torus_module_dimension(s3, fam, 1) == 0);
    CHECK(torus_module_dimension(s3, fam, 2) == 1);
    CHECK(torus_module_dimension(s3, fam, 3) == 3);
    CHECK(torus_module_dimension(s3, fam, 4) == 6);

    Graph s5 = load("s5");
    auto fam5 = a_w_family(s5, {s5.vertex_index("a")});
    CHECK(torus_module_dimension(s5, fam5, 2) == 3); // constant monomials: one per member
}

TEST_CASE("family spans freely at low weights") {
    Graph s3 = load("s3");
    auto fam = a_w_family(s3, {s3.vertex_index("a")});
    for (int k = 2; k <= 5; ++k) CHECK(verify_aw_freeness(s3, fam, kQ, k));
    CHECK_THROWS_AS(verify_aw_freeness(s3, fam, kQ, 1), InputError);

    Graph ht = load("htree");
    auto fam_ht = a_w_family(ht, {ht.vertex_index("u"), ht.vertex_index("w")});
    for (int k = 4; k <= 6; ++k) CHECK(verify_aw_freeness(ht, fam_ht, kQ, k));
}

TEST_CASE("q-relation on the lollipop is a chain-level identity") {
    Graph g = load("lollipop");
    ComplexVariant red = ComplexVariant::reduced(g);
    Chain gamma = loop_class(g, red, {WalkStep{g.edge_index("loop"), true}});
    // (e_stick - e_loop) gamma equals the star at (stick, arrival, departure)
    StarSpec star{g.vertex_index("v"),
                  {g.half_index("stick:0"), g.half_index("loop:1"), g.half_index("loop:0")},
                  +1};
    Chain combination = stabilize(g, gamma, g.edge_index("stick")) -
                        stabilize(g, gamma, g.edge_index("loop")) -
                        star_class(g, red, star);
    CHECK(combination.is_zero());

    RelationReport rep = verify_relation(g, kQ, RelationKind::q);
    CHECK(rep.boundary);
    CHECK(rep.bidegree.i == 1);
    CHECK(rep.bidegree.k == 2);
}

TEST_CASE("q-relation on a subdivided lollipop") {
    // triangle with a stick: the cycle has length three
    Graph g = Graph::parse("vertex a\nvertex b\nvertex c\nvertex d\n"
                           "edge ab a b\nedge bc b c\nedge ca c a\nedge ad a d\n");
    RelationParams p;
    p.walk = std::vector<WalkStep>{{g.edge_index("ab"), true},
                                   {g.edge_index("bc"), true},
                                   {g.edge_index("ca"), true}};
    p.vertex = g.vertex_index("a");
    p.extra_half = g.half_index("ad:0");
    RelationReport rep = verify_relation(g, kQ, RelationKind::q, p);
    CHECK(rep.boundary);
    CHECK(rep.witness_found); // genuinely needs a bounding chain here
}

TEST_CASE("theta relation with mirrored orientations") {
    Graph g = load("theta3");
    RelationReport rep = verify_relation(g, kQ, RelationKind::theta);
    CHECK(rep.boundary);

    // the pairing matters: with equal orientations the difference survives
    ComplexVariant red = ComplexVariant::reduced(g);
    StarSpec top{g.vertex_index("p"),
                 {g.half_index("x:0"), g.half_index("y:0"), g.half_index("z:0")},
                 +1};
    StarSpec bottom{g.vertex_index("q"),
                    {g.half_index("x:1"), g.half_index("y:1"), g.half_index("z:1")},
                    +1};
    Chain same = star_class(g, red, top) - star_class(g, red, bottom);
    CHECK_FALSE(is_boundary(g, red, kQ, same));
    Chain mirrored = star_class(g, red, top) + star_class(g, red, bottom);
    CHECK(is_boundary(g, red, kQ, mirrored));
}

TEST_CASE("x-family relations at a degree-four vertex") {
    Graph g = load("s4");
    for (auto kind : {RelationKind::unstable_x, RelationKind::stable_x, RelationKind::combined_x}) {
        RelationReport rep = verify_relation(g, kQ, kind);
        CHECK_MESSAGE(rep.boundary, relation_kind_name(kind));
    }
    RelationReport stable = verify_relation(g, kQ, RelationKind::stable_x);
    CHECK(stable.bidegree.k == 3);
}

TEST_CASE("unstable x holds at every degree-four vertex of the corpus") {
    for (const auto& name : {"s4", "s5", "banana4", "k5"}) {
        Graph g = load(name);
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            if (g.degree(v) < 4) continue;
            RelationParams p;
            p.vertex = v;
            CHECK(verify_relation(g, kQ, RelationKind::unstable_x, p).boundary);
        }
    }
}

TEST_CASE("negative control: the star class on the 3-star does not bound") {
    RelationReport rep = verify_relation(load("s3"), kQ, RelationKind::star_nontrivial);
    CHECK_FALSE(rep.boundary);
    CHECK_FALSE(rep.witness_found);
    std::string json = rep.to_json();
    CHECK(json.find("\"is_boundary\":false") != std::string::npos);
}

TEST_CASE("configuration detection errors") {
    CHECK_THROWS_AS(verify_relation(load("s3"), kQ, RelationKind::q), InputError);
    CHECK_THROWS_AS(verify_relation(load("s4"), kQ, RelationKind::theta), InputError);
    CHECK_THROWS_AS(verify_relation(load("s3"), kQ, RelationKind::unstable_x), InputError);
    CHECK_THROWS_AS(verify_relation(load("triangle"), kQ, RelationKind::star_nontrivial),
                    InputError);
}
