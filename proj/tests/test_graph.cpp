#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "gch/graph.hpp"

#include "corpus.hpp"
#include "oracles.hpp"

using namespace gch;
using gchtest::load;

namespace {

std::set<std::string> names_of(const Graph& g, const std::vector<VertexId>& vs) {
    std::set<std::string> out;
    for (VertexId v : vs) out.insert(g.vertex_name(v));
    return out;
}

std::set<std::string> edge_names_of(const Graph& g, const std::vector<EdgeId>& es) {
    std::set<std::string> out;
    for (EdgeId e : es) out.insert(g.edge_name(e));
    return out;
}

} // namespace

TEST_CASE("parsing the text format") {
    Graph g = Graph::parse("vertex a\nvertex b\nvertex c\nvertex d\n"
                           "edge ab a b\nedge ac a c\nedge ad a d\n");
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 3);
    CHECK(g.degree(g.vertex_index("a")) == 3);
    for (auto leaf : {"b", "c", "d"}) CHECK(g.degree(g.vertex_index(leaf)) == 1);
}

TEST_CASE("parallel edges and half-edge counts") {
    Graph g = load("banana4");
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 4);
    CHECK(g.half_edge_count() == 8);
    CHECK(g.degree(0) == 4);
}

TEST_CASE("parser rejections") {
    CHECK_THROWS_AS(Graph::parse("vertex a\nvertex b\nedge ab a b\nvertex c\n"), InputError); // isolated c
    CHECK_THROWS_AS(Graph::parse("vertex a\nedge aa a a\nvertex a\n"), InputError);           // duplicate
    CHECK_THROWS_AS(Graph::parse("vertex a\nedge ab a b\n"), InputError);                     // unknown b
    CHECK_THROWS_AS(Graph::parse("vertes a\n"), InputError);                                  // typo
    CHECK_THROWS_AS(Graph::parse("vertex a\nvertex a2\nedge e a\n"), InputError);             // short line
}

TEST_CASE("json form parses to the same graph") {
    Graph text = load("s3");
    Graph json = Graph::parse(R"({
        "vertices": ["a", "b", "c", "d"],
        "edges": [{"id":"ab","ends":["a","b"]},
                  {"id":"ac","ends":["a","c"]},
                  {"id":"ad","ends":["a","d"]}]})");
    CHECK(json.hash() == text.hash());
    CHECK(json.canonical_text() == text.canonical_text());
}

TEST_CASE("essential vertices") {
    CHECK(names_of(load("s3"), load("s3").essential_vertices()) == std::set<std::string>{"a"});
    CHECK(load("triangle").essential_vertices().empty());
    Graph cat = load("caterpillar");
    CHECK(names_of(cat, cat.essential_vertices()) == std::set<std::string>{"c", "d", "f"});
}

TEST_CASE("tails") {
    Graph s3 = load("s3");
    CHECK(s3.tails().size() == 3);
    CHECK(load("triangle").tails().empty());
    Graph cat = load("caterpillar");
    CHECK(edge_names_of(cat, cat.tails()) ==
          std::set<std::string>{"ac", "bc", "de", "fg", "fh"});
}

TEST_CASE("first betti number") {
    CHECK(load("s3").first_betti() == 0);
    CHECK(load("htree").first_betti() == 0);
    CHECK(load("triangle").first_betti() == 1);
    CHECK(load("banana4").first_betti() == 3);
}

TEST_CASE("subdividing an interval") {
    Graph g = load("interval");
    auto sub = g.subdivide(0);
    CHECK(sub.graph.vertex_count() == 3);
    CHECK(sub.graph.edge_count() == 2);
    CHECK(sub.graph.degree(sub.graph.vertex_index(sub.new_vertex)) == 2);
    CHECK_THROWS_AS(g.subdivide(7), InputError);
}

TEST_CASE("subdividing a self-loop yields parallel edges") {
    Graph g = load("lollipop");
    auto sub = g.subdivide(g.edge_index("loop"));
    const Graph& h = sub.graph;
    CHECK(h.edge_count() == 3);
    VertexId mid = h.vertex_index(sub.new_vertex);
    CHECK(h.degree(mid) == 2);
    // both new edges join v and the new vertex
    for (const auto& name : {sub.first_edge, sub.second_edge}) {
        auto ends = h.edge_ends(h.edge_index(name));
        std::set<VertexId> s{ends[0], ends[1]};
        CHECK(s == std::set<VertexId>{h.vertex_index("v"), mid});
    }
}

TEST_CASE("subdividing a triangle gives a square") {
    auto sub = load("triangle").subdivide(0);
    const Graph& h = sub.graph;
    CHECK(h.vertex_count() == 4);
    CHECK(h.edge_count() == 4);
    CHECK(h.first_betti() == 1);
    for (VertexId v = 0; v < h.vertex_count(); ++v) CHECK(h.degree(v) == 2);
}

TEST_CASE("exploding the center of a star") {
    Graph g = load("s3");
    Graph ex = g.explode({g.vertex_index("a")});
    CHECK(ex.vertex_count() == 6);
    CHECK(ex.edge_count() == 3);
    CHECK(ex.component_count() == 3);
}

TEST_CASE("exploding one banana vertex keeps it connected") {
    Graph g = load("banana4");
    Graph ex = g.explode({0});
    CHECK(ex.component_count() == 1);
    CHECK(ex.degree(ex.vertex_index("q")) == 4);
}

TEST_CASE("exploding two caterpillar vertices") {
    Graph g = load("caterpillar");
    Graph ex = g.explode({g.vertex_index("c"), g.vertex_index("d")});
    CHECK(ex.component_count() == 5);
    CHECK_THROWS_AS(g.explode({99}), InputError);
}

TEST_CASE("explosion vertex count formula") {
    for (const auto& name : gchtest::small_corpus()) {
        Graph g = load(name);
        auto ess = g.essential_vertices();
        if (ess.empty()) continue;
        std::vector<VertexId> w{ess.front()};
        Graph ex = g.explode(w);
        int expected = g.vertex_count() - 1 + g.degree(ess.front());
        CHECK(ex.vertex_count() == expected);
        CHECK(ex.edge_count() == g.edge_count());
    }
}

TEST_CASE("component partition of the caterpillar at {c,d}") {
    Graph g = load("caterpillar");
    EdgePartition part = component_partition(g, {g.vertex_index("c"), g.vertex_index("d")});
    CHECK(part.block_count == 5);
    auto blocks = part.blocks();
    std::set<std::set<std::string>> got;
    for (const auto& blk : blocks) {
        std::set<std::string> names;
        for (EdgeId e : blk) names.insert(g.edge_name(e));
        got.insert(names);
    }
    std::set<std::set<std::string>> expected = {
        {"ac"}, {"bc"}, {"cd"}, {"de"}, {"df", "fg", "fh"}};
    CHECK(got == expected);
}

TEST_CASE("trivial partitions") {
    Graph s3 = load("s3");
    CHECK(component_partition(s3, {}).block_count == 1);
    CHECK(component_partition(s3, {s3.vertex_index("a")}).block_count == 3);
}

TEST_CASE("partition block count matches a BFS oracle") {
    for (const auto& name : gchtest::small_corpus()) {
        Graph g = load(name);
        auto ess = g.essential_vertices();
        // all subsets of essential vertices of size <= 2
        std::vector<std::vector<VertexId>> subsets{{}};
        for (std::size_t a = 0; a < ess.size(); ++a) {
            subsets.push_back({ess[a]});
            for (std::size_t b = a + 1; b < ess.size(); ++b) subsets.push_back({ess[a], ess[b]});
        }
        for (const auto& w : subsets)
            CHECK(component_partition(g, w).block_count == gchtest::bfs_component_count(g, w));
    }
}

TEST_CASE("ramos numbers") {
    Graph cat = load("caterpillar");
    auto r0 = ramos_number(cat, 0);
    CHECK(r0.delta == 1);
    CHECK(r0.maximizers == std::vector<std::vector<VertexId>>{{}});

    auto r2 = ramos_number(cat, 2);
    CHECK(r2.delta == 5);
    CHECK(r2.maximizers.size() == 3); // brute-force census over 2-subsets of {c,d,f}
    std::set<std::set<std::string>> got;
    for (const auto& w : r2.maximizers) {
        std::set<std::string> names;
        for (VertexId v : w) names.insert(cat.vertex_name(v));
        got.insert(names);
    }
    CHECK(got == std::set<std::set<std::string>>{{"c", "d"}, {"c", "f"}, {"d", "f"}});

    CHECK(ramos_number(load("banana4"), 1).delta == 1);
    CHECK_THROWS_AS(ramos_number(cat, 4), InputError);
    Graph two = disjoint_union(load("s3"), load("s3"));
    CHECK_THROWS_AS(ramos_number(two, 1), InputError);
}

TEST_CASE("ramos growth under the theorem's hypothesis") {
    for (const auto& name : gchtest::small_corpus()) {
        Graph g = load(name);
        if (!g.is_connected()) continue;
        int ess = static_cast<int>(g.essential_vertices().size());
        int prev = ramos_number(g, 0).delta;
        for (int i = 1; i <= ess; ++i) {
            int cur = ramos_number(g, i).delta;
            if (cur > 1) CHECK(cur >= prev + 1);
            prev = cur;
        }
    }
}

TEST_CASE("well-separating tests") {
    Graph s3 = load("s3");
    CHECK(is_well_separating(s3, {s3.vertex_index("a")}));
    Graph theta = load("theta3");
    CHECK_FALSE(is_well_separating(theta, {theta.vertex_index("p")}));
    Graph cat = load("caterpillar");
    CHECK(is_well_separating(cat, {cat.vertex_index("c"), cat.vertex_index("d")}));
    CHECK_THROWS_AS(is_well_separating(s3, {s3.vertex_index("b")}), InputError);
}

TEST_CASE("subdivision preserves the basic invariants") {
    for (const auto& name : gchtest::small_corpus()) {
        Graph g = load(name);
        auto sub = g.subdivide(0);
        const Graph& h = sub.graph;
        CHECK(h.component_count() == g.component_count());
        CHECK(h.first_betti() == g.first_betti());
        CHECK(names_of(h, h.essential_vertices()) == names_of(g, g.essential_vertices()));
        if (g.is_connected()) {
            int ess = static_cast<int>(g.essential_vertices().size());
            for (int i = 0; i <= ess; ++i)
                CHECK(ramos_number(h, i).delta == ramos_number(g, i).delta);
        }
    }
}

TEST_CASE("hash is stable and sensitive") {
    Graph a = load("s3");
    CHECK(a.hash() == load("s3").hash());
    CHECK(a.hash() != load("s4").hash());
    CHECK(a.hash().size() == 16);
}
