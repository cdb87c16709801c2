#pragma once

#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gch/errors.hpp"

namespace gch {

using VertexId = int;
using EdgeId = int;
using HalfId = int;

struct GraphSubdivision;

/// Finite multigraph with explicit half-edge incidence.
///
/// Vertices, edges and half-edges are kept in declaration order; that order
/// is part of the model and fixes sign conventions and basis orderings
/// everywhere downstream. Self-loops and parallel edges are supported
/// natively (a self-loop has both half-edges at the same vertex). Graphs are
/// immutable once built; derived graphs (subdivision, explosion, disjoint
/// union) are new values.
class Graph {
public:
    struct HalfEdge {
        VertexId vertex;
        EdgeId edge;
        int slot; // 0 or 1 within the edge
    };

    Graph() = default;

    // construction
    void add_vertex(const std::string& name);
    void add_edge(const std::string& name, const std::string& end_a, const std::string& end_b);
    /// Checks the structural invariants the parser promises (no isolated
    /// vertices). Call after hand-building a graph.
    void validate() const;

    /// Parses the text format (`vertex <id>` / `edge <id> <vid> <vid>` lines,
    /// `#` comments) or the JSON equivalent; the two are detected by the
    /// leading character.
    static Graph parse(const std::string& text);
    static Graph from_file(const std::string& path);

    // sizes
    int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
    int edge_count() const { return static_cast<int>(edge_names_.size()); }
    int half_edge_count() const { return static_cast<int>(halves_.size()); }

    // lookup
    const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }
    const std::string& edge_name(EdgeId e) const { return edge_names_.at(e); }
    std::string half_name(HalfId h) const;
    VertexId vertex_index(const std::string& name) const;
    EdgeId edge_index(const std::string& name) const;
    HalfId half_index(const std::string& name) const; // "<edge>:<slot>"

    // incidence
    const std::array<HalfId, 2>& edge_halves(EdgeId e) const { return edge_halves_.at(e); }
    const std::vector<HalfId>& halves_at(VertexId v) const { return vertex_halves_.at(v); }
    VertexId half_vertex(HalfId h) const { return halves_.at(h).vertex; }
    EdgeId half_edge(HalfId h) const { return halves_.at(h).edge; }
    int degree(VertexId v) const { return static_cast<int>(vertex_halves_.at(v).size()); }
    /// The two endpoints of an edge (equal for a self-loop).
    std::array<VertexId, 2> edge_ends(EdgeId e) const;

    // basic invariants
    std::vector<VertexId> essential_vertices() const; // d >= 3
    std::vector<EdgeId> tails() const;                // edges with a degree-1 endpoint
    bool is_tail(EdgeId e) const;
    int component_count() const;
    bool is_connected() const;
    int first_betti() const; // |E| - |V| + #components

    /// Replaces edge e by two edges joined at a fresh bivalent vertex.
    GraphSubdivision subdivide(EdgeId e) const;

    /// Replaces each vertex of w by one fresh degree-1 stub per incident
    /// half-edge. Edges keep their identity and order; each stub takes the
    /// exploded vertex's position in the vertex order, in half-edge order.
    Graph explode(const std::vector<VertexId>& w) const;

    // serialization
    std::string canonical_text() const;
    /// FNV-1a hash of the canonical text, as fixed-width hex.
    std::string hash() const;

private:
    std::vector<std::string> vertex_names_;
    std::vector<std::string> edge_names_;
    std::vector<HalfEdge> halves_;
    std::vector<std::array<HalfId, 2>> edge_halves_;
    std::vector<std::vector<HalfId>> vertex_halves_;
    std::unordered_map<std::string, VertexId> vertex_lookup_;
    std::unordered_map<std::string, EdgeId> edge_lookup_;

    std::string fresh_vertex_name(const std::string& base) const;
    std::string fresh_edge_name(const std::string& base) const;
};

struct GraphSubdivision {
    Graph graph;
    std::string new_vertex;
    std::string first_edge;  // shares the end in slot 0 of the old edge
    std::string second_edge; // shares the end in slot 1
};

/// Partition of the edge set; blocks are numbered by their smallest edge.
struct EdgePartition {
    std::vector<int> block_of; // edge index -> block index
    int block_count = 0;

    std::vector<std::vector<EdgeId>> blocks() const;
    bool same_block(EdgeId a, EdgeId b) const { return block_of.at(a) == block_of.at(b); }
};

/// Partition of E by the connected components of explode(g, w).
EdgePartition component_partition(const Graph& g, const std::vector<VertexId>& w);

struct RamosResult {
    int delta = 0;
    std::vector<std::vector<VertexId>> maximizers; // each sorted ascending
};

/// Maximum component count over all essential vertex sets of size i, with the
/// full maximizer list (exhaustive search). Requires a connected graph and
/// i <= #essential vertices.
RamosResult ramos_number(const Graph& g, int i);

/// True iff every member of w sees at least two distinct blocks of
/// component_partition(g, w) among its incident edges. Members must be
/// essential.
bool is_well_separating(const Graph& g, const std::vector<VertexId>& w);

/// Disjoint union; ids get "a_"/"b_" prefixes to stay unique.
Graph disjoint_union(const Graph& a, const Graph& b);

} // namespace gch
