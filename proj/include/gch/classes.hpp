#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gch/chain.hpp"
#include "gch/homology.hpp"

namespace gch {

/// A star class: two particles orbiting through an essential vertex, pinned
/// down by an ordered triple of distinct half-edges there. The standard
/// representative is alternating in the triple.
struct StarSpec {
    VertexId w = -1;
    std::array<HalfId, 3> halves{};
    int sign = +1;
};

/// External product of star classes at pairwise distinct vertices, times an
/// optional stabilizing edge monomial. Bidegree (|W|, 2|W| + total exponent).
struct TorusSpec {
    std::vector<StarSpec> stars;
    std::map<EdgeId, int> monomial;

    std::vector<VertexId> support() const {
        std::vector<VertexId> w;
        for (const auto& s : stars) w.push_back(s.w);
        std::sort(w.begin(), w.end());
        return w;
    }
};

/// The standard independent family of rigid W-tori: per vertex two fixed
/// half-edges in distinct blocks of the component partition, one torus per
/// choice of remaining half-edge at each vertex.
struct AWFamily {
    std::vector<VertexId> w;
    std::vector<std::array<HalfId, 2>> fixed; // per vertex of w, in order
    std::vector<TorusSpec> members;           // size = prod (d(w)-2)
    EdgePartition partition;                  // component partition of (g, w)
    bool tails_warning = false;               // some fixed pair is two tails
};

/// One traversal step of a closed edge walk: the edge, and whether it is
/// traversed from its slot-0 half to its slot-1 half.
struct WalkStep {
    EdgeId edge = -1;
    bool forward = true;
};

/// Standard representative of the loop class of a closed walk: at each
/// visited vertex, (arriving half-edge) - (departing half-edge). Bidegree
/// (1, 1). Errors if the walk is not closed.
Chain loop_class(const Graph& g, const ComplexVariant& var, const std::vector<WalkStep>& walk);

/// Standard representative e3(h1-h2) + e2(h3-h1) + e1(h2-h3) at the spec's
/// vertex, where ej is the edge of hj. Bidegree (1, 2), a cycle.
Chain star_class(const Graph& g, const ComplexVariant& var, const StarSpec& spec);

/// External product of the star representatives (in vertex order) times the
/// monomial.
Chain torus_class(const Graph& g, const ComplexVariant& var, const TorusSpec& spec);

/// Builds the standard family at a well-separating W. Default edge choices
/// per vertex: the lexicographically first pair of half-edges lying in
/// distinct blocks, preferring pairs whose edges are not both tails.
/// Explicit per-vertex choices may be supplied in the order of (sorted) W.
AWFamily a_w_family(const Graph& g, const std::vector<VertexId>& w,
                    const std::optional<std::vector<std::array<HalfId, 2>>>& choices = std::nullopt);

/// Rigidity of a torus at well-separating support: every star factor must
/// touch at least two blocks of the component partition.
bool is_rigid(const Graph& g, const TorusSpec& spec);

/// The class's symbol in the top filtration quotient: the part of the
/// representative supported on diff-states exactly at W, with edge monomials
/// collapsed to blocks of the component partition. Nonvanishing is the
/// spectral-sequence characterization of rigidity; used to cross-check
/// is_rigid.
bool top_symbol_nonzero(const Graph& g, const TorusSpec& spec);

/// C(k - 2|W| + b - 1, b - 1) * prod (d(w) - 2) with b the block count of the
/// family's partition; 0 below weight 2|W|.
long long torus_module_dimension(const Graph& g, const AWFamily& fam, int k);

/// Spans the family over monomials in one representative edge per block and
/// checks that the rank of the classes in H_|W|(B_k) equals
/// torus_module_dimension exactly.
bool verify_aw_freeness(const Graph& g, const AWFamily& fam, const FieldSpec& field, int k,
                        const EngineOptions& opts = {});

enum class RelationKind { q, theta, unstable_x, stable_x, combined_x, star_nontrivial };

RelationKind relation_kind_from_string(const std::string& s);
std::string relation_kind_name(RelationKind kind);

/// Optional explicit configuration for a relation check; unset fields are
/// auto-detected from the graph where possible.
struct RelationParams {
    std::optional<std::vector<WalkStep>> walk; // q: the cycle
    std::optional<VertexId> vertex;            // q / X / star: the essential vertex
    std::optional<HalfId> extra_half;          // q: the extra half-edge at the vertex
    std::optional<std::array<VertexId, 2>> theta_vertices;
};

struct RelationReport {
    RelationKind kind;
    std::string parameters;
    Bidegree bidegree;
    bool boundary = false;
    bool witness_found = false; // a bounding preimage was produced
    std::string to_json() const;
};

/// Builds the stated chain-level combination for the relation and reports
/// whether it bounds. Conventions: the q combination is
/// (e_f - e_in) * loop - star(f, arrival, departure); theta compares the two
/// stars with mirrored orientations; the X family follows the alternating
/// pattern of stabilized stars at one vertex of degree >= 4.
RelationReport verify_relation(const Graph& g, const FieldSpec& field, RelationKind kind,
                               const RelationParams& params = {}, const EngineOptions& opts = {});

} // namespace gch
