#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gch/chain.hpp"
#include "gch/complex.hpp"
#include "gch/fields.hpp"
#include "gch/graph.hpp"
#include "gch/linalg.hpp"

namespace gch {

/// Default refusal threshold for basis sizes (columns of one matrix). Exact
/// elimination cost is superlinear; fail fast with guidance instead.
constexpr long long kDefaultBasisCap = 200000;

struct EngineOptions {
    long long cap = kDefaultBasisCap;
    int workers = 1;
};

/// Computed Betti numbers over a rectangle, with optional integral torsion.
struct BettiTable {
    std::string graph_hash;
    FieldSpec field;
    std::map<std::pair<int, int>, long long> entries;                // (i,k) -> dim
    std::map<std::pair<int, int>, std::vector<mpz_class>> torsion;   // (i,k) -> factors > 1

    std::string to_csv() const;
    std::string to_json() const;
};

/// dim H_i(B_k; F) = dim C_(i,k) - rank d_(i,k) - rank d_(i+1,k).
long long betti(const Graph& g, const FieldSpec& field, int i, int k, const ComplexVariant& var,
                const EngineOptions& opts = {});

/// Betti numbers over the rectangle i <= i_max, k <= k_max; cells are
/// dispatched to a worker pool. With an integer field spec the table also
/// carries torsion.
BettiTable betti_table(const Graph& g, const FieldSpec& field, int i_max, int k_max,
                       const ComplexVariant& var, const EngineOptions& opts = {});

/// Free rank and invariant factors (> 1) of H_i(B_k; Z).
std::pair<long long, std::vector<mpz_class>> integral_homology(const Graph& g, int i, int k,
                                                               const ComplexVariant& var,
                                                               const EngineOptions& opts = {});

/// True iff the cycle c is a boundary. Errors if c is not a cycle.
bool is_boundary(const Graph& g, const ComplexVariant& var, const FieldSpec& field, const Chain& c,
                 const EngineOptions& opts = {});

/// Rank of the span of the given cycle classes in H_(i,k), i.e.
/// rank([cycles | d_(i+1,k)]) - rank(d_(i+1,k)). Each chain is verified to be
/// a cycle first.
long long homology_quotient_rank(const Graph& g, const ComplexVariant& var, const FieldSpec& field,
                                 const std::vector<Chain>& cycles, const EngineOptions& opts = {});

/// Exactness report for the sequence relating B(G) to B(G_v) at a bivalent
/// vertex v, at one bidegree:
///   H_i(B_k(G_v)) -> H_i(B_k(G)) -> H_(i-1)(B_(k-1)(G_v)) -> H_(i-1)(B_k(G_v))
/// with the maps induced by inclusion, by stripping the half-edge difference
/// at v, and by multiplication by e - e'.
struct LesReport {
    Bidegree at;
    long long dim_h_graph = 0;      // dim H_i(B_k(G))
    long long dim_h_exploded = 0;   // dim H_i(B_k(G_v))
    long long dim_h_previous = 0;   // dim H_(i-1)(B_(k-1)(G_v))
    long long dim_image_inclusion = 0;
    long long dim_image_strip = 0;
    long long dim_kernel_multiplication = 0;
    bool inclusion_composite_zero = false; // strip o inclusion = 0 on homology
    bool strip_composite_boundary = false; // (e-e') o strip lands in boundaries
    bool exact_at_graph = false;           // ker(strip) = im(inclusion)
    bool exact_at_previous = false;        // ker(e-e') = im(strip)
    bool dimension_split = false;          // dim H = im(inclusion) + im(strip)

    bool passed() const {
        return inclusion_composite_zero && strip_composite_boundary && exact_at_graph &&
               exact_at_previous && dimension_split;
    }
};

LesReport les_check(const Graph& g, VertexId v, int i, int k, const FieldSpec& field,
                    const EngineOptions& opts = {});

/// Betti table of the disjoint union equals the bigraded convolution of the
/// factors' tables over the rectangle.
bool kunneth_check(const Graph& g1, const Graph& g2, const FieldSpec& field, int i_max, int k_max,
                   const EngineOptions& opts = {});

} // namespace gch
