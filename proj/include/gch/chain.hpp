#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gch/basis.hpp"
#include "gch/sparse.hpp"

namespace gch {

/// Sparse chain with exact integer coefficients, in a fixed variant's basis.
/// All class representatives and relation combinations live here; they are
/// cast to a field only at the linear-algebra boundary.
struct Chain {
    std::map<BasisElement, long long> terms;

    bool is_zero() const { return terms.empty(); }
    void add_term(const BasisElement& e, long long c) {
        if (c == 0) return;
        auto [it, fresh] = terms.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
    Chain& operator+=(const Chain& o) {
        for (const auto& [e, c] : o.terms) add_term(e, c);
        return *this;
    }
    Chain operator-() const {
        Chain out;
        for (const auto& [e, c] : terms) out.terms.emplace(e, -c);
        return out;
    }
    Chain operator+(const Chain& o) const {
        Chain out = *this;
        out += o;
        return out;
    }
    Chain operator-(const Chain& o) const { return *this + (-o); }
    Chain scaled(long long s) const {
        Chain out;
        if (s == 0) return out;
        for (const auto& [e, c] : terms) out.terms.emplace(e, c * s);
        return out;
    }
};

/// Common bidegree of the terms; errors on mixed bidegrees; nullopt if zero.
std::optional<Bidegree> chain_bidegree(const Graph& g, const ComplexVariant& var, const Chain& c);

/// The boundary of a chain. Koszul signs follow the vertex order: acting at a
/// vertex picks up (-1)^(number of earlier vertices in a half-edge state).
Chain apply_differential(const Graph& g, const ComplexVariant& var, const Chain& c);

/// Multiplication by the edge e (exponent bump), `times` times.
Chain stabilize(const Graph& g, const Chain& c, EdgeId e, int times = 1);

/// Parses a term list into a chain. Each term is a signed coefficient plus a
/// monomial string of space-separated factors: `e:<edge>[^n]`, `v:<vertex>`
/// (full variant), `h:<edge>:<slot>` (full), `d:<edge>:<slot>` (reduced);
/// `1` denotes the empty monomial. All terms must share one bidegree.
Chain encode_chain(const Graph& g, const ComplexVariant& var,
                   const std::vector<std::pair<long long, std::string>>& terms);

std::string chain_to_string(const Graph& g, const ComplexVariant& var, const Chain& c);

/// A degree-0-or-1 local chain at one vertex: a sum of (coefficient,
/// edge-monomial, local state) with the state either empty or a half-edge at
/// the vertex. Star and loop representatives are assembled from these.
struct LocalFactor {
    VertexId v = -1;
    struct Term {
        long long coeff = 0;
        std::map<EdgeId, int> emul;
        std::optional<HalfId> half; // empty = the vacuous state
    };
    std::vector<Term> terms;
};

/// External product of local factors at pairwise distinct vertices times a
/// global edge monomial, expanded into the variant's basis. Factors are
/// multiplied in vertex order (Koszul convention). In the reduced variant the
/// half-edge states are rewritten as differences against the privileged
/// half-edge; this requires each factor's half-coefficients to cancel within
/// every edge-monomial group, which holds for all representatives built here.
Chain assemble_product(const Graph& g, const ComplexVariant& var,
                       const std::vector<LocalFactor>& factors,
                       const std::map<EdgeId, int>& monomial);

/// Chain as a sparse column over a field, in the enumerated basis at its
/// bidegree. Errors if a term is missing from the index.
template <class F>
typename SparseMatrix<F>::Column chain_to_column(const Chain& c, const BasisIndex& index, const F& f) {
    typename SparseMatrix<F>::Column out;
    for (const auto& [e, coeff] : c.terms) {
        int pos = index.find(e);
        if (pos < 0) throw Error("chain term is not in the enumerated basis");
        out.emplace_back(pos, f.from_int(coeff));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

} // namespace gch
