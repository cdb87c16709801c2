#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "gch/graph.hpp"

namespace gch {

/// Which flavor of the complex to work in. The reduced variant replaces the
/// local states at each vertex by differences against a privileged half-edge;
/// it has no occupied-vertex state and strictly smaller bases. The full
/// variant is retained as an independent cross-validation route.
struct ComplexVariant {
    enum class Tag { full, reduced };
    Tag tag = Tag::reduced;
    std::vector<HalfId> privileged; // per vertex; used by the reduced variant

    static ComplexVariant full(const Graph& g);
    static ComplexVariant reduced(const Graph& g);
    /// Reduced variant with a specific privileged half-edge at one vertex.
    static ComplexVariant reduced_privileging(const Graph& g, VertexId v, HalfId h);

    bool is_reduced() const { return tag == Tag::reduced; }
    std::string name() const { return is_reduced() ? "reduced" : "full"; }

    /// The half-edges that may carry a degree-1 state at v, in basis order.
    /// Full: all of H(v). Reduced: H(v) minus the privileged one.
    std::vector<HalfId> active_halves(const Graph& g, VertexId v) const;
};

/// One monomial of the complex: a local state per vertex plus an exponent per
/// edge. State codes: 0 = empty, 1 = occupied (full variant only),
/// 2+t = t-th active half-edge of the vertex.
struct BasisElement {
    std::vector<std::uint8_t> vstate;
    std::vector<std::uint32_t> eexp;

    bool operator==(const BasisElement& o) const { return vstate == o.vstate && eexp == o.eexp; }
    bool operator<(const BasisElement& o) const {
        if (vstate != o.vstate) return vstate < o.vstate;
        return eexp < o.eexp;
    }
};

struct BasisElementHash {
    std::size_t operator()(const BasisElement& e) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto b : e.vstate) { h ^= b; h *= 1099511628211ull; }
        for (auto x : e.eexp) {
            for (int s = 0; s < 32; s += 8) { h ^= (x >> s) & 0xff; h *= 1099511628211ull; }
        }
        return static_cast<std::size_t>(h);
    }
};

struct Bidegree {
    int i = 0;
    int k = 0;
    bool operator==(const Bidegree& o) const { return i == o.i && k == o.k; }
};

constexpr std::uint8_t kStateEmpty = 0;
constexpr std::uint8_t kStateOccupied = 1;
constexpr std::uint8_t kStateHalfBase = 2;

/// Homological degree and weight of an element.
Bidegree bidegree_of(const Graph& g, const ComplexVariant& var, const BasisElement& e);

/// All basis elements of bidegree (i, k), in the canonical order:
/// lexicographic in the vertex-state vector, then in the edge-exponent
/// vector. Degenerate bidegrees yield an empty list.
std::vector<BasisElement> enumerate_basis(const Graph& g, const ComplexVariant& var, int i, int k);

/// Number of basis elements at (i, k) without materializing them. Aborts
/// early (returning cap + 1) once the count exceeds a positive cap.
long long basis_dimension(const Graph& g, const ComplexVariant& var, int i, int k,
                          long long cap = -1);

/// Position lookup for an enumerated basis.
class BasisIndex {
public:
    explicit BasisIndex(const std::vector<BasisElement>& elems) {
        pos_.reserve(elems.size() * 2);
        for (std::size_t t = 0; t < elems.size(); ++t) pos_.emplace(elems[t], static_cast<int>(t));
    }
    int find(const BasisElement& e) const {
        auto it = pos_.find(e);
        return it == pos_.end() ? -1 : it->second;
    }

private:
    std::unordered_map<BasisElement, int, BasisElementHash> pos_;
};

/// Human-readable monomial, e.g. "e:ab^2 d:ac:0" (reduced) or
/// "e:ab v:c h:ac:1" (full); the empty monomial prints as "1".
std::string element_to_string(const Graph& g, const ComplexVariant& var, const BasisElement& e);

} // namespace gch
