#pragma once

#include <string>

#include "gch/basis.hpp"
#include "gch/chain.hpp"
#include "gch/sparse.hpp"

namespace gch {

/// Matrix of the boundary map (i, k) -> (i-1, k) in the enumerated bases.
/// Requires i >= 1. Columns follow enumerate_basis(i, k), rows
/// enumerate_basis(i-1, k).
template <class F>
SparseMatrix<F> differential_matrix(const Graph& g, const ComplexVariant& var, int i, int k,
                                    const F& f) {
    if (i < 1) throw InputError("differential_matrix needs homological degree >= 1");
    auto source = enumerate_basis(g, var, i, k);
    auto target = enumerate_basis(g, var, i - 1, k);
    BasisIndex index(target);
    SparseMatrix<F> m(static_cast<int>(target.size()), static_cast<int>(source.size()));
    for (int j = 0; j < static_cast<int>(source.size()); ++j) {
        const BasisElement& elem = source[j];
        int sign = 1;
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            std::uint8_t s = elem.vstate[v];
            if (s < kStateHalfBase) continue;
            HalfId h = var.active_halves(g, v).at(s - kStateHalfBase);
            EdgeId eh = g.half_edge(h);
            BasisElement t = elem;
            t.vstate[v] = kStateEmpty;
            if (var.is_reduced()) {
                EdgeId e1 = g.half_edge(var.privileged[v]);
                if (eh != e1) { // a self-loop difference has zero boundary
                    t.eexp[eh] += 1;
                    m.add_entry(index.find(t), j, f.from_int(sign));
                    t.eexp[eh] -= 1;
                    t.eexp[e1] += 1;
                    m.add_entry(index.find(t), j, f.from_int(-sign));
                    t.eexp[e1] -= 1;
                }
            } else {
                t.eexp[eh] += 1;
                m.add_entry(index.find(t), j, f.from_int(sign));
                t.eexp[eh] -= 1;
                t.vstate[v] = kStateOccupied;
                m.add_entry(index.find(t), j, f.from_int(-sign));
            }
            sign = -sign;
        }
    }
    m.finalize(f);
    return m;
}

/// Matrix of multiplication by edge e: (i, k) -> (i, k+1). An injection of
/// basis elements.
template <class F>
SparseMatrix<F> stabilization_matrix(const Graph& g, const ComplexVariant& var, EdgeId e, int i,
                                     int k, const F& f) {
    if (e < 0 || e >= g.edge_count()) throw InputError("unknown edge index " + std::to_string(e));
    auto source = enumerate_basis(g, var, i, k);
    auto target = enumerate_basis(g, var, i, k + 1);
    BasisIndex index(target);
    SparseMatrix<F> m(static_cast<int>(target.size()), static_cast<int>(source.size()));
    for (int j = 0; j < static_cast<int>(source.size()); ++j) {
        BasisElement t = source[j];
        t.eexp[e] += 1;
        m.add_entry(index.find(t), j, f.one());
    }
    m.finalize(f);
    return m;
}

/// Coordinate-triplet text form of a matrix, with a header naming the graph
/// hash, variant, bidegree and map. Entries are ordered by (column, row);
/// rationals print as num or num/den. Byte-identical across runs.
template <class F>
std::string export_matrix_triplets(const SparseMatrix<F>& m, const F& f, const std::string& graph_hash,
                                   const ComplexVariant& var, Bidegree bidegree,
                                   const std::string& map_name) {
    std::string out;
    out += "gch-matrix v1\n";
    out += "graph " + graph_hash + "\n";
    out += "variant " + var.name() + "\n";
    out += "map " + map_name + "\n";
    out += "bidegree " + std::to_string(bidegree.i) + " " + std::to_string(bidegree.k) + "\n";
    out += "field " + f.name() + "\n";
    out += "rows " + std::to_string(m.rows) + "\n";
    out += "cols " + std::to_string(m.cols) + "\n";
    for (int c = 0; c < m.cols; ++c)
        for (const auto& [r, v] : m.col[c])
            out += std::to_string(r) + " " + std::to_string(c) + " " + F::to_string(v) + "\n";
    return out;
}

} // namespace gch
