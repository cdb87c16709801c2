#include "gch/basis.hpp"

#include <functional>
#include <sstream>

namespace gch {

ComplexVariant ComplexVariant::full(const Graph& g) {
    ComplexVariant var;
    var.tag = Tag::full;
    var.privileged.assign(g.vertex_count(), -1);
    return var;
}

ComplexVariant ComplexVariant::reduced(const Graph& g) {
    ComplexVariant var;
    var.tag = Tag::reduced;
    var.privileged.resize(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        var.privileged[v] = g.halves_at(v).front();
    return var;
}

ComplexVariant ComplexVariant::reduced_privileging(const Graph& g, VertexId v, HalfId h) {
    ComplexVariant var = reduced(g);
    if (g.half_vertex(h) != v)
        throw InputError("privileged half-edge " + g.half_name(h) + " is not at vertex '" +
                         g.vertex_name(v) + "'");
    var.privileged[v] = h;
    return var;
}

std::vector<HalfId> ComplexVariant::active_halves(const Graph& g, VertexId v) const {
    std::vector<HalfId> out;
    for (HalfId h : g.halves_at(v))
        if (!is_reduced() || h != privileged[v]) out.push_back(h);
    return out;
}

Bidegree bidegree_of(const Graph& g, const ComplexVariant& var, const BasisElement& e) {
    if (static_cast<int>(e.vstate.size()) != g.vertex_count() ||
        static_cast<int>(e.eexp.size()) != g.edge_count())
        throw InputError("basis element does not match the graph's shape");
    Bidegree b;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::uint8_t s = e.vstate[v];
        if (s == kStateEmpty) continue;
        if (s == kStateOccupied) {
            if (var.is_reduced()) throw InputError("occupied state is not part of the reduced complex");
            b.k += 1;
        } else {
            int t = s - kStateHalfBase;
            if (t >= static_cast<int>(var.active_halves(g, v).size()))
                throw InputError("half-edge state out of range at vertex '" + g.vertex_name(v) + "'");
            b.i += 1;
            b.k += 1;
        }
    }
    for (auto x : e.eexp) b.k += static_cast<int>(x);
    return b;
}

namespace {

// Shared enumeration skeleton: assign vertex states in lex order, then edge
// exponents in lex order. `sink` returns false to abort early.
bool walk_basis(const Graph& g, const ComplexVariant& var, int i, int k,
                const std::function<bool(const BasisElement&)>& sink) {
    if (i < 0 || k < 0) return true;
    const int nv = g.vertex_count();
    const int ne = g.edge_count();
    BasisElement cur;
    cur.vstate.assign(nv, 0);
    cur.eexp.assign(ne, 0);

    // exponent vectors of total `remaining` over edges from `e` on, lex order
    std::function<bool(int, int)> edges = [&](int e, int remaining) -> bool {
        if (e == ne - 1) {
            cur.eexp[e] = remaining;
            bool keep = sink(cur);
            cur.eexp[e] = 0;
            return keep;
        }
        for (int x = 0; x <= remaining; ++x) {
            cur.eexp[e] = x;
            if (!edges(e + 1, remaining - x)) { cur.eexp[e] = 0; return false; }
        }
        cur.eexp[e] = 0;
        return true;
    };

    std::function<bool(int, int, int)> verts = [&](int v, int degree_left, int weight_left) -> bool {
        if (weight_left < degree_left) return true; // each half-state costs a unit of weight
        if (v == nv) {
            if (degree_left != 0) return true;
            if (ne == 0) return weight_left == 0 ? sink(cur) : true;
            return edges(0, weight_left);
        }
        if (!verts(v + 1, degree_left, weight_left)) return false; // empty
        if (!var.is_reduced() && weight_left >= 1) {
            cur.vstate[v] = kStateOccupied;
            if (!verts(v + 1, degree_left, weight_left - 1)) { cur.vstate[v] = 0; return false; }
        }
        if (degree_left >= 1 && weight_left >= 1) {
            int actives = static_cast<int>(var.active_halves(g, v).size());
            for (int t = 0; t < actives; ++t) {
                cur.vstate[v] = static_cast<std::uint8_t>(kStateHalfBase + t);
                if (!verts(v + 1, degree_left - 1, weight_left - 1)) { cur.vstate[v] = 0; return false; }
            }
        }
        cur.vstate[v] = 0;
        return true;
    };

    return verts(0, i, k);
}

} // namespace

std::vector<BasisElement> enumerate_basis(const Graph& g, const ComplexVariant& var, int i, int k) {
    std::vector<BasisElement> out;
    walk_basis(g, var, i, k, [&](const BasisElement& e) {
        out.push_back(e);
        return true;
    });
    return out;
}

long long basis_dimension(const Graph& g, const ComplexVariant& var, int i, int k, long long cap) {
    long long n = 0;
    walk_basis(g, var, i, k, [&](const BasisElement&) {
        ++n;
        return cap < 0 || n <= cap;
    });
    return n;
}

std::string element_to_string(const Graph& g, const ComplexVariant& var, const BasisElement& e) {
    std::ostringstream out;
    bool first = true;
    auto sep = [&]() {
        if (!first) out << " ";
        first = false;
    };
    for (EdgeId ed = 0; ed < g.edge_count(); ++ed) {
        if (e.eexp[ed] == 0) continue;
        sep();
        out << "e:" << g.edge_name(ed);
        if (e.eexp[ed] > 1) out << "^" << e.eexp[ed];
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::uint8_t s = e.vstate[v];
        if (s == kStateEmpty) continue;
        sep();
        if (s == kStateOccupied) {
            out << "v:" << g.vertex_name(v);
        } else {
            HalfId h = var.active_halves(g, v).at(s - kStateHalfBase);
            out << (var.is_reduced() ? "d:" : "h:") << g.half_name(h);
        }
    }
    if (first) out << "1";
    return out.str();
}

} // namespace gch
