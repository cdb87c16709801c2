#include "gch/chain.hpp"

#include <algorithm>
#include <sstream>

namespace gch {

std::optional<Bidegree> chain_bidegree(const Graph& g, const ComplexVariant& var, const Chain& c) {
    std::optional<Bidegree> deg;
    for (const auto& [e, coeff] : c.terms) {
        Bidegree b = bidegree_of(g, var, e);
        if (!deg) deg = b;
        else if (!(*deg == b)) throw InputError("chain mixes bidegrees");
    }
    return deg;
}

namespace {

int active_slot(const Graph& g, const ComplexVariant& var, VertexId v, HalfId h) {
    auto actives = var.active_halves(g, v);
    for (int t = 0; t < static_cast<int>(actives.size()); ++t)
        if (actives[t] == h) return t;
    return -1;
}

} // namespace

Chain apply_differential(const Graph& g, const ComplexVariant& var, const Chain& c) {
    Chain out;
    for (const auto& [elem, coeff] : c.terms) {
        int sign = 1;
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            std::uint8_t s = elem.vstate[v];
            if (s < kStateHalfBase) continue;
            HalfId h = var.active_halves(g, v).at(s - kStateHalfBase);
            EdgeId eh = g.half_edge(h);
            if (var.is_reduced()) {
                // d(h - h1) = e(h) - e(h1)
                EdgeId e1 = g.half_edge(var.privileged[v]);
                if (eh != e1) {
                    BasisElement t = elem;
                    t.vstate[v] = kStateEmpty;
                    t.eexp[eh] += 1;
                    out.add_term(t, sign * coeff);
                    t.eexp[eh] -= 1;
                    t.eexp[e1] += 1;
                    out.add_term(t, -sign * coeff);
                }
            } else {
                // d(h) = e(h) - v(h)
                BasisElement t = elem;
                t.vstate[v] = kStateEmpty;
                t.eexp[eh] += 1;
                out.add_term(t, sign * coeff);
                t.eexp[eh] -= 1;
                t.vstate[v] = kStateOccupied;
                out.add_term(t, -sign * coeff);
            }
            sign = -sign;
        }
    }
    return out;
}

Chain stabilize(const Graph& g, const Chain& c, EdgeId e, int times) {
    if (e < 0 || e >= g.edge_count()) throw InputError("unknown edge index " + std::to_string(e));
    if (times < 0) throw InputError("stabilization count must be non-negative");
    Chain out;
    for (const auto& [elem, coeff] : c.terms) {
        BasisElement t = elem;
        t.eexp[e] += static_cast<std::uint32_t>(times);
        out.terms.emplace(std::move(t), coeff);
    }
    return out;
}

Chain encode_chain(const Graph& g, const ComplexVariant& var,
                   const std::vector<std::pair<long long, std::string>>& terms) {
    Chain out;
    for (const auto& [coeff, mono] : terms) {
        BasisElement e;
        e.vstate.assign(g.vertex_count(), 0);
        e.eexp.assign(g.edge_count(), 0);
        std::istringstream in(mono);
        std::string factor;
        while (in >> factor) {
            if (factor == "1") continue;
            if (factor.rfind("e:", 0) == 0) {
                std::string body = factor.substr(2);
                int exp = 1;
                auto caret = body.find('^');
                if (caret != std::string::npos) {
                    exp = std::stoi(body.substr(caret + 1));
                    body.erase(caret);
                }
                if (exp < 1) throw InputError("bad exponent in '" + factor + "'");
                e.eexp[g.edge_index(body)] += exp;
            } else if (factor.rfind("v:", 0) == 0) {
                if (var.is_reduced())
                    throw InputError("occupied state '" + factor + "' is not part of the reduced complex");
                VertexId v = g.vertex_index(factor.substr(2));
                if (e.vstate[v] != kStateEmpty) throw InputError("two states at one vertex in '" + mono + "'");
                e.vstate[v] = kStateOccupied;
            } else if (factor.rfind("h:", 0) == 0 || factor.rfind("d:", 0) == 0) {
                bool wants_diff = factor[0] == 'd';
                if (wants_diff != var.is_reduced())
                    throw InputError("state '" + factor + "' does not match the " + var.name() + " variant");
                HalfId h = g.half_index(factor.substr(2));
                VertexId v = g.half_vertex(h);
                if (e.vstate[v] != kStateEmpty) throw InputError("two states at one vertex in '" + mono + "'");
                int slot = active_slot(g, var, v, h);
                if (slot < 0)
                    throw InputError("half-edge " + g.half_name(h) + " is privileged at '" +
                                     g.vertex_name(v) + "' and carries no basis state");
                e.vstate[v] = static_cast<std::uint8_t>(kStateHalfBase + slot);
            } else {
                throw InputError("unknown factor '" + factor + "'");
            }
        }
        out.add_term(e, coeff);
    }
    chain_bidegree(g, var, out); // errors on mixed bidegrees
    return out;
}

std::string chain_to_string(const Graph& g, const ComplexVariant& var, const Chain& c) {
    if (c.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, coeff] : c.terms) {
        if (first) {
            if (coeff < 0) out << "-";
        } else {
            out << (coeff < 0 ? " - " : " + ");
        }
        long long a = std::abs(coeff);
        if (a != 1) out << a << " ";
        out << element_to_string(g, var, e);
        first = false;
    }
    return out.str();
}

Chain assemble_product(const Graph& g, const ComplexVariant& var,
                       const std::vector<LocalFactor>& factors,
                       const std::map<EdgeId, int>& monomial) {
    std::vector<LocalFactor> sorted = factors;
    std::sort(sorted.begin(), sorted.end(),
              [](const LocalFactor& a, const LocalFactor& b) { return a.v < b.v; });
    for (std::size_t t = 0; t + 1 < sorted.size(); ++t)
        if (sorted[t].v == sorted[t + 1].v)
            throw InputError("product factors at vertex '" + g.vertex_name(sorted[t].v) +
                             "' overlap");

    BasisElement seed;
    seed.vstate.assign(g.vertex_count(), 0);
    seed.eexp.assign(g.edge_count(), 0);
    for (const auto& [e, x] : monomial) {
        if (e < 0 || e >= g.edge_count()) throw InputError("unknown edge in monomial");
        if (x < 0) throw InputError("negative exponent in monomial");
        seed.eexp[e] += static_cast<std::uint32_t>(x);
    }
    Chain acc;
    acc.terms.emplace(seed, 1);

    for (const auto& factor : sorted) {
        VertexId v = factor.v;
        // Rewrite the factor in the variant's local basis. In the reduced
        // variant a bare half-edge h stands for no basis state on its own;
        // within each edge-monomial group the coefficients must cancel so
        // that the group is a combination of differences h - privileged.
        struct Piece {
            long long coeff;
            std::map<EdgeId, int> emul;
            int state; // -1 = empty, otherwise kStateHalfBase + slot
        };
        std::vector<Piece> pieces;
        if (var.is_reduced()) {
            std::map<std::map<EdgeId, int>, std::map<HalfId, long long>> groups;
            for (const auto& term : factor.terms) {
                if (!term.half) {
                    pieces.push_back(Piece{term.coeff, term.emul, -1});
                    continue;
                }
                if (g.half_vertex(*term.half) != v)
                    throw InputError("factor state is not at its vertex");
                groups[term.emul][*term.half] += term.coeff;
            }
            for (const auto& [emul, byhalf] : groups) {
                long long total = 0;
                for (const auto& [h, c] : byhalf) total += c;
                if (total != 0)
                    throw InputError("local chain at '" + g.vertex_name(v) +
                                     "' does not lie in the reduced complex");
                for (const auto& [h, c] : byhalf) {
                    if (c == 0 || h == var.privileged[v]) continue;
                    pieces.push_back(Piece{c, emul, kStateHalfBase + active_slot(g, var, v, h)});
                }
            }
        } else {
            for (const auto& term : factor.terms) {
                if (term.coeff == 0) continue;
                if (!term.half) {
                    pieces.push_back(Piece{term.coeff, term.emul, -1});
                } else {
                    if (g.half_vertex(*term.half) != v)
                        throw InputError("factor state is not at its vertex");
                    pieces.push_back(
                        Piece{term.coeff, term.emul, kStateHalfBase + active_slot(g, var, v, *term.half)});
                }
            }
        }

        Chain next;
        for (const auto& [elem, coeff] : acc.terms) {
            if (elem.vstate[v] != kStateEmpty)
                throw InputError("product factors at vertex '" + g.vertex_name(v) + "' overlap");
            for (const auto& piece : pieces) {
                BasisElement t = elem;
                for (const auto& [e, x] : piece.emul) t.eexp[e] += static_cast<std::uint32_t>(x);
                if (piece.state >= 0) t.vstate[v] = static_cast<std::uint8_t>(piece.state);
                next.add_term(t, coeff * piece.coeff);
            }
        }
        acc = std::move(next);
    }
    return acc;
}

} // namespace gch
