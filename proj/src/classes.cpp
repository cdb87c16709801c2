#include "gch/classes.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace gch {

namespace {

struct Visit {
    VertexId vertex;
    HalfId arrival;
    HalfId departure;
};

std::vector<Visit> walk_visits(const Graph& g, const std::vector<WalkStep>& walk) {
    if (walk.empty()) throw InputError("empty walk");
    std::vector<Visit> visits;
    auto departure_half = [&](const WalkStep& s) {
        return g.edge_halves(s.edge)[s.forward ? 0 : 1];
    };
    auto arrival_half = [&](const WalkStep& s) {
        return g.edge_halves(s.edge)[s.forward ? 1 : 0];
    };
    for (std::size_t j = 0; j < walk.size(); ++j) {
        const WalkStep& cur = walk[j];
        const WalkStep& next = walk[(j + 1) % walk.size()];
        if (cur.edge < 0 || cur.edge >= g.edge_count()) throw InputError("walk uses an unknown edge");
        HalfId arr = arrival_half(cur);
        HalfId dep = departure_half(next);
        if (g.half_vertex(arr) != g.half_vertex(dep))
            throw InputError("walk is not closed: step " + std::to_string(j + 1) +
                             " does not continue where step " + std::to_string(j) + " ends");
        visits.push_back(Visit{g.half_vertex(arr), arr, dep});
    }
    return visits;
}

Chain single_vertex_difference(const Graph& g, const ComplexVariant& var, VertexId v, HalfId plus,
                               HalfId minus) {
    LocalFactor factor;
    factor.v = v;
    factor.terms.push_back(LocalFactor::Term{+1, {}, plus});
    factor.terms.push_back(LocalFactor::Term{-1, {}, minus});
    return assemble_product(g, var, {factor}, {});
}

LocalFactor star_local_factor(const Graph& g, const StarSpec& spec) {
    const auto& [h1, h2, h3] = spec.halves;
    if (spec.w < 0 || spec.w >= g.vertex_count()) throw InputError("star vertex out of range");
    if (g.degree(spec.w) < 3)
        throw InputError("star vertex '" + g.vertex_name(spec.w) + "' is not essential");
    if (h1 == h2 || h1 == h3 || h2 == h3) throw InputError("star half-edges must be distinct");
    for (HalfId h : spec.halves)
        if (g.half_vertex(h) != spec.w)
            throw InputError("star half-edge " + g.half_name(h) + " is not at vertex '" +
                             g.vertex_name(spec.w) + "'");
    EdgeId e1 = g.half_edge(h1), e2 = g.half_edge(h2), e3 = g.half_edge(h3);
    LocalFactor factor;
    factor.v = spec.w;
    long long s = spec.sign;
    // e3 (h1 - h2) + e2 (h3 - h1) + e1 (h2 - h3)
    factor.terms.push_back(LocalFactor::Term{+s, {{e3, 1}}, h1});
    factor.terms.push_back(LocalFactor::Term{-s, {{e3, 1}}, h2});
    factor.terms.push_back(LocalFactor::Term{+s, {{e2, 1}}, h3});
    factor.terms.push_back(LocalFactor::Term{-s, {{e2, 1}}, h1});
    factor.terms.push_back(LocalFactor::Term{+s, {{e1, 1}}, h2});
    factor.terms.push_back(LocalFactor::Term{-s, {{e1, 1}}, h3});
    return factor;
}

void assert_cycle(const Graph& g, const ComplexVariant& var, const Chain& c, const char* what) {
    if (!apply_differential(g, var, c).is_zero())
        throw Error(std::string(what) + " representative failed the cycle check");
}

} // namespace

Chain loop_class(const Graph& g, const ComplexVariant& var, const std::vector<WalkStep>& walk) {
    Chain out;
    for (const Visit& visit : walk_visits(g, walk)) {
        if (visit.arrival == visit.departure) continue; // backtrack contributes nothing
        out += single_vertex_difference(g, var, visit.vertex, visit.arrival, visit.departure);
    }
    assert_cycle(g, var, out, "loop");
    return out;
}

Chain star_class(const Graph& g, const ComplexVariant& var, const StarSpec& spec) {
    Chain out = assemble_product(g, var, {star_local_factor(g, spec)}, {});
    assert_cycle(g, var, out, "star");
    return out;
}

Chain torus_class(const Graph& g, const ComplexVariant& var, const TorusSpec& spec) {
    std::vector<VertexId> support = spec.support();
    for (std::size_t t = 0; t + 1 < support.size(); ++t)
        if (support[t] == support[t + 1])
            throw InputError("torus star factors overlap at vertex '" +
                             g.vertex_name(support[t]) + "'");
    std::vector<LocalFactor> factors;
    for (const auto& s : spec.stars) factors.push_back(star_local_factor(g, s));
    Chain out = assemble_product(g, var, factors, spec.monomial);
    assert_cycle(g, var, out, "torus");
    return out;
}

AWFamily a_w_family(const Graph& g, const std::vector<VertexId>& w,
                    const std::optional<std::vector<std::array<HalfId, 2>>>& choices) {
    AWFamily fam;
    fam.w = w;
    std::sort(fam.w.begin(), fam.w.end());
    for (std::size_t t = 0; t + 1 < fam.w.size(); ++t)
        if (fam.w[t] == fam.w[t + 1]) throw InputError("duplicate vertex in W");
    if (!is_well_separating(g, fam.w))
        throw InputError("W is not well-separating");
    fam.partition = component_partition(g, fam.w);

    for (std::size_t t = 0; t < fam.w.size(); ++t) {
        VertexId v = fam.w[t];
        const auto& halves = g.halves_at(v);
        std::array<HalfId, 2> pick{-1, -1};
        if (choices) {
            if (choices->size() != fam.w.size())
                throw InputError("need one half-edge pair per vertex of W");
            pick = (*choices)[t];
            for (HalfId h : pick)
                if (g.half_vertex(h) != v)
                    throw InputError("chosen half-edge " + g.half_name(h) + " is not at '" +
                                     g.vertex_name(v) + "'");
            if (pick[0] == pick[1] ||
                fam.partition.same_block(g.half_edge(pick[0]), g.half_edge(pick[1])))
                throw InputError("chosen edges at '" + g.vertex_name(v) +
                                 "' lie in the same block");
        } else {
            bool best_both_tails = false;
            for (std::size_t a = 0; a < halves.size(); ++a)
                for (std::size_t b = a + 1; b < halves.size(); ++b) {
                    EdgeId ea = g.half_edge(halves[a]), eb = g.half_edge(halves[b]);
                    if (fam.partition.same_block(ea, eb)) continue;
                    bool both_tails = g.is_tail(ea) && g.is_tail(eb);
                    if (pick[0] < 0 || (best_both_tails && !both_tails)) {
                        pick = {halves[a], halves[b]};
                        best_both_tails = both_tails;
                    }
                }
            if (pick[0] < 0) throw Error("no separating pair at a well-separating vertex");
            if (best_both_tails) fam.tails_warning = true;
        }
        fam.fixed.push_back(pick);
    }

    // one torus per choice of extra half-edge at each vertex
    std::vector<std::vector<HalfId>> extras;
    for (std::size_t t = 0; t < fam.w.size(); ++t) {
        std::vector<HalfId> ex;
        for (HalfId h : g.halves_at(fam.w[t]))
            if (h != fam.fixed[t][0] && h != fam.fixed[t][1]) ex.push_back(h);
        extras.push_back(std::move(ex));
    }
    std::vector<std::size_t> pickidx(fam.w.size(), 0);
    while (true) {
        TorusSpec spec;
        for (std::size_t t = 0; t < fam.w.size(); ++t) {
            StarSpec star;
            star.w = fam.w[t];
            star.halves = {fam.fixed[t][0], fam.fixed[t][1], extras[t][pickidx[t]]};
            spec.stars.push_back(star);
        }
        fam.members.push_back(std::move(spec));
        // next multi-index
        std::size_t t = fam.w.size();
        while (t > 0) {
            --t;
            if (++pickidx[t] < extras[t].size()) break;
            pickidx[t] = 0;
            if (t == 0) return fam;
        }
        if (fam.w.empty()) return fam;
    }
}

bool is_rigid(const Graph& g, const TorusSpec& spec) {
    std::vector<VertexId> w = spec.support();
    if (!is_well_separating(g, w))
        throw InputError("torus support is not well-separating");
    EdgePartition part = component_partition(g, w);
    for (const auto& star : spec.stars) {
        int b0 = part.block_of[g.half_edge(star.halves[0])];
        bool split = false;
        for (HalfId h : star.halves)
            if (part.block_of[g.half_edge(h)] != b0) split = true;
        if (!split) return false;
    }
    return true;
}

bool top_symbol_nonzero(const Graph& g, const TorusSpec& spec) {
    std::vector<VertexId> w = spec.support();
    if (!is_well_separating(g, w))
        throw InputError("torus support is not well-separating");
    EdgePartition part = component_partition(g, w);
    ComplexVariant var = ComplexVariant::reduced(g);
    Chain rep = torus_class(g, var, spec);

    std::vector<char> in_w(g.vertex_count(), 0);
    for (VertexId v : w) in_w[v] = 1;
    std::map<std::pair<std::vector<std::uint32_t>, std::vector<std::uint8_t>>, long long> symbol;
    for (const auto& [elem, coeff] : rep.terms) {
        bool top = true;
        for (VertexId v = 0; v < g.vertex_count() && top; ++v)
            if ((elem.vstate[v] >= kStateHalfBase) != static_cast<bool>(in_w[v])) top = false;
        if (!top) continue;
        std::vector<std::uint32_t> block_exp(part.block_count, 0);
        for (EdgeId e = 0; e < g.edge_count(); ++e) block_exp[part.block_of[e]] += elem.eexp[e];
        auto& acc = symbol[{std::move(block_exp), elem.vstate}];
        acc += coeff;
    }
    for (const auto& [key, coeff] : symbol)
        if (coeff != 0) return true;
    return false;
}

long long torus_module_dimension(const Graph& g, const AWFamily& fam, int k) {
    (void)g;
    int two_w = 2 * static_cast<int>(fam.w.size());
    if (k < two_w) return 0;
    int b = fam.partition.block_count;
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k - two_w + b - 1),
                 static_cast<unsigned long>(b - 1));
    binom *= static_cast<long>(fam.members.size());
    if (!binom.fits_slong_p()) throw ResourceError("torus module dimension overflows");
    return binom.get_si();
}

bool verify_aw_freeness(const Graph& g, const AWFamily& fam, const FieldSpec& field, int k,
                        const EngineOptions& opts) {
    int two_w = 2 * static_cast<int>(fam.w.size());
    if (k < two_w) throw InputError("weight must be at least 2|W|");
    // one representative edge per block
    std::vector<EdgeId> reps(fam.partition.block_count, -1);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (reps[fam.partition.block_of[e]] < 0) reps[fam.partition.block_of[e]] = e;

    // all monomials of total degree k - 2|W| in the representatives
    std::vector<std::map<EdgeId, int>> monomials;
    std::map<EdgeId, int> cur;
    std::function<void(std::size_t, int)> gen = [&](std::size_t b, int left) {
        if (b + 1 == reps.size()) {
            if (left > 0) cur[reps[b]] = left;
            monomials.push_back(cur);
            cur.erase(reps[b]);
            return;
        }
        for (int x = 0; x <= left; ++x) {
            if (x > 0) cur[reps[b]] = x;
            gen(b + 1, left - x);
            cur.erase(reps[b]);
        }
    };
    if (!reps.empty()) gen(0, k - two_w);

    ComplexVariant var = ComplexVariant::reduced(g);
    std::vector<Chain> cycles;
    for (const auto& member : fam.members)
        for (const auto& mono : monomials) {
            TorusSpec stabilized = member;
            for (const auto& [e, x] : mono) stabilized.monomial[e] += x;
            cycles.push_back(torus_class(g, var, stabilized));
        }
    long long rank = homology_quotient_rank(g, var, field, cycles, opts);
    return rank == torus_module_dimension(g, fam, k);
}

RelationKind relation_kind_from_string(const std::string& s) {
    if (s == "q") return RelationKind::q;
    if (s == "theta") return RelationKind::theta;
    if (s == "unstablex") return RelationKind::unstable_x;
    if (s == "stablex") return RelationKind::stable_x;
    if (s == "combinedx") return RelationKind::combined_x;
    if (s == "star") return RelationKind::star_nontrivial;
    throw InputError("unknown relation kind '" + s + "'");
}

std::string relation_kind_name(RelationKind kind) {
    switch (kind) {
        case RelationKind::q: return "q";
        case RelationKind::theta: return "theta";
        case RelationKind::unstable_x: return "unstablex";
        case RelationKind::stable_x: return "stablex";
        case RelationKind::combined_x: return "combinedx";
        case RelationKind::star_nontrivial: return "star";
    }
    return "?";
}

namespace {

// Lollipop configuration: a self-loop at an essential vertex.
void autodetect_q(const Graph& g, RelationParams& p) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto ends = g.edge_ends(e);
        if (ends[0] == ends[1] && g.degree(ends[0]) >= 3) {
            p.walk = std::vector<WalkStep>{WalkStep{e, true}};
            p.vertex = ends[0];
            for (HalfId h : g.halves_at(ends[0]))
                if (g.half_edge(h) != e) {
                    p.extra_half = h;
                    break;
                }
            return;
        }
    }
    throw InputError("configuration absent: no self-loop at an essential vertex");
}

void autodetect_theta(const Graph& g, RelationParams& p) {
    for (VertexId a = 0; a < g.vertex_count(); ++a)
        for (VertexId b = a + 1; b < g.vertex_count(); ++b) {
            int parallel = 0;
            for (EdgeId e = 0; e < g.edge_count(); ++e) {
                auto ends = g.edge_ends(e);
                if ((ends[0] == a && ends[1] == b) || (ends[0] == b && ends[1] == a)) ++parallel;
            }
            if (parallel >= 3) {
                p.theta_vertices = std::array<VertexId, 2>{a, b};
                return;
            }
        }
    throw InputError("configuration absent: no pair of vertices joined by three parallel edges");
}

VertexId autodetect_degree4(const Graph& g) {
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) >= 4) return v;
    throw InputError("configuration absent: no vertex of degree >= 4");
}

HalfId half_at(const Graph& g, EdgeId e, VertexId v) {
    for (HalfId h : g.edge_halves(e))
        if (g.half_vertex(h) == v) return h;
    throw Error("edge is not incident on the vertex");
}

} // namespace

RelationReport verify_relation(const Graph& g, const FieldSpec& field, RelationKind kind,
                               const RelationParams& params, const EngineOptions& opts) {
    ComplexVariant var = ComplexVariant::reduced(g);
    RelationParams p = params;
    RelationReport rep;
    rep.kind = kind;
    Chain combination;
    std::ostringstream pstr;

    switch (kind) {
        case RelationKind::q: {
            if (!p.walk || !p.vertex || !p.extra_half) autodetect_q(g, p);
            Chain gamma = loop_class(g, var, *p.walk);
            auto visits = walk_visits(g, *p.walk);
            const Visit* at = nullptr;
            for (const auto& visit : visits)
                if (visit.vertex == *p.vertex) { at = &visit; break; }
            if (!at) throw InputError("the walk does not visit the chosen vertex");
            HalfId f_half = *p.extra_half;
            StarSpec star{*p.vertex, {f_half, at->arrival, at->departure}, +1};
            combination = stabilize(g, gamma, g.half_edge(f_half)) -
                          stabilize(g, gamma, g.half_edge(at->arrival)) -
                          star_class(g, var, star);
            pstr << "vertex=" << g.vertex_name(*p.vertex) << " extra=" << g.half_name(f_half)
                 << " cycle-length=" << p.walk->size();
            break;
        }
        case RelationKind::theta: {
            if (!p.theta_vertices) autodetect_theta(g, p);
            auto [a, b] = *p.theta_vertices;
            std::vector<EdgeId> joining;
            for (EdgeId e = 0; e < g.edge_count(); ++e) {
                auto ends = g.edge_ends(e);
                if ((ends[0] == a && ends[1] == b) || (ends[0] == b && ends[1] == a))
                    joining.push_back(e);
            }
            if (joining.size() < 3)
                throw InputError("vertices are not joined by three parallel edges");
            EdgeId x = joining[0], y = joining[1], z = joining[2];
            // mirrored orientations: planar "clockwise" at both vertices
            StarSpec alpha{a, {half_at(g, x, a), half_at(g, y, a), half_at(g, z, a)}, +1};
            StarSpec alpha_prime{b, {half_at(g, x, b), half_at(g, z, b), half_at(g, y, b)}, +1};
            combination = star_class(g, var, alpha) - star_class(g, var, alpha_prime);
            pstr << "vertices=" << g.vertex_name(a) << "," << g.vertex_name(b)
                 << " edges=" << g.edge_name(x) << "," << g.edge_name(y) << "," << g.edge_name(z);
            break;
        }
        case RelationKind::unstable_x:
        case RelationKind::stable_x:
        case RelationKind::combined_x: {
            VertexId w = p.vertex ? *p.vertex : autodetect_degree4(g);
            if (g.degree(w) < 4)
                throw InputError("vertex '" + g.vertex_name(w) + "' has degree < 4");
            const auto& hs = g.halves_at(w);
            HalfId h1 = hs[0], h2 = hs[1], h3 = hs[2], h4 = hs[3];
            EdgeId e1 = g.half_edge(h1), e2 = g.half_edge(h2), e3 = g.half_edge(h3),
                   e4 = g.half_edge(h4);
            Chain a123 = star_class(g, var, StarSpec{w, {h1, h2, h3}, +1});
            Chain a124 = star_class(g, var, StarSpec{w, {h1, h2, h4}, +1});
            Chain a134 = star_class(g, var, StarSpec{w, {h1, h3, h4}, +1});
            Chain a234 = star_class(g, var, StarSpec{w, {h2, h3, h4}, +1});
            if (kind == RelationKind::unstable_x) {
                combination = a123 - a124 + a134 - a234;
            } else if (kind == RelationKind::stable_x) {
                combination = stabilize(g, a123, e4) - stabilize(g, a124, e3) +
                              stabilize(g, a134, e2) - stabilize(g, a234, e1);
            } else {
                combination = (stabilize(g, a123, e4) - stabilize(g, a123, e1)) -
                              (stabilize(g, a124, e3) - stabilize(g, a124, e1)) +
                              (stabilize(g, a134, e2) - stabilize(g, a134, e1));
            }
            pstr << "vertex=" << g.vertex_name(w) << " halves=" << g.half_name(h1) << ","
                 << g.half_name(h2) << "," << g.half_name(h3) << "," << g.half_name(h4);
            break;
        }
        case RelationKind::star_nontrivial: {
            VertexId w;
            if (p.vertex) {
                w = *p.vertex;
            } else {
                auto ess = g.essential_vertices();
                if (ess.empty()) throw InputError("configuration absent: no essential vertex");
                w = ess.front();
            }
            const auto& hs = g.halves_at(w);
            if (hs.size() < 3) throw InputError("vertex '" + g.vertex_name(w) + "' is not essential");
            combination = star_class(g, var, StarSpec{w, {hs[0], hs[1], hs[2]}, +1});
            pstr << "vertex=" << g.vertex_name(w);
            break;
        }
    }

    // ambient bidegree of the construction; the combination may cancel to the
    // zero chain (several of these relations hold on the nose)
    Bidegree ambient{1, 2};
    if (kind == RelationKind::stable_x || kind == RelationKind::combined_x) ambient = Bidegree{1, 3};
    auto deg = chain_bidegree(g, var, combination);
    if (deg && !(*deg == ambient)) throw Error("relation combination has an unexpected bidegree");
    rep.bidegree = ambient;
    rep.parameters = pstr.str();
    rep.boundary = is_boundary(g, var, field, combination, opts);
    rep.witness_found = rep.boundary && !combination.is_zero();
    return rep;
}

std::string RelationReport::to_json() const {
    nlohmann::json j;
    j["kind"] = relation_kind_name(kind);
    j["parameters"] = parameters;
    j["bidegree"] = {{"i", bidegree.i}, {"k", bidegree.k}};
    j["is_boundary"] = boundary;
    j["witness_found"] = witness_found;
    return j.dump();
}

} // namespace gch
