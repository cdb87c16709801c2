#include "gch/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace gch {

namespace {

bool valid_token(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.' && c != '\'')
            return false;
    }
    return true;
}

// Minimal union-find.
struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

void Graph::add_vertex(const std::string& name) {
    if (!valid_token(name)) throw InputError("invalid vertex id '" + name + "'");
    if (vertex_lookup_.count(name)) throw InputError("duplicate vertex id '" + name + "'");
    vertex_lookup_.emplace(name, vertex_count());
    vertex_names_.push_back(name);
    vertex_halves_.emplace_back();
}

void Graph::add_edge(const std::string& name, const std::string& end_a, const std::string& end_b) {
    if (!valid_token(name)) throw InputError("invalid edge id '" + name + "'");
    if (edge_lookup_.count(name)) throw InputError("duplicate edge id '" + name + "'");
    auto ita = vertex_lookup_.find(end_a);
    auto itb = vertex_lookup_.find(end_b);
    if (ita == vertex_lookup_.end()) throw InputError("edge '" + name + "' references undeclared vertex '" + end_a + "'");
    if (itb == vertex_lookup_.end()) throw InputError("edge '" + name + "' references undeclared vertex '" + end_b + "'");
    EdgeId e = edge_count();
    edge_lookup_.emplace(name, e);
    edge_names_.push_back(name);
    std::array<HalfId, 2> hs{};
    for (int slot = 0; slot < 2; ++slot) {
        VertexId v = (slot == 0) ? ita->second : itb->second;
        HalfId h = half_edge_count();
        halves_.push_back(HalfEdge{v, e, slot});
        vertex_halves_[v].push_back(h);
        hs[slot] = h;
    }
    edge_halves_.push_back(hs);
}

void Graph::validate() const {
    for (VertexId v = 0; v < vertex_count(); ++v) {
        if (vertex_halves_[v].empty())
            throw InputError("isolated vertex '" + vertex_names_[v] + "'");
    }
}

Graph Graph::parse(const std::string& text) {
    Graph g;
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw InputError(std::string("malformed graph JSON: ") + e.what());
        }
        if (!j.contains("vertices") || !j.contains("edges"))
            throw InputError("graph JSON needs 'vertices' and 'edges' fields");
        for (const auto& v : j["vertices"]) {
            if (!v.is_string()) throw InputError("vertex ids must be strings");
            g.add_vertex(v.get<std::string>());
        }
        for (const auto& e : j["edges"]) {
            if (!e.contains("id") || !e.contains("ends") || e["ends"].size() != 2)
                throw InputError("each edge needs 'id' and a two-element 'ends'");
            g.add_edge(e["id"].get<std::string>(), e["ends"][0].get<std::string>(),
                       e["ends"][1].get<std::string>());
        }
    } else {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash_pos = line.find('#');
            if (hash_pos != std::string::npos) line.erase(hash_pos);
            std::istringstream ls(line);
            std::string kw;
            if (!(ls >> kw)) continue;
            if (kw == "vertex") {
                std::string id, extra;
                if (!(ls >> id) || (ls >> extra))
                    throw InputError("line " + std::to_string(lineno) + ": expected 'vertex <id>'");
                g.add_vertex(id);
            } else if (kw == "edge") {
                std::string id, a, b, extra;
                if (!(ls >> id >> a >> b) || (ls >> extra))
                    throw InputError("line " + std::to_string(lineno) + ": expected 'edge <id> <vid> <vid>'");
                g.add_edge(id, a, b);
            } else {
                throw InputError("line " + std::to_string(lineno) + ": unknown directive '" + kw + "'");
            }
        }
    }
    g.validate();
    return g;
}

Graph Graph::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string Graph::half_name(HalfId h) const {
    const HalfEdge& he = halves_.at(h);
    return edge_names_[he.edge] + ":" + std::to_string(he.slot);
}

VertexId Graph::vertex_index(const std::string& name) const {
    auto it = vertex_lookup_.find(name);
    if (it == vertex_lookup_.end()) throw InputError("unknown vertex '" + name + "'");
    return it->second;
}

EdgeId Graph::edge_index(const std::string& name) const {
    auto it = edge_lookup_.find(name);
    if (it == edge_lookup_.end()) throw InputError("unknown edge '" + name + "'");
    return it->second;
}

HalfId Graph::half_index(const std::string& name) const {
    auto colon = name.rfind(':');
    if (colon == std::string::npos) throw InputError("half-edge id must look like '<edge>:<slot>'");
    EdgeId e = edge_index(name.substr(0, colon));
    std::string slot = name.substr(colon + 1);
    if (slot != "0" && slot != "1") throw InputError("half-edge slot must be 0 or 1 in '" + name + "'");
    return edge_halves_[e][slot == "0" ? 0 : 1];
}

std::array<VertexId, 2> Graph::edge_ends(EdgeId e) const {
    const auto& hs = edge_halves_.at(e);
    return {halves_[hs[0]].vertex, halves_[hs[1]].vertex};
}

std::vector<VertexId> Graph::essential_vertices() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < vertex_count(); ++v)
        if (degree(v) >= 3) out.push_back(v);
    return out;
}

std::vector<EdgeId> Graph::tails() const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < edge_count(); ++e)
        if (is_tail(e)) out.push_back(e);
    return out;
}

bool Graph::is_tail(EdgeId e) const {
    auto ends = edge_ends(e);
    return degree(ends[0]) == 1 || degree(ends[1]) == 1;
}

int Graph::component_count() const {
    Dsu dsu(vertex_count());
    for (EdgeId e = 0; e < edge_count(); ++e) {
        auto ends = edge_ends(e);
        dsu.unite(ends[0], ends[1]);
    }
    int n = 0;
    for (VertexId v = 0; v < vertex_count(); ++v)
        if (dsu.find(v) == v) ++n;
    return n;
}

bool Graph::is_connected() const { return vertex_count() <= 1 || component_count() == 1; }

int Graph::first_betti() const { return edge_count() - vertex_count() + component_count(); }

std::string Graph::fresh_vertex_name(const std::string& base) const {
    std::string name = base;
    while (vertex_lookup_.count(name) || edge_lookup_.count(name)) name += "'";
    return name;
}

std::string Graph::fresh_edge_name(const std::string& base) const {
    std::string name = base;
    while (edge_lookup_.count(name) || vertex_lookup_.count(name)) name += "'";
    return name;
}

GraphSubdivision Graph::subdivide(EdgeId e) const {
    if (e < 0 || e >= edge_count()) throw InputError("unknown edge index " + std::to_string(e));
    GraphSubdivision out;
    const std::string mid = fresh_vertex_name(edge_names_[e] + ".v");
    const std::string e1 = fresh_edge_name(edge_names_[e] + ".1");
    const std::string e2 = fresh_edge_name(edge_names_[e] + ".2");
    Graph& g = out.graph;
    for (const auto& name : vertex_names_) g.add_vertex(name);
    g.add_vertex(mid);
    auto ends = edge_ends(e);
    for (EdgeId f = 0; f < edge_count(); ++f) {
        if (f == e) continue;
        auto fe = edge_ends(f);
        g.add_edge(edge_names_[f], vertex_names_[fe[0]], vertex_names_[fe[1]]);
    }
    g.add_edge(e1, vertex_names_[ends[0]], mid);
    g.add_edge(e2, mid, vertex_names_[ends[1]]);
    out.new_vertex = mid;
    out.first_edge = e1;
    out.second_edge = e2;
    return out;
}

Graph Graph::explode(const std::vector<VertexId>& w) const {
    std::vector<bool> gone(vertex_count(), false);
    for (VertexId v : w) {
        if (v < 0 || v >= vertex_count()) throw InputError("unknown vertex index " + std::to_string(v));
        gone[v] = true;
    }
    Graph g;
    // Stub names must not clash with surviving names; half names contain ':'
    // which the builder rejects, so spell the slot with '.'.
    std::vector<std::string> half_vertex_name(half_edge_count());
    for (VertexId v = 0; v < vertex_count(); ++v) {
        if (!gone[v]) {
            g.add_vertex(vertex_names_[v]);
            for (HalfId h : vertex_halves_[v]) half_vertex_name[h] = vertex_names_[v];
        } else {
            for (HalfId h : vertex_halves_[v]) {
                const HalfEdge& he = halves_[h];
                std::string stub = vertex_names_[v] + "." + edge_names_[he.edge] + "." + std::to_string(he.slot);
                while (g.vertex_lookup_.count(stub)) stub += "'";
                g.add_vertex(stub);
                half_vertex_name[h] = stub;
            }
        }
    }
    for (EdgeId e = 0; e < edge_count(); ++e) {
        const auto& hs = edge_halves_[e];
        g.add_edge(edge_names_[e], half_vertex_name[hs[0]], half_vertex_name[hs[1]]);
    }
    return g;
}

std::string Graph::canonical_text() const {
    std::ostringstream out;
    for (const auto& v : vertex_names_) out << "vertex " << v << "\n";
    for (EdgeId e = 0; e < edge_count(); ++e) {
        auto ends = edge_ends(e);
        out << "edge " << edge_names_[e] << " " << vertex_names_[ends[0]] << " "
            << vertex_names_[ends[1]] << "\n";
    }
    return out.str();
}

std::string Graph::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical_text()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

std::vector<std::vector<EdgeId>> EdgePartition::blocks() const {
    std::vector<std::vector<EdgeId>> out(block_count);
    for (EdgeId e = 0; e < static_cast<EdgeId>(block_of.size()); ++e)
        out[block_of[e]].push_back(e);
    return out;
}

EdgePartition component_partition(const Graph& g, const std::vector<VertexId>& w) {
    std::vector<bool> gone(g.vertex_count(), false);
    for (VertexId v : w) {
        if (v < 0 || v >= g.vertex_count()) throw InputError("unknown vertex index " + std::to_string(v));
        gone[v] = true;
    }
    // Two edges are in the same block iff they are linked through surviving
    // vertices; this matches components of explode(g, w), every one of which
    // contains an edge.
    Dsu dsu(g.edge_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (gone[v]) continue;
        const auto& hs = g.halves_at(v);
        for (std::size_t j = 1; j < hs.size(); ++j)
            dsu.unite(g.half_edge(hs[0]), g.half_edge(hs[j]));
    }
    EdgePartition part;
    part.block_of.assign(g.edge_count(), -1);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        int root = dsu.find(e);
        if (part.block_of[root] < 0) part.block_of[root] = part.block_count++;
        part.block_of[e] = part.block_of[root];
    }
    return part;
}

RamosResult ramos_number(const Graph& g, int i) {
    if (!g.is_connected())
        throw InputError("ramos_number requires a connected graph; compute per component");
    std::vector<VertexId> ess = g.essential_vertices();
    if (i < 0 || i > static_cast<int>(ess.size()))
        throw InputError("ramos index " + std::to_string(i) + " exceeds essential vertex count " +
                         std::to_string(ess.size()));
    RamosResult out;
    std::vector<VertexId> subset(i);
    std::vector<int> idx(i);
    // exhaustive scan over i-subsets of the essential vertices
    auto consider = [&](const std::vector<VertexId>& w) {
        int blocks = component_partition(g, w).block_count;
        if (blocks > out.delta) {
            out.delta = blocks;
            out.maximizers.clear();
        }
        if (blocks == out.delta) out.maximizers.push_back(w);
    };
    if (i == 0) {
        consider({});
        return out;
    }
    for (int j = 0; j < i; ++j) idx[j] = j;
    while (true) {
        for (int j = 0; j < i; ++j) subset[j] = ess[idx[j]];
        consider(subset);
        int j = i - 1;
        while (j >= 0 && idx[j] == static_cast<int>(ess.size()) - i + j) --j;
        if (j < 0) break;
        ++idx[j];
        for (int t = j + 1; t < i; ++t) idx[t] = idx[t - 1] + 1;
    }
    return out;
}

bool is_well_separating(const Graph& g, const std::vector<VertexId>& w) {
    for (VertexId v : w)
        if (g.degree(v) < 3)
            throw InputError("vertex '" + g.vertex_name(v) + "' is not essential");
    EdgePartition part = component_partition(g, w);
    for (VertexId v : w) {
        int first_block = -1;
        bool split = false;
        for (HalfId h : g.halves_at(v)) {
            int b = part.block_of[g.half_edge(h)];
            if (first_block < 0) first_block = b;
            else if (b != first_block) { split = true; break; }
        }
        if (!split) return false;
    }
    return true;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph g;
    for (VertexId v = 0; v < a.vertex_count(); ++v) g.add_vertex("a_" + a.vertex_name(v));
    for (VertexId v = 0; v < b.vertex_count(); ++v) g.add_vertex("b_" + b.vertex_name(v));
    for (EdgeId e = 0; e < a.edge_count(); ++e) {
        auto ends = a.edge_ends(e);
        g.add_edge("a_" + a.edge_name(e), "a_" + a.vertex_name(ends[0]), "a_" + a.vertex_name(ends[1]));
    }
    for (EdgeId e = 0; e < b.edge_count(); ++e) {
        auto ends = b.edge_ends(e);
        g.add_edge("b_" + b.edge_name(e), "b_" + b.vertex_name(ends[0]), "b_" + b.vertex_name(ends[1]));
    }
    return g;
}

} // namespace gch
