#include "gch/homology.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "gch/threadpool.hpp"

namespace gch {

namespace {

template <class Fn>
auto with_field(const FieldSpec& fs, Fn&& fn) {
    switch (fs.kind) {
        case FieldSpec::Kind::rationals: {
            RationalField f;
            return fn(f);
        }
        case FieldSpec::Kind::prime: {
            PrimeField f(fs.p);
            return fn(f);
        }
        default:
            throw InputError("this operation needs a field (q or fp:P), not z");
    }
}

void check_no_isolated(const Graph& g) {
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == 0)
            throw InputError("graph has an isolated vertex '" + g.vertex_name(v) + "'");
}

long long guarded_dimension(const Graph& g, const ComplexVariant& var, int i, int k,
                            long long cap) {
    long long dim = basis_dimension(g, var, i, k, cap);
    if (cap > 0 && dim > cap)
        throw ResourceError("basis at (i=" + std::to_string(i) + ", k=" + std::to_string(k) +
                            ") exceeds the cap of " + std::to_string(cap) +
                            " columns; raise --cap to proceed");
    return dim;
}

/// rank of d_(i,k) over the field; 0 when either side of the map is empty.
template <class F>
long long differential_rank(const Graph& g, const ComplexVariant& var, int i, int k, const F& f,
                            long long cap) {
    if (i < 1) return 0;
    long long src = guarded_dimension(g, var, i, k, cap);
    if (src == 0) return 0;
    long long tgt = guarded_dimension(g, var, i - 1, k, cap);
    if (tgt == 0) return 0;
    return sparse_rank(differential_matrix(g, var, i, k, f), f);
}

/// Cycle space at (i,k) as sparse columns in the enumerated basis.
template <class F>
std::vector<typename SparseMatrix<F>::Column> cycle_space(const Graph& g, const ComplexVariant& var,
                                                          int i, int k, const F& f) {
    long long dim = basis_dimension(g, var, i, k);
    std::vector<typename SparseMatrix<F>::Column> out;
    if (dim == 0) return out;
    if (i == 0) {
        for (int j = 0; j < dim; ++j) out.push_back({{j, f.one()}});
        return out;
    }
    return kernel_basis(differential_matrix(g, var, i, k, f), f);
}

template <class F>
SparseMatrix<F> columns_to_matrix(int rows, const std::vector<typename SparseMatrix<F>::Column>& cols) {
    SparseMatrix<F> m(rows, static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) m.col[j] = cols[j];
    return m;
}

} // namespace

long long betti(const Graph& g, const FieldSpec& field, int i, int k, const ComplexVariant& var,
                const EngineOptions& opts) {
    check_no_isolated(g);
    if (i < 0 || k < 0) throw InputError("bidegree must be non-negative");
    if (field.kind == FieldSpec::Kind::integers)
        return integral_homology(g, i, k, var, opts).first;
    return with_field(field, [&](const auto& f) -> long long {
        long long dim = guarded_dimension(g, var, i, k, opts.cap);
        if (dim == 0) return 0;
        long long r_i = differential_rank(g, var, i, k, f, opts.cap);
        long long r_next = differential_rank(g, var, i + 1, k, f, opts.cap);
        return dim - r_i - r_next;
    });
}

BettiTable betti_table(const Graph& g, const FieldSpec& field, int i_max, int k_max,
                       const ComplexVariant& var, const EngineOptions& opts) {
    check_no_isolated(g);
    if (i_max < 0 || k_max < 0) throw InputError("rectangle bounds must be non-negative");
    BettiTable table;
    table.graph_hash = g.hash();
    table.field = field;

    if (field.kind == FieldSpec::Kind::integers) {
        std::vector<std::function<void()>> jobs;
        std::mutex lock;
        for (int i = 0; i <= i_max; ++i)
            for (int k = 0; k <= k_max; ++k)
                jobs.emplace_back([&, i, k]() {
                    auto [free_rank, factors] = integral_homology(g, i, k, var, opts);
                    std::lock_guard<std::mutex> guard(lock);
                    table.entries[{i, k}] = free_rank;
                    if (!factors.empty()) table.torsion[{i, k}] = factors;
                });
        run_parallel(opts.workers, jobs);
        return table;
    }

    // ranks r[i][k] of d_(i,k) for i = 1..i_max+1, computed in parallel
    std::vector<std::vector<long long>> dims(i_max + 2, std::vector<long long>(k_max + 1, 0));
    std::vector<std::vector<long long>> ranks(i_max + 2, std::vector<long long>(k_max + 1, 0));
    for (int i = 0; i <= i_max + 1; ++i)
        for (int k = 0; k <= k_max; ++k) dims[i][k] = guarded_dimension(g, var, i, k, opts.cap);

    // larger cells (high k) first: better load balance on the pool
    std::vector<std::function<void()>> jobs;
    for (int k = k_max; k >= 0; --k)
        for (int i = 1; i <= i_max + 1; ++i) {
            if (dims[i][k] == 0 || dims[i - 1][k] == 0) continue;
            jobs.emplace_back([&, i, k]() {
                with_field(field, [&](const auto& f) {
                    ranks[i][k] = sparse_rank(differential_matrix(g, var, i, k, f), f);
                });
            });
        }
    run_parallel(opts.workers, jobs);

    for (int i = 0; i <= i_max; ++i)
        for (int k = 0; k <= k_max; ++k)
            table.entries[{i, k}] = dims[i][k] - ranks[i][k] - ranks[i + 1][k];
    return table;
}

std::pair<long long, std::vector<mpz_class>> integral_homology(const Graph& g, int i, int k,
                                                               const ComplexVariant& var,
                                                               const EngineOptions& opts) {
    check_no_isolated(g);
    if (i < 0 || k < 0) throw InputError("bidegree must be non-negative");
    long long dim = guarded_dimension(g, var, i, k, opts.cap);
    if (dim == 0) return {0, {}};
    IntegerRing ring;
    long long rank_i = 0;
    if (i >= 1 && guarded_dimension(g, var, i - 1, k, opts.cap) > 0)
        rank_i = smith_normal_form(differential_matrix(g, var, i, k, ring)).rank;
    long long rank_next = 0;
    std::vector<mpz_class> torsion;
    if (guarded_dimension(g, var, i + 1, k, opts.cap) > 0) {
        SNFResult snf = smith_normal_form(differential_matrix(g, var, i + 1, k, ring));
        rank_next = snf.rank;
        torsion = snf.torsion();
    }
    return {dim - rank_i - rank_next, torsion};
}

bool is_boundary(const Graph& g, const ComplexVariant& var, const FieldSpec& field, const Chain& c,
                 const EngineOptions& opts) {
    auto deg = chain_bidegree(g, var, c);
    if (!deg) return true; // the zero chain bounds
    if (!apply_differential(g, var, c).is_zero())
        throw InputError("is_boundary: the chain is not a cycle");
    return with_field(field, [&](const auto& f) -> bool {
        using F = std::decay_t<decltype(f)>;
        long long next_dim = guarded_dimension(g, var, deg->i + 1, deg->k, opts.cap);
        if (next_dim == 0) return false; // nonzero cycle, no boundaries at all
        guarded_dimension(g, var, deg->i, deg->k, opts.cap);
        auto basis = enumerate_basis(g, var, deg->i, deg->k);
        BasisIndex index(basis);
        auto column = chain_to_column(c, index, f);
        SparseMatrix<F> d_next = differential_matrix(g, var, deg->i + 1, deg->k, f);
        return solve_in_image(d_next, f, column).has_value();
    });
}

long long homology_quotient_rank(const Graph& g, const ComplexVariant& var, const FieldSpec& field,
                                 const std::vector<Chain>& cycles, const EngineOptions& opts) {
    if (cycles.empty()) return 0;
    std::optional<Bidegree> deg;
    for (const auto& c : cycles) {
        auto d = chain_bidegree(g, var, c);
        if (!d) continue;
        if (deg && !(*deg == *d)) throw InputError("cycles mix bidegrees");
        deg = d;
        if (!apply_differential(g, var, c).is_zero())
            throw InputError("quotient_rank: a chain is not a cycle");
    }
    if (!deg) return 0;
    return with_field(field, [&](const auto& f) -> long long {
        using F = std::decay_t<decltype(f)>;
        long long dim = guarded_dimension(g, var, deg->i, deg->k, opts.cap);
        guarded_dimension(g, var, deg->i + 1, deg->k, opts.cap);
        auto basis = enumerate_basis(g, var, deg->i, deg->k);
        BasisIndex index(basis);
        std::vector<typename SparseMatrix<F>::Column> cols;
        for (const auto& c : cycles) cols.push_back(chain_to_column(c, index, f));
        SparseMatrix<F> cycle_matrix = columns_to_matrix<F>(static_cast<int>(dim), cols);
        long long next_dim = basis_dimension(g, var, deg->i + 1, deg->k);
        SparseMatrix<F> boundary =
            next_dim == 0 ? SparseMatrix<F>(static_cast<int>(dim), 0)
                          : differential_matrix(g, var, deg->i + 1, deg->k, f);
        return span_rank_modulo(cycle_matrix, boundary, f);
    });
}

LesReport les_check(const Graph& g, VertexId v, int i, int k, const FieldSpec& field,
                    const EngineOptions& opts) {
    if (v < 0 || v >= g.vertex_count()) throw InputError("unknown vertex index " + std::to_string(v));
    if (g.degree(v) != 2)
        throw InputError("vertex '" + g.vertex_name(v) + "' is not bivalent");
    HalfId h_prime = g.halves_at(v)[0]; // privileged; its edge acts as e'
    HalfId h = g.halves_at(v)[1];
    EdgeId e_prime = g.half_edge(h_prime);
    EdgeId e = g.half_edge(h);
    if (e == e_prime)
        throw InputError("vertex '" + g.vertex_name(v) + "' carries a self-loop; the sequence needs two distinct edges");

    ComplexVariant var = ComplexVariant::reduced(g);
    Graph gv = g.explode({v});
    ComplexVariant var_v = ComplexVariant::reduced(gv);

    // Vertex slots of gv: same order as g with v replaced by the two stubs.
    auto embed = [&](const BasisElement& elem_v) {
        BasisElement out;
        out.eexp = elem_v.eexp;
        out.vstate.assign(g.vertex_count(), 0);
        int src = 0;
        for (VertexId u = 0; u < g.vertex_count(); ++u) {
            if (u == v) {
                src += 2; // stubs carry no state in the reduced complex
                out.vstate[u] = kStateEmpty;
            } else {
                out.vstate[u] = elem_v.vstate[src++];
            }
        }
        return out;
    };
    auto project = [&](const BasisElement& elem_g) {
        BasisElement out;
        out.eexp = elem_g.eexp;
        out.vstate.assign(gv.vertex_count(), 0);
        int dst = 0;
        for (VertexId u = 0; u < g.vertex_count(); ++u) {
            if (u == v) dst += 2;
            else out.vstate[dst++] = elem_g.vstate[u];
        }
        return out;
    };

    return with_field(field, [&](const auto& f) -> LesReport {
        using F = std::decay_t<decltype(f)>;
        using Column = typename SparseMatrix<F>::Column;
        LesReport rep;
        rep.at = Bidegree{i, k};

        auto dim_h = [&](const Graph& gr, const ComplexVariant& va, int ii, int kk) -> long long {
            long long dim = guarded_dimension(gr, va, ii, kk, opts.cap);
            if (dim == 0) return 0;
            return dim - differential_rank(gr, va, ii, kk, f, opts.cap) -
                   differential_rank(gr, va, ii + 1, kk, f, opts.cap);
        };
        rep.dim_h_graph = dim_h(g, var, i, k);
        rep.dim_h_exploded = dim_h(gv, var_v, i, k);
        rep.dim_h_previous = i >= 1 ? dim_h(gv, var_v, i - 1, k - 1) : 0;

        auto basis_g = enumerate_basis(g, var, i, k);
        BasisIndex index_g(basis_g);
        auto basis_prev = enumerate_basis(gv, var_v, i - 1, k - 1);
        BasisIndex index_prev(basis_prev);

        auto boundary_of = [&](const Graph& gr, const ComplexVariant& va, int ii, int kk,
                               long long rows) -> SparseMatrix<F> {
            if (ii < 0 || basis_dimension(gr, va, ii + 1, kk) == 0 || rows == 0)
                return SparseMatrix<F>(static_cast<int>(rows), 0);
            return differential_matrix(gr, va, ii + 1, kk, f);
        };
        SparseMatrix<F> b_g = boundary_of(g, var, i, k, static_cast<long long>(basis_g.size()));
        SparseMatrix<F> b_prev =
            boundary_of(gv, var_v, i - 1, k - 1, static_cast<long long>(basis_prev.size()));
        long long dim_prev_k = basis_dimension(gv, var_v, i - 1, k);
        SparseMatrix<F> b_prev_k = boundary_of(gv, var_v, i - 1, k, dim_prev_k);

        // inclusion on chains: G_v basis -> G basis
        auto include_column = [&](const Column& col_v,
                                  const std::vector<BasisElement>& src_basis) -> Column {
            Column out;
            for (const auto& [pos, val] : col_v) {
                int r = index_g.find(embed(src_basis[pos]));
                if (r < 0) throw Error("inclusion left the enumerated basis");
                out.emplace_back(r, val);
            }
            std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            return out;
        };
        // strip the half-edge difference at v, with the Koszul sign of moving
        // it to the front
        auto strip_column = [&](const Column& col_g) -> Column {
            Column out;
            for (const auto& [pos, val] : col_g) {
                const BasisElement& elem = basis_g[pos];
                if (elem.vstate[v] < kStateHalfBase) continue;
                int sign = 0;
                for (VertexId u = 0; u < v; ++u)
                    if (elem.vstate[u] >= kStateHalfBase) ++sign;
                BasisElement t = elem;
                t.vstate[v] = kStateEmpty;
                int r = index_prev.find(project(t));
                if (r < 0) throw Error("strip map left the enumerated basis");
                out.emplace_back(r, (sign % 2 == 0) ? val : f.neg(val));
            }
            std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            return out;
        };
        BasisIndex index_prev_k{enumerate_basis(gv, var_v, i - 1, k)};
        auto multiply_column = [&](const Column& col_prev,
                                   const std::vector<BasisElement>& src_basis) -> Column {
            // (e - e') on G_v chains, landing at weight k
            Column out;
            for (const auto& [pos, val] : col_prev) {
                BasisElement t = src_basis[pos];
                t.eexp[e] += 1;
                out.emplace_back(index_prev_k.find(t), val);
                t.eexp[e] -= 1;
                t.eexp[e_prime] += 1;
                out.emplace_back(index_prev_k.find(t), f.neg(val));
            }
            std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            Column merged;
            for (auto& entry : out) {
                if (!merged.empty() && merged.back().first == entry.first)
                    merged.back().second = f.add(merged.back().second, entry.second);
                else
                    merged.push_back(entry);
                if (!merged.empty() && F::is_zero(merged.back().second)) merged.pop_back();
            }
            return merged;
        };

        auto cycles_gv = cycle_space(gv, var_v, i, k, f);
        auto cycles_g = cycle_space(g, var, i, k, f);
        auto cycles_prev = (i >= 1 && k >= 1) ? cycle_space(gv, var_v, i - 1, k - 1, f)
                                              : std::vector<Column>{};
        auto basis_gv = enumerate_basis(gv, var_v, i, k);

        std::vector<Column> included;
        for (const auto& z : cycles_gv) included.push_back(include_column(z, basis_gv));
        rep.dim_image_inclusion = span_rank_modulo(
            columns_to_matrix<F>(static_cast<int>(basis_g.size()), included), b_g, f);

        std::vector<Column> stripped;
        for (const auto& z : cycles_g) stripped.push_back(strip_column(z));
        rep.dim_image_strip = span_rank_modulo(
            columns_to_matrix<F>(static_cast<int>(basis_prev.size()), stripped), b_prev, f);

        // strip o inclusion vanishes on the nose
        rep.inclusion_composite_zero = true;
        for (const auto& z : included)
            if (!strip_column(z).empty()) rep.inclusion_composite_zero = false;

        // (e - e') o strip lands in boundaries
        std::vector<Column> mult_of_strip;
        for (const auto& z : stripped) mult_of_strip.push_back(multiply_column(z, basis_prev));
        rep.strip_composite_boundary =
            span_rank_modulo(columns_to_matrix<F>(static_cast<int>(dim_prev_k), mult_of_strip),
                             b_prev_k, f) == 0;

        std::vector<Column> multiplied;
        for (const auto& z : cycles_prev) multiplied.push_back(multiply_column(z, basis_prev));
        long long im_mult = span_rank_modulo(
            columns_to_matrix<F>(static_cast<int>(dim_prev_k), multiplied), b_prev_k, f);
        rep.dim_kernel_multiplication = rep.dim_h_previous - im_mult;

        rep.exact_at_graph = (rep.dim_h_graph - rep.dim_image_strip == rep.dim_image_inclusion) &&
                             rep.inclusion_composite_zero;
        rep.exact_at_previous =
            (rep.dim_kernel_multiplication == rep.dim_image_strip) && rep.strip_composite_boundary;
        rep.dimension_split = rep.dim_h_graph == rep.dim_image_inclusion + rep.dim_image_strip;
        return rep;
    });
}

bool kunneth_check(const Graph& g1, const Graph& g2, const FieldSpec& field, int i_max, int k_max,
                   const EngineOptions& opts) {
    if (field.kind == FieldSpec::Kind::integers)
        throw InputError("kunneth_check needs a field (q or fp:P)");
    BettiTable t1 = betti_table(g1, field, i_max, k_max, ComplexVariant::reduced(g1), opts);
    BettiTable t2 = betti_table(g2, field, i_max, k_max, ComplexVariant::reduced(g2), opts);
    Graph u = disjoint_union(g1, g2);
    BettiTable tu = betti_table(u, field, i_max, k_max, ComplexVariant::reduced(u), opts);
    for (int i = 0; i <= i_max; ++i)
        for (int k = 0; k <= k_max; ++k) {
            long long conv = 0;
            for (int i1 = 0; i1 <= i; ++i1)
                for (int k1 = 0; k1 <= k; ++k1)
                    conv += t1.entries.at({i1, k1}) * t2.entries.at({i - i1, k - k1});
            if (conv != tu.entries.at({i, k})) return false;
        }
    return true;
}

std::string BettiTable::to_csv() const {
    std::ostringstream out;
    out << "graph,field,i,k,betti,torsion\n";
    for (const auto& [ik, value] : entries) {
        out << graph_hash << "," << field.to_string() << "," << ik.first << "," << ik.second << ","
            << value << ",";
        auto it = torsion.find(ik);
        if (it != torsion.end()) {
            bool first = true;
            for (const auto& d : it->second) {
                if (!first) out << ";";
                out << d.get_str();
                first = false;
            }
        }
        out << "\n";
    }
    return out.str();
}

std::string BettiTable::to_json() const {
    nlohmann::json j;
    j["graph"] = graph_hash;
    j["field"] = field.to_string();
    j["entries"] = nlohmann::json::array();
    for (const auto& [ik, value] : entries) {
        nlohmann::json cell;
        cell["i"] = ik.first;
        cell["k"] = ik.second;
        cell["betti"] = value;
        cell["torsion"] = nlohmann::json::array();
        auto it = torsion.find(ik);
        if (it != torsion.end())
            for (const auto& d : it->second) cell["torsion"].push_back(d.get_str());
        j["entries"].push_back(cell);
    }
    return j.dump(2) + "\n";
}

} // namespace gch
