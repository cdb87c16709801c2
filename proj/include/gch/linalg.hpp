#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <unordered_map>
#include <vector>

#include "gch/sparse.hpp"

namespace gch {

namespace detail {

/// Sparse Gaussian elimination with Markowitz pivoting. Column operations
/// only; pivoted rows and columns are retired. Works over a field, or over
/// the integers when restricted to unit pivots (both directions preserve
/// rank and, for unit pivots, Smith normal form).
template <class R>
class SparseEliminator {
public:
    using Elem = typename R::Elem;
    using Column = typename SparseMatrix<R>::Column;

    SparseEliminator(SparseMatrix<R>&& m, const R& ring, bool unit_pivots_only)
        : ring_(ring), unit_only_(unit_pivots_only), rows_(m.rows), cols_(std::move(m.col)) {
        row_nnz_.assign(rows_, 0);
        row_cols_.assign(rows_, {});
        col_alive_.assign(cols_.size(), true);
        row_alive_.assign(rows_, true);
        for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
            for (const auto& [r, v] : cols_[j]) {
                ++row_nnz_[r];
                row_cols_[r].push_back(j);
            }
        }
        for (int j = 0; j < static_cast<int>(cols_.size()); ++j) push_bucket(j);
    }

    /// Runs elimination to completion (or until no admissible pivot exists)
    /// and returns the number of pivots performed.
    long long run() {
        long long pivots = 0;
        while (step()) ++pivots;
        return pivots;
    }

    /// Dense copy of the live submatrix (for the integer SNF tail).
    std::vector<std::vector<Elem>> remaining_dense() const {
        std::vector<int> live_rows;
        for (int r = 0; r < rows_; ++r)
            if (row_alive_[r] && row_nnz_[r] > 0) live_rows.push_back(r);
        std::vector<int> row_pos(rows_, -1);
        for (int i = 0; i < static_cast<int>(live_rows.size()); ++i) row_pos[live_rows[i]] = i;
        std::vector<std::vector<Elem>> dense;
        for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
            if (!col_alive_[j] || cols_[j].empty()) continue;
            std::vector<Elem> column(live_rows.size(), ring_.zero());
            for (const auto& [r, v] : cols_[j]) column[row_pos[r]] = v;
            dense.push_back(std::move(column));
        }
        // transpose to row-major
        std::vector<std::vector<Elem>> out(live_rows.size(), std::vector<Elem>(dense.size(), ring_.zero()));
        for (std::size_t j = 0; j < dense.size(); ++j)
            for (std::size_t i = 0; i < live_rows.size(); ++i) out[i][j] = dense[j][i];
        return out;
    }

private:
    const R& ring_;
    bool unit_only_;
    int rows_;
    std::vector<Column> cols_;
    std::vector<int> row_nnz_;
    std::vector<std::vector<int>> row_cols_; // may contain stale entries
    std::vector<char> col_alive_, row_alive_;
    std::vector<std::vector<int>> buckets_; // buckets_[n] = columns recorded with nnz n

    void push_bucket(int j) {
        std::size_t n = cols_[j].size();
        if (n == 0) return;
        if (buckets_.size() <= n) buckets_.resize(n + 1);
        buckets_[n].push_back(j);
    }

    bool admissible(const Elem& v) const { return !unit_only_ || ring_.is_unit_value(v); }

    // Chooses the next pivot by Markowitz cost (rowNnz-1)*(colNnz-1) among the
    // sparsest live columns, preferring unit entries to limit growth.
    bool select_pivot(int& pr, int& pc) {
        std::vector<int> candidates;
        int levels_seen = 0;
        for (std::size_t b = 1; b < buckets_.size() && levels_seen < 2 && candidates.size() < 24; ++b) {
            auto& bucket = buckets_[b];
            std::size_t keep = 0;
            bool any = false;
            for (std::size_t t = 0; t < bucket.size(); ++t) {
                int j = bucket[t];
                if (!col_alive_[j] || cols_[j].empty()) continue; // drop dead
                if (cols_[j].size() != b) { push_bucket(j); continue; } // moved
                bucket[keep++] = j;
                if (candidates.size() < 24) {
                    candidates.push_back(j);
                    any = true;
                }
            }
            bucket.resize(keep);
            if (any) ++levels_seen;
        }
        if (candidates.empty()) {
            // Bucket bookkeeping may have dropped columns; rescan once.
            for (int j = 0; j < static_cast<int>(cols_.size()); ++j)
                if (col_alive_[j] && !cols_[j].empty()) push_bucket(j);
            for (std::size_t b = 1; b < buckets_.size() && candidates.empty(); ++b)
                for (int j : buckets_[b])
                    if (col_alive_[j] && !cols_[j].empty() && cols_[j].size() == b) {
                        candidates.push_back(j);
                        break;
                    }
            if (candidates.empty()) return false;
        }
        long long best_cost = -1;
        bool best_unit = false;
        for (int j : candidates) {
            long long cn = static_cast<long long>(cols_[j].size()) - 1;
            for (const auto& [r, v] : cols_[j]) {
                if (!admissible(v)) continue;
                long long cost = (static_cast<long long>(row_nnz_[r]) - 1) * cn;
                bool unit = ring_.is_unit_value(v);
                if (best_cost < 0 || cost < best_cost || (cost == best_cost && unit && !best_unit)) {
                    best_cost = cost;
                    best_unit = unit;
                    pr = r;
                    pc = j;
                }
            }
        }
        if (best_cost < 0 && unit_only_) {
            // The sparsest columns may hold no unit entry; fall back to a full
            // scan before giving up.
            for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
                if (!col_alive_[j] || cols_[j].empty()) continue;
                long long cn = static_cast<long long>(cols_[j].size()) - 1;
                for (const auto& [r, v] : cols_[j]) {
                    if (!ring_.is_unit_value(v)) continue;
                    long long cost = (static_cast<long long>(row_nnz_[r]) - 1) * cn;
                    if (best_cost < 0 || cost < best_cost) {
                        best_cost = cost;
                        pr = r;
                        pc = j;
                    }
                }
            }
        }
        return best_cost >= 0;
    }

    static const Elem* find_row(const Column& c, int r) {
        auto it = std::lower_bound(c.begin(), c.end(), r,
                                   [](const auto& e, int row) { return e.first < row; });
        if (it != c.end() && it->first == r) return &it->second;
        return nullptr;
    }

    Elem pivot_factor(const Elem& w, const Elem& v) const {
        if constexpr (std::is_same_v<R, IntegerRing>) {
            return R::mul(w, v); // unit pivots only: v == v^{-1}
        } else {
            return ring_.div(w, v);
        }
    }

    bool step() {
        int pr = -1, pc = -1;
        if (!select_pivot(pr, pc)) return false;
        const Elem* pv = find_row(cols_[pc], pr);
        Elem pivot = *pv;

        // validated, deduplicated list of columns containing row pr
        std::vector<int> targets;
        for (int j : row_cols_[pr]) {
            if (j == pc || !col_alive_[j]) continue;
            if (find_row(cols_[j], pr)) targets.push_back(j);
        }
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

        Column merged;
        for (int j : targets) {
            const Elem* wp = find_row(cols_[j], pr);
            Elem factor = pivot_factor(*wp, pivot);
            // cols_[j] -= factor * cols_[pc]
            merged.clear();
            merged.reserve(cols_[j].size() + cols_[pc].size());
            auto a = cols_[j].begin(), ae = cols_[j].end();
            auto b = cols_[pc].begin(), be = cols_[pc].end();
            while (a != ae || b != be) {
                if (b == be || (a != ae && a->first < b->first)) {
                    merged.push_back(*a++);
                } else if (a == ae || b->first < a->first) {
                    Elem nv = ring_.neg(ring_.mul(factor, b->second));
                    ++row_nnz_[b->first];
                    row_cols_[b->first].push_back(j);
                    merged.emplace_back(b->first, std::move(nv));
                    ++b;
                } else {
                    Elem nv = ring_.sub(a->second, ring_.mul(factor, b->second));
                    if (R::is_zero(nv)) --row_nnz_[a->first];
                    else merged.emplace_back(a->first, std::move(nv));
                    ++a;
                    ++b;
                }
            }
            cols_[j] = merged;
            push_bucket(j);
        }
        // retire pivot row and column
        for (const auto& [r, v] : cols_[pc]) --row_nnz_[r];
        cols_[pc].clear();
        col_alive_[pc] = false;
        row_alive_[pr] = false;
        row_cols_[pr].clear();
        return true;
    }
};

} // namespace detail

/// Exact rank by sparse Gaussian elimination (fields only).
template <class F>
long long sparse_rank(SparseMatrix<F> m, const F& f) {
    detail::SparseEliminator<F> elim(std::move(m), f, /*unit_pivots_only=*/false);
    return elim.run();
}

/// Column echelon form that remembers how each echelon column and each kernel
/// vector is expressed in the original columns. Intended for the moderate
/// sizes where kernel vectors or explicit solutions are needed.
template <class F>
class EchelonForm {
public:
    using Elem = typename F::Elem;
    using Column = typename SparseMatrix<F>::Column;

    EchelonForm(const SparseMatrix<F>& m, const F& f) : f_(f), cols_(m.cols) {
        for (int j = 0; j < m.cols; ++j) {
            Column work = m.col[j];
            Column comb{{j, f.one()}};
            reduce(work, comb);
            if (work.empty()) {
                kernel_.push_back(std::move(comb));
            } else {
                pivot_of_row_[work.front().first] = static_cast<int>(reduced_.size());
                reduced_.push_back(std::move(work));
                combos_.push_back(std::move(comb));
            }
        }
    }

    long long rank() const { return static_cast<long long>(reduced_.size()); }
    const std::vector<Column>& kernel() const { return kernel_; }

    /// Expresses v as a combination of original columns, if v lies in the
    /// column span.
    std::optional<Column> solve(Column v) const {
        Column comb;
        if (!reduce_const(v, comb)) return std::nullopt;
        // the reduction maintains v = work + A.(-comb)
        for (auto& [idx, val] : comb) val = f_.neg(val);
        return comb;
    }

private:
    const F& f_;
    int cols_;
    std::vector<Column> reduced_;
    std::vector<Column> combos_;
    std::vector<Column> kernel_;
    std::unordered_map<int, int> pivot_of_row_;

    // work -= factor * other (sorted merge)
    static void axpy(Column& work, const Column& other, const Elem& factor, const F& f) {
        Column merged;
        merged.reserve(work.size() + other.size());
        auto a = work.begin(), ae = work.end();
        auto b = other.begin(), be = other.end();
        while (a != ae || b != be) {
            if (b == be || (a != ae && a->first < b->first)) {
                merged.push_back(*a++);
            } else if (a == ae || b->first < a->first) {
                merged.emplace_back(b->first, f.neg(f.mul(factor, b->second)));
                ++b;
            } else {
                Elem nv = f.sub(a->second, f.mul(factor, b->second));
                if (!F::is_zero(nv)) merged.emplace_back(a->first, std::move(nv));
                ++a;
                ++b;
            }
        }
        work = std::move(merged);
    }

    void reduce(Column& work, Column& comb) const { reduce_impl(work, &comb); }

    bool reduce_const(Column& work, Column& comb) const {
        reduce_impl(work, &comb);
        return work.empty();
    }

    void reduce_impl(Column& work, Column* comb) const {
        while (!work.empty()) {
            auto it = pivot_of_row_.find(work.front().first);
            if (it == pivot_of_row_.end()) return;
            const Column& piv = reduced_[it->second];
            Elem factor = f_.div(work.front().second, piv.front().second);
            axpy(work, piv, factor, f_);
            if (comb) axpy(*comb, combos_[it->second], factor, f_);
        }
    }
};

/// Basis of the right kernel, as combinations of the columns.
template <class F>
std::vector<typename SparseMatrix<F>::Column> kernel_basis(const SparseMatrix<F>& m, const F& f) {
    EchelonForm<F> ech(m, f);
    return ech.kernel();
}

/// Finds x with m.x = v, if any; the solution is re-verified exactly.
template <class F>
std::optional<typename SparseMatrix<F>::Column>
solve_in_image(const SparseMatrix<F>& m, const F& f, const typename SparseMatrix<F>::Column& v) {
    for (const auto& [r, val] : v)
        if (r < 0 || r >= m.rows) throw InputError("dimension mismatch in solve_in_image");
    EchelonForm<F> ech(m, f);
    auto x = ech.solve(v);
    if (!x) return std::nullopt;
    auto reached = m.apply(*x, f);
    if (reached != v) throw Error("solve_in_image produced an invalid solution");
    return x;
}

/// rank([cycles | boundary]) - rank(boundary): the dimension of the span of
/// the cycle classes modulo the boundary columns.
template <class F>
long long span_rank_modulo(const SparseMatrix<F>& cycles, const SparseMatrix<F>& boundary, const F& f) {
    long long rb = sparse_rank(boundary, f);
    return sparse_rank(boundary.concat(cycles), f) - rb;
}

struct SNFResult {
    std::vector<mpz_class> invariant_factors; // d1 | d2 | ... , all positive
    long long rank = 0;                       // number of nonzero factors

    /// Invariant factors greater than one (the torsion part).
    std::vector<mpz_class> torsion() const {
        std::vector<mpz_class> out;
        for (const auto& d : invariant_factors)
            if (d > 1) out.push_back(d);
        return out;
    }
};

/// Smith normal form over Z. A sparse phase retires unit pivots (which
/// contribute invariant factor 1 and cannot affect torsion); the remainder is
/// finished densely with smallest-pivot selection.
SNFResult smith_normal_form(ZMatrix m);

} // namespace gch
