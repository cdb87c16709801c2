#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "gch/errors.hpp"
#include "gch/fields.hpp"

namespace gch {

/// Exact sparse matrix in column-major coordinate form. Entries within a
/// column are sorted by row and hold no zeros once finalize() has run.
template <class F>
struct SparseMatrix {
    using Elem = typename F::Elem;
    using Column = std::vector<std::pair<int, Elem>>;

    int rows = 0;
    int cols = 0;
    std::vector<Column> col;

    SparseMatrix() = default;
    SparseMatrix(int r, int c) : rows(r), cols(c), col(c) {}

    void add_entry(int r, int c, Elem v) {
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw Error("matrix entry out of range");
        col[c].emplace_back(r, std::move(v));
    }

    /// Sorts each column by row, merging duplicate coordinates and dropping
    /// zeros. Must be called after assembly via add_entry.
    void finalize(const F& f) {
        for (auto& c : col) {
            std::sort(c.begin(), c.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            Column merged;
            for (auto& e : c) {
                if (!merged.empty() && merged.back().first == e.first)
                    merged.back().second = f.add(merged.back().second, e.second);
                else
                    merged.push_back(std::move(e));
                if (!merged.empty() && F::is_zero(merged.back().second)) merged.pop_back();
            }
            c = std::move(merged);
        }
    }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& c : col) n += c.size();
        return n;
    }

    /// Horizontal concatenation [this | other].
    SparseMatrix concat(const SparseMatrix& other) const {
        if (rows != other.rows) throw Error("row count mismatch in concatenation");
        SparseMatrix out(rows, cols + other.cols);
        for (int c = 0; c < cols; ++c) out.col[c] = col[c];
        for (int c = 0; c < other.cols; ++c) out.col[cols + c] = other.col[c];
        return out;
    }

    /// Matrix-vector product with a sparse vector (pairs sorted by index).
    Column apply(const Column& v, const F& f) const {
        std::vector<Elem> acc;
        std::vector<int> touched;
        acc.resize(rows, f.zero());
        for (const auto& [j, x] : v) {
            if (j < 0 || j >= cols) throw Error("vector index out of range");
            for (const auto& [r, a] : col[j]) {
                if (F::is_zero(acc[r])) touched.push_back(r);
                acc[r] = f.add(acc[r], f.mul(a, x));
            }
        }
        std::sort(touched.begin(), touched.end());
        Column out;
        for (int r : touched)
            if (!F::is_zero(acc[r])) out.emplace_back(r, acc[r]);
        return out;
    }
};

using QMatrix = SparseMatrix<RationalField>;
using FpMatrix = SparseMatrix<PrimeField>;

/// Integer matrix for Smith normal form work.
struct IntegerRing {
    using Elem = mpz_class;
    static Elem zero() { return Elem(0); }
    static Elem one() { return Elem(1); }
    static Elem from_int(long v) { return Elem(v); }
    static bool is_zero(const Elem& e) { return sgn(e) == 0; }
    static bool is_one(const Elem& e) { return e == 1; }
    static bool is_unit_value(const Elem& e) { return e == 1 || e == -1; }
    static Elem neg(const Elem& e) { return -e; }
    static Elem add(const Elem& a, const Elem& b) { return a + b; }
    static Elem sub(const Elem& a, const Elem& b) { return a - b; }
    static Elem mul(const Elem& a, const Elem& b) { return a * b; }
    static std::string to_string(const Elem& e) { return e.get_str(); }
    std::string name() const { return "z"; }
};

using ZMatrix = SparseMatrix<IntegerRing>;

} // namespace gch
