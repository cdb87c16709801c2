#include "gch/linalg.hpp"

namespace gch {

namespace {

// Classic Smith reduction on a dense integer matrix, smallest-pivot first.
// Returns the nonzero diagonal entries (positive, divisibility not yet
// normalized).
std::vector<mpz_class> dense_snf_diagonal(std::vector<std::vector<mpz_class>> m) {
    std::vector<mpz_class> diag;
    if (m.empty() || m[0].empty()) return diag;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero entry in the trailing submatrix
        int pr = -1, pc = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j)
                if (m[i][j] != 0 &&
                    (pr < 0 || cmp(abs(m[i][j]), abs(m[pr][pc])) < 0)) {
                    pr = i;
                    pc = j;
                }
        if (pr < 0) break;
        std::swap(m[t], m[pr]);
        for (int i = t; i < rows; ++i) std::swap(m[i][t], m[i][pc]);

        bool clean = false;
        while (!clean) {
            clean = true;
            // clear column t with row operations, improving the pivot as we go
            for (int i = t + 1; i < rows; ++i) {
                while (m[i][t] != 0) {
                    mpz_class q = m[i][t] / m[t][t]; // truncated division
                    for (int j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                    if (m[i][t] != 0) std::swap(m[i], m[t]); // strictly smaller remainder
                }
            }
            // clear row t with column operations
            for (int j = t + 1; j < cols; ++j) {
                while (m[t][j] != 0) {
                    mpz_class q = m[t][j] / m[t][t];
                    for (int i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                    if (m[t][j] != 0) {
                        for (int i = t; i < rows; ++i) std::swap(m[i][j], m[i][t]);
                        clean = false; // column clearing may be dirty again
                    }
                }
            }
            if (!clean) continue;
            // enforce that the pivot divides the rest of the submatrix
            for (int i = t + 1; i < rows && clean; ++i)
                for (int j = t + 1; j < cols && clean; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        for (int jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
                        clean = false;
                    }
        }
        if (m[t][t] < 0) m[t][t] = -m[t][t];
        diag.push_back(m[t][t]);
        ++t;
    }
    return diag;
}

} // namespace

SNFResult smith_normal_form(ZMatrix m) {
    IntegerRing ring;
    m.finalize(ring);
    detail::SparseEliminator<IntegerRing> elim(std::move(m), ring, /*unit_pivots_only=*/true);
    long long unit_pivots = elim.run();
    auto dense = elim.remaining_dense();

    std::vector<mpz_class> factors(unit_pivots, mpz_class(1));
    auto diag = dense_snf_diagonal(std::move(dense));
    factors.insert(factors.end(), diag.begin(), diag.end());

    // normalize the divisibility chain
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a = 0; a + 1 < factors.size(); ++a)
            for (std::size_t b = a + 1; b < factors.size(); ++b)
                if (factors[b] % factors[a] != 0) {
                    mpz_class g = gcd(factors[a], factors[b]);
                    mpz_class l = factors[a] / g * factors[b];
                    factors[a] = g;
                    factors[b] = l;
                    changed = true;
                }
    }
    std::sort(factors.begin(), factors.end());

    SNFResult out;
    out.invariant_factors = std::move(factors);
    out.rank = static_cast<long long>(out.invariant_factors.size());
    return out;
}

} // namespace gch
