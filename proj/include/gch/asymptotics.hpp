#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gch/homology.hpp"

namespace gch {

/// r-fold forward difference of an integer sequence. Errors if r exceeds the
/// sequence length.
std::vector<long long> finite_differences(std::vector<long long> seq, int r);

/// Value of the final run of >= 3 equal entries, if the sequence ends in one.
std::optional<long long> stabilized_suffix_value(const std::vector<long long>& seq);

/// dim of the weight-k piece of a free commutative algebra on b weight-1
/// generators: C(k + b - 1, b - 1).
long long partition_dimension(int block_count, int k);

/// Empirical smallness: the observed sequence has polynomial degree < n,
/// i.e. its n-th finite difference ends in a run of >= 3 zeros.
bool smallness_check(const std::vector<long long>& seq, int n);

struct MaximizerSummary {
    std::vector<std::string> vertices;
    long long product = 1; // prod over the set of (d(w) - 2)
};

struct LeadingCoefficient {
    int i = 0;
    int delta = 0;                        // Ramos number
    std::vector<MaximizerSummary> maximizers;
    long long difference_target = 0;      // sum over maximizers of the products
    mpq_class coefficient;                // target / (delta - 1)!
};

/// The leading-coefficient formula: sum over maximizing W of prod (d(w)-2),
/// divided by (Delta^i - 1)!. Requires a connected graph with an essential
/// vertex and Delta^i > 1 (the excluded Delta^1 = 1 case is classified by
/// Ko-Park and the formula does not apply there).
LeadingCoefficient leading_coefficient(const Graph& g, int i);

enum class GrowthVerdict { confirmed, refuted, inconclusive };

struct GrowthReport {
    int i = 0;
    FieldSpec field;
    int k_max = 0;
    LeadingCoefficient leading;
    std::vector<long long> betti_row;       // k = 0..k_max
    std::vector<long long> difference_row;  // (delta-1)-th differences
    std::optional<long long> observed;      // stabilized suffix value, if any
    bool degree_matches = false;            // delta-th differences stabilize to 0
    int onset = -1;                         // first k from which the delta-th differences vanish
    GrowthVerdict verdict = GrowthVerdict::inconclusive;

    std::string to_json() const;
    std::string to_text() const;
    std::string differences_csv() const;
};

/// Computes the Betti row H_i(B_k) for k <= k_max and checks that its
/// (Delta^i - 1)-th finite difference stabilizes to the formula's integer and
/// the Delta^i-th to zero. Stabilization means a final run of >= 3 equal
/// values; without one the verdict is inconclusive.
GrowthReport verify_growth(const Graph& g, const FieldSpec& field, int i, int k_max,
                           const ComplexVariant& var, const EngineOptions& opts = {});

struct TorsionScan {
    int i = 0;
    int k_max = 0;
    std::vector<std::map<unsigned long, int>> exponents; // per k: prime -> exponent f(k)
    /// primes that ever occur
    std::vector<unsigned long> primes() const;
    /// observed growth degree of every prime's exponent row is < bound
    bool growth_below(int bound) const;
    std::string to_csv() const;
};

/// Orders of the p-torsion subgroups of H_i(B_k; Z) for k <= k_max, as
/// exponent tables per prime.
TorsionScan torsion_growth_scan(const Graph& g, int i, int k_max, const ComplexVariant& var,
                                const EngineOptions& opts = {});

} // namespace gch
