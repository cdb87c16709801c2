#include "gch/asymptotics.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace gch {

std::vector<long long> finite_differences(std::vector<long long> seq, int r) {
    if (r < 0) throw InputError("difference order must be non-negative");
    if (r > static_cast<int>(seq.size()))
        throw InputError("difference order exceeds the sequence length");
    for (int round = 0; round < r; ++round) {
        for (std::size_t j = 0; j + 1 < seq.size(); ++j) seq[j] = seq[j + 1] - seq[j];
        seq.pop_back();
    }
    return seq;
}

std::optional<long long> stabilized_suffix_value(const std::vector<long long>& seq) {
    if (seq.size() < 3) return std::nullopt;
    long long v = seq.back();
    int run = 0;
    for (auto it = seq.rbegin(); it != seq.rend() && *it == v; ++it) ++run;
    if (run >= 3) return v;
    return std::nullopt;
}

long long partition_dimension(int block_count, int k) {
    if (block_count < 1) throw InputError("a partition has at least one block");
    if (k < 0) return 0;
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k + block_count - 1),
                 static_cast<unsigned long>(block_count - 1));
    if (!binom.fits_slong_p()) throw ResourceError("partition dimension overflows");
    return binom.get_si();
}

bool smallness_check(const std::vector<long long>& seq, int n) {
    if (n > static_cast<int>(seq.size())) return false; // nothing observable
    auto diff = finite_differences(seq, n);
    auto value = stabilized_suffix_value(diff);
    return value.has_value() && *value == 0;
}

LeadingCoefficient leading_coefficient(const Graph& g, int i) {
    if (!g.is_connected()) throw InputError("the growth formula needs a connected graph");
    if (g.essential_vertices().empty())
        throw InputError("the growth formula needs an essential vertex");
    RamosResult ramos = ramos_number(g, i);
    LeadingCoefficient out;
    out.i = i;
    out.delta = ramos.delta;
    if (ramos.delta <= 1)
        throw InputError(
            "excluded case: the " + std::to_string(i) +
            "-th Ramos number is 1, where the growth formula does not apply "
            "(for i = 1 this regime is classified by Ko-Park)");
    for (const auto& w : ramos.maximizers) {
        MaximizerSummary m;
        for (VertexId v : w) {
            m.vertices.push_back(g.vertex_name(v));
            m.product *= g.degree(v) - 2;
        }
        out.maximizers.push_back(std::move(m));
        out.difference_target += out.maximizers.back().product;
    }
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(ramos.delta - 1));
    mpz_class target(static_cast<long>(out.difference_target));
    out.coefficient = mpq_class(target, fact);
    out.coefficient.canonicalize();
    return out;
}

GrowthReport verify_growth(const Graph& g, const FieldSpec& field, int i, int k_max,
                           const ComplexVariant& var, const EngineOptions& opts) {
    GrowthReport rep;
    rep.i = i;
    rep.field = field;
    rep.k_max = k_max;
    rep.leading = leading_coefficient(g, i);

    BettiTable table = betti_table(g, field, i, k_max, var, opts);
    for (int k = 0; k <= k_max; ++k) rep.betti_row.push_back(table.entries.at({i, k}));

    int order = rep.leading.delta - 1;
    if (order <= static_cast<int>(rep.betti_row.size())) {
        rep.difference_row = finite_differences(rep.betti_row, order);
        rep.observed = stabilized_suffix_value(rep.difference_row);
    }
    if (order + 1 <= static_cast<int>(rep.betti_row.size())) {
        auto next = finite_differences(rep.betti_row, order + 1);
        auto next_value = stabilized_suffix_value(next);
        rep.degree_matches = next_value.has_value() && *next_value == 0;
        rep.onset = -1;
        for (int j = static_cast<int>(next.size()); j-- > 0;) {
            if (next[j] != 0) break;
            rep.onset = j;
        }
    }
    if (!rep.observed || !rep.degree_matches) {
        // A stabilized suffix that contradicts the prediction is a refutation;
        // a missing suffix is merely inconclusive.
        rep.verdict = (rep.observed && *rep.observed != rep.leading.difference_target)
                          ? GrowthVerdict::refuted
                          : GrowthVerdict::inconclusive;
        return rep;
    }
    rep.verdict = (*rep.observed == rep.leading.difference_target) ? GrowthVerdict::confirmed
                                                                   : GrowthVerdict::refuted;
    return rep;
}

std::string GrowthReport::to_json() const {
    nlohmann::json j;
    j["i"] = i;
    j["field"] = field.to_string();
    j["k_max"] = k_max;
    j["delta"] = leading.delta;
    j["leading_coefficient"] = leading.coefficient.get_str();
    j["difference_target"] = leading.difference_target;
    j["maximizers"] = nlohmann::json::array();
    for (const auto& m : leading.maximizers)
        j["maximizers"].push_back({{"vertices", m.vertices}, {"product", m.product}});
    j["betti_row"] = betti_row;
    j["difference_row"] = difference_row;
    if (observed) j["observed"] = *observed;
    j["degree_matches"] = degree_matches;
    j["onset"] = onset;
    j["verdict"] = verdict == GrowthVerdict::confirmed
                       ? "confirmed"
                       : (verdict == GrowthVerdict::refuted ? "refuted" : "inconclusive");
    return j.dump(2) + "\n";
}

std::string GrowthReport::to_text() const {
    std::ostringstream out;
    out << "degree i = " << i << ", field " << field.to_string() << ", k <= " << k_max << "\n";
    out << "Ramos number " << leading.delta << ", " << leading.maximizers.size()
        << " maximizing set(s), leading coefficient " << leading.coefficient.get_str() << "\n";
    out << "betti row:";
    for (auto b : betti_row) out << " " << b;
    out << "\norder-" << (leading.delta - 1) << " differences:";
    for (auto d : difference_row) out << " " << d;
    out << "\n";
    if (observed)
        out << "stabilized value " << *observed << " vs predicted " << leading.difference_target
            << "; degree check " << (degree_matches ? "ok" : "not stabilized") << "\n";
    else
        out << "no stabilized suffix of length >= 3 (raise k_max)\n";
    out << "verdict: "
        << (verdict == GrowthVerdict::confirmed
                ? "confirmed"
                : (verdict == GrowthVerdict::refuted ? "refuted" : "inconclusive"))
        << "\n";
    return out.str();
}

std::string GrowthReport::differences_csv() const {
    std::ostringstream out;
    out << "k,betti,difference\n";
    for (std::size_t k = 0; k < betti_row.size(); ++k) {
        out << k << "," << betti_row[k] << ",";
        if (k < difference_row.size()) out << difference_row[k];
        out << "\n";
    }
    return out.str();
}

TorsionScan torsion_growth_scan(const Graph& g, int i, int k_max, const ComplexVariant& var,
                                const EngineOptions& opts) {
    TorsionScan scan;
    scan.i = i;
    scan.k_max = k_max;
    scan.exponents.resize(k_max + 1);
    for (int k = 0; k <= k_max; ++k) {
        auto [free_rank, factors] = integral_homology(g, i, k, var, opts);
        (void)free_rank;
        for (const auto& d : factors) {
            // trial-divide the invariant factor
            mpz_class rest = d;
            for (mpz_class p = 2; p * p <= rest;) {
                if (rest % p == 0) {
                    int count = 0;
                    while (rest % p == 0) {
                        rest /= p;
                        ++count;
                    }
                    scan.exponents[k][p.get_ui()] += count;
                } else {
                    p += (p == 2) ? 1 : 2;
                }
            }
            if (rest > 1) {
                if (!rest.fits_ulong_p()) throw ResourceError("torsion prime too large to factor");
                scan.exponents[k][rest.get_ui()] += 1;
            }
        }
    }
    return scan;
}

std::vector<unsigned long> TorsionScan::primes() const {
    std::vector<unsigned long> out;
    for (const auto& row : exponents)
        for (const auto& [p, e] : row)
            if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

bool TorsionScan::growth_below(int bound) const {
    for (unsigned long p : primes()) {
        std::vector<long long> row;
        for (const auto& cell : exponents) {
            auto it = cell.find(p);
            row.push_back(it == cell.end() ? 0 : it->second);
        }
        if (!smallness_check(row, bound)) return false;
    }
    return true;
}

std::string TorsionScan::to_csv() const {
    std::ostringstream out;
    out << "i,k,prime,exponent\n";
    for (int k = 0; k <= k_max; ++k)
        for (const auto& [p, e] : exponents[k]) out << i << "," << k << "," << p << "," << e << "\n";
    return out.str();
}

} // namespace gch
