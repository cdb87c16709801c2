// Command-line front end: batch Betti tables, Ramos numbers, growth
// verification, relation certification, and torsion scans for configuration
// spaces of graphs.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gch/asymptotics.hpp"
#include "gch/classes.hpp"
#include "gch/homology.hpp"
#include "gch/threadpool.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

struct CommonArgs {
    std::string graph_path;
    std::string field = "q";
    std::string variant = "reduced";
    std::string out_path;
    std::string format = "csv";
    int workers = 0;
    long long cap = gch::kDefaultBasisCap;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_field = true) {
    cmd->add_option("--graph", args.graph_path, "graph file (text or JSON)")->required();
    if (with_field)
        cmd->add_option("--field", args.field, "coefficients: q, fp:P, or z")
            ->default_val(args.field);
    cmd->add_option("--variant", args.variant, "complex variant: reduced or full")
        ->check(CLI::IsMember({"reduced", "full"}))
        ->default_val(args.variant);
    cmd->add_option("--out", args.out_path, "output path (default: stdout)");
    cmd->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_val(args.format);
    cmd->add_option("--workers", args.workers, "worker threads (default: GCH_WORKERS or hardware)");
    cmd->add_option("--cap", args.cap, "refuse cells with more basis columns than this")
        ->default_val(args.cap);
}

gch::EngineOptions engine_options(const CommonArgs& args) {
    gch::EngineOptions opts;
    opts.cap = args.cap;
    opts.workers = args.workers > 0 ? args.workers : gch::default_workers();
    return opts;
}

gch::ComplexVariant variant_for(const gch::Graph& g, const CommonArgs& args) {
    return args.variant == "full" ? gch::ComplexVariant::full(g) : gch::ComplexVariant::reduced(g);
}

void emit(const CommonArgs& args, const std::string& text) {
    if (args.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) throw gch::InputError("cannot write to '" + args.out_path + "'");
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact homology of unordered configuration spaces of graphs"};
    app.require_subcommand(1);
    app.set_config("--config", "", "config file; use one [section] per subcommand, flags win");

    CommonArgs betti_args;
    int betti_imax = 2, betti_kmax = 6;
    CLI::App* cmd_betti = app.add_subcommand("betti", "Betti table over a bidegree rectangle");
    add_common(cmd_betti, betti_args);
    cmd_betti->add_option("--imax", betti_imax, "top homological degree")->default_val(betti_imax);
    cmd_betti->add_option("--kmax", betti_kmax, "top particle count")->default_val(betti_kmax);

    CommonArgs ramos_args;
    int ramos_i = 1;
    CLI::App* cmd_ramos = app.add_subcommand("ramos", "Ramos number and its maximizers");
    add_common(cmd_ramos, ramos_args, /*with_field=*/false);
    cmd_ramos->add_option("--i", ramos_i, "number of essential vertices to remove")->required();

    CommonArgs asym_args;
    int asym_i = 1, asym_kmax = 10;
    CLI::App* cmd_asym = app.add_subcommand("asym", "verify the asymptotic growth formula");
    add_common(cmd_asym, asym_args);
    cmd_asym->add_option("--i", asym_i, "homological degree")->required();
    cmd_asym->add_option("--kmax", asym_kmax, "top particle count")->default_val(asym_kmax);

    CommonArgs certify_args;
    std::string certify_kind = "all";
    CLI::App* cmd_certify = app.add_subcommand("certify", "certify class relations as boundaries");
    add_common(cmd_certify, certify_args);
    cmd_certify
        ->add_option("--kind", certify_kind,
                     "relation: q, theta, unstablex, stablex, combinedx, star, or all")
        ->default_val(certify_kind);

    CommonArgs torsion_args;
    int torsion_imax = 1, torsion_kmax = 4;
    CLI::App* cmd_torsion = app.add_subcommand("torsion", "integral torsion scan");
    add_common(cmd_torsion, torsion_args, /*with_field=*/false);
    cmd_torsion->add_option("--imax", torsion_imax, "top homological degree")->default_val(torsion_imax);
    cmd_torsion->add_option("--kmax", torsion_kmax, "top particle count")->default_val(torsion_kmax);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (cmd_betti->parsed()) {
            gch::Graph g = gch::Graph::from_file(betti_args.graph_path);
            auto table = gch::betti_table(g, gch::FieldSpec::parse(betti_args.field), betti_imax,
                                          betti_kmax, variant_for(g, betti_args),
                                          engine_options(betti_args));
            emit(betti_args, betti_args.format == "json" ? table.to_json() : table.to_csv());
        } else if (cmd_ramos->parsed()) {
            gch::Graph g = gch::Graph::from_file(ramos_args.graph_path);
            auto result = gch::ramos_number(g, ramos_i);
            nlohmann::json j;
            j["graph"] = g.hash();
            j["i"] = ramos_i;
            j["delta"] = result.delta;
            j["maximizers"] = nlohmann::json::array();
            for (const auto& w : result.maximizers) {
                std::vector<std::string> names;
                for (auto v : w) names.push_back(g.vertex_name(v));
                j["maximizers"].push_back(names);
            }
            if (ramos_args.format == "json") {
                emit(ramos_args, j.dump(2) + "\n");
            } else {
                std::ostringstream out;
                out << "graph,i,delta,maximizer\n";
                for (const auto& w : result.maximizers) {
                    out << g.hash() << "," << ramos_i << "," << result.delta << ",";
                    for (std::size_t t = 0; t < w.size(); ++t)
                        out << (t ? ";" : "") << g.vertex_name(w[t]);
                    out << "\n";
                }
                if (result.maximizers.empty())
                    out << g.hash() << "," << ramos_i << "," << result.delta << ",\n";
                emit(ramos_args, out.str());
            }
        } else if (cmd_asym->parsed()) {
            gch::Graph g = gch::Graph::from_file(asym_args.graph_path);
            auto report = gch::verify_growth(g, gch::FieldSpec::parse(asym_args.field), asym_i,
                                             asym_kmax, variant_for(g, asym_args),
                                             engine_options(asym_args));
            emit(asym_args, asym_args.format == "json" ? report.to_json() : report.to_text());
        } else if (cmd_certify->parsed()) {
            gch::Graph g = gch::Graph::from_file(certify_args.graph_path);
            auto field = gch::FieldSpec::parse(certify_args.field);
            std::vector<gch::RelationKind> kinds;
            if (certify_kind == "all") {
                for (auto kind :
                     {gch::RelationKind::q, gch::RelationKind::theta, gch::RelationKind::unstable_x,
                      gch::RelationKind::stable_x, gch::RelationKind::combined_x,
                      gch::RelationKind::star_nontrivial}) {
                    try {
                        gch::verify_relation(g, field, kind, {}, engine_options(certify_args));
                        kinds.push_back(kind); // applicable
                    } catch (const gch::InputError&) {
                        // configuration absent: skip silently in "all" mode
                    }
                }
            } else {
                kinds.push_back(gch::relation_kind_from_string(certify_kind));
            }
            nlohmann::json out = nlohmann::json::array();
            for (auto kind : kinds) {
                auto report = gch::verify_relation(g, field, kind, {}, engine_options(certify_args));
                out.push_back(nlohmann::json::parse(report.to_json()));
            }
            emit(certify_args, out.dump(2) + "\n");
        } else if (cmd_torsion->parsed()) {
            gch::Graph g = gch::Graph::from_file(torsion_args.graph_path);
            auto opts = engine_options(torsion_args);
            auto var = variant_for(g, torsion_args);
            if (torsion_args.format == "json") {
                nlohmann::json j;
                j["graph"] = g.hash();
                j["scans"] = nlohmann::json::array();
                for (int i = 0; i <= torsion_imax; ++i) {
                    auto scan = gch::torsion_growth_scan(g, i, torsion_kmax, var, opts);
                    nlohmann::json cell;
                    cell["i"] = i;
                    cell["exponents"] = nlohmann::json::array();
                    for (int k = 0; k <= torsion_kmax; ++k) {
                        nlohmann::json row;
                        row["k"] = k;
                        for (const auto& [p, e] : scan.exponents[k])
                            row["primes"][std::to_string(p)] = e;
                        cell["exponents"].push_back(row);
                    }
                    j["scans"].push_back(cell);
                }
                emit(torsion_args, j.dump(2) + "\n");
            } else {
                std::ostringstream out;
                out << "i,k,prime,exponent\n";
                for (int i = 0; i <= torsion_imax; ++i) {
                    auto scan = gch::torsion_growth_scan(g, i, torsion_kmax, var, opts);
                    auto csv = scan.to_csv();
                    out << csv.substr(csv.find('\n') + 1); // drop the per-scan header
                }
                emit(torsion_args, out.str());
            }
        }
    } catch (const gch::ResourceError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return kExitResource;
    } catch (const gch::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
