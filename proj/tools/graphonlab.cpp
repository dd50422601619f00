// Experiment CLI: graphon sampling, filter transfer experiments, cut norms,
// Laplace band diagnostics, and the invariant verification suite.

#include <CLI11.hpp>

#include "graphon/harness.hpp"
#include "graphon/verify.hpp"

#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

std::vector<int> parse_sizes(const std::string& csv) {
    std::vector<int> sizes;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) sizes.push_back(std::stoi(tok));
    return sizes;
}

std::vector<std::string> parse_names(const std::string& csv) {
    std::vector<std::string> names;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) names.push_back(tok);
    return names;
}

void emit_csv(const std::vector<graphon::CsvRow>& rows, const std::string& out) {
    if (out.empty()) {
        graphon::write_csv(std::cout, rows);
    } else {
        std::ofstream os(out);
        if (!os) throw graphon::FormatError("cannot open output file " + out);
        graphon::write_csv(os, rows);
    }
}

// Optional JSON config: keys mirror the long option names; explicit command
// line flags win over config values.
nlohmann::json load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw graphon::FormatError("cannot open config file " + path);
    nlohmann::json j;
    is >> j;
    return j;
}

template <typename T>
void config_default(const nlohmann::json& cfg, const CLI::Option* opt,
                    const std::string& key, T& value) {
    if (cfg.contains(key) && opt->count() == 0) value = cfg[key].get<T>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graphonlab: spectral filter transferability experiments on graphons"};
    app.require_subcommand(1);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
    std::uint64_t verify_seed = 42;
    std::string verify_out;
    verify_cmd->add_option("--seed", verify_seed, "master seed");
    verify_cmd->add_option("--out", verify_out, "write the JSON report to a file");

    // converge
    auto* conv_cmd = app.add_subcommand("converge", "operator convergence ladder");
    graphon::ConvergenceConfig conv;
    std::string conv_sizes = "16,32,64,128", conv_mode = "grid", conv_out, conv_config;
    auto* conv_graphon = conv_cmd->add_option("--graphon", conv.graphon, "graphon family");
    auto* conv_filter = conv_cmd->add_option("--filter", conv.filter, "filter spec");
    auto* conv_sizes_opt = conv_cmd->add_option("--sizes", conv_sizes, "comma separated sizes");
    auto* conv_mode_opt = conv_cmd->add_option("--sampling", conv_mode, "grid|iid");
    auto* conv_trials = conv_cmd->add_option("--trials", conv.trials, "trials per size");
    auto* conv_seed = conv_cmd->add_option("--seed", conv.seed, "master seed");
    conv_cmd->add_option("--out", conv_out, "CSV output file");
    conv_cmd->add_option("--config", conv_config, "JSON config file");

    // transfer
    auto* tr_cmd = app.add_subcommand("transfer", "linear stability bound experiment");
    graphon::TransferConfig tr;
    std::string tr_out, tr_config;
    auto* tr_graphon = tr_cmd->add_option("--graphon", tr.graphon, "graphon family");
    auto* tr_filter = tr_cmd->add_option("--filter", tr.filter, "filter spec");
    auto* tr_n1 = tr_cmd->add_option("--n1", tr.n1, "first graph size");
    auto* tr_n2 = tr_cmd->add_option("--n2", tr.n2, "second graph size");
    auto* tr_trials = tr_cmd->add_option("--trials", tr.trials, "trials");
    auto* tr_seed = tr_cmd->add_option("--seed", tr.seed, "master seed");
    tr_cmd->add_option("--out", tr_out, "CSV output file");
    tr_cmd->add_option("--config", tr_config, "JSON config file");

    // scnn
    auto* sc_cmd = app.add_subcommand("scnn", "end-to-end network transfer experiment");
    std::string sc_spec, sc_graphon = "sbm:2,0.8,0.2", sc_inputs = "u,cos", sc_out, sc_config;
    int sc_n1 = 64, sc_n2 = 128, sc_trials = 1;
    std::uint64_t sc_seed = 0;
    auto* sc_spec_opt = sc_cmd->add_option("--spec", sc_spec, "scnn/1 JSON file");
    auto* sc_graphon_opt = sc_cmd->add_option("--graphon", sc_graphon, "graphon family");
    auto* sc_n1_opt = sc_cmd->add_option("--n1", sc_n1, "first graph size");
    auto* sc_n2_opt = sc_cmd->add_option("--n2", sc_n2, "second graph size");
    auto* sc_trials_opt = sc_cmd->add_option("--trials", sc_trials, "trials");
    auto* sc_seed_opt = sc_cmd->add_option("--seed", sc_seed, "master seed");
    auto* sc_inputs_opt =
        sc_cmd->add_option("--inputs", sc_inputs, "comma separated input signals");
    sc_cmd->add_option("--out", sc_out, "CSV output file");
    sc_cmd->add_option("--config", sc_config, "JSON config file");

    // laplace
    auto* la_cmd = app.add_subcommand("laplace", "finite-difference band diagnostics");
    graphon::LaplaceConfig la;
    std::string la_sizes = "64,128,256,512", la_out, la_config;
    auto* la_lambda = la_cmd->add_option("--lambda", la.lambda, "band cutoff");
    auto* la_power = la_cmd->add_option("--k", la.power, "monomial power");
    auto* la_sizes_opt = la_cmd->add_option("--sizes", la_sizes, "comma separated sizes");
    la_cmd->add_option("--scale-exponent", la.scale_exponent,
                       "GSO is multiplied by n^e before induction");
    la_cmd->add_option("--sign", la.sign, "comparison target sign");
    la_cmd->add_option("--out", la_out, "CSV output file");
    la_cmd->add_option("--config", la_config, "JSON config file");

    // cutnorm
    auto* cn_cmd = app.add_subcommand("cutnorm", "cut norm of an induced graphon");
    std::string cn_graph;
    int cn_restarts = 0;
    bool cn_exact = false;
    std::uint64_t cn_seed = 0;
    cn_cmd->add_option("--graph", cn_graph, "gso v1 file")->required();
    cn_cmd->add_flag("--exact", cn_exact, "exact subset enumeration (needs n <= 20)");
    cn_cmd->add_option("--heuristic", cn_restarts, "heuristic restarts");
    cn_cmd->add_option("--seed", cn_seed, "heuristic seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*verify_cmd) {
            const graphon::verify::Report rep = graphon::verify::verify_suite(verify_seed);
            if (verify_out.empty()) {
                std::cout << rep.dump();
            } else {
                std::ofstream os(verify_out);
                os << rep.dump();
            }
            for (const auto& c : rep.json["checks"])
                std::cerr << (c["pass"].get<bool>() ? "[pass] " : "[FAIL] ")
                          << c["name"].get<std::string>() << "  "
                          << c["detail"].get<std::string>() << "\n";
            return rep.all_pass ? kExitOk : kExitCheckFailure;
        }

        if (*conv_cmd) {
            if (!conv_config.empty()) {
                const auto cfg = load_config(conv_config);
                config_default(cfg, conv_graphon, "graphon", conv.graphon);
                config_default(cfg, conv_filter, "filter", conv.filter);
                config_default(cfg, conv_sizes_opt, "sizes", conv_sizes);
                config_default(cfg, conv_mode_opt, "sampling", conv_mode);
                config_default(cfg, conv_trials, "trials", conv.trials);
                config_default(cfg, conv_seed, "seed", conv.seed);
            }
            conv.sizes = parse_sizes(conv_sizes);
            conv.mode = graphon::parse_sample_mode(conv_mode);
            const auto res = graphon::run_convergence(conv);
            emit_csv(res.rows, conv_out);
            std::cerr << "reference size " << res.reference_size << ", medians";
            for (double m : res.medians) std::cerr << " " << m;
            std::cerr << (res.median_decreasing ? " (decreasing)" : " (NOT decreasing)")
                      << "\n";
            return kExitOk;
        }

        if (*tr_cmd) {
            if (!tr_config.empty()) {
                const auto cfg = load_config(tr_config);
                config_default(cfg, tr_graphon, "graphon", tr.graphon);
                config_default(cfg, tr_filter, "filter", tr.filter);
                config_default(cfg, tr_n1, "n1", tr.n1);
                config_default(cfg, tr_n2, "n2", tr.n2);
                config_default(cfg, tr_trials, "trials", tr.trials);
                config_default(cfg, tr_seed, "seed", tr.seed);
            }
            const auto res = graphon::run_transfer_bound(tr);
            emit_csv(res.rows, tr_out);
            std::cerr << "constant " << res.constant << ", "
                      << (res.all_hold ? "bound held in every trial"
                                       : "BOUND VIOLATED in some trial")
                      << "\n";
            return res.all_hold ? kExitOk : kExitCheckFailure;
        }

        if (*sc_cmd) {
            graphon::ScnnTransferConfig cfg;
            if (!sc_config.empty()) {
                const auto j = load_config(sc_config);
                config_default(j, sc_spec_opt, "spec", sc_spec);
                config_default(j, sc_graphon_opt, "graphon", sc_graphon);
                config_default(j, sc_n1_opt, "n1", sc_n1);
                config_default(j, sc_n2_opt, "n2", sc_n2);
                config_default(j, sc_trials_opt, "trials", sc_trials);
                config_default(j, sc_seed_opt, "seed", sc_seed);
                config_default(j, sc_inputs_opt, "inputs", sc_inputs);
            }
            if (sc_spec.empty())
                throw graphon::ParameterError("scnn: --spec file is required");
            cfg.graphon = sc_graphon;
            const double gamma = std::max(graphon::make_graphon(sc_graphon).bound, 1e-9);
            cfg.spec = graphon::ScnnSpec::load(sc_spec, gamma);
            cfg.spec_name = sc_spec;
            cfg.inputs = parse_names(sc_inputs);
            cfg.n1 = sc_n1;
            cfg.n2 = sc_n2;
            cfg.trials = sc_trials;
            cfg.seed = sc_seed;
            const auto res = graphon::run_scnn_transfer(cfg);
            emit_csv(res.rows, sc_out);
            std::cerr << "C_L " << res.constant << ", "
                      << (res.all_hold ? "bound held in every trial"
                                       : "BOUND VIOLATED in some trial")
                      << "\n";
            return res.all_hold ? kExitOk : kExitCheckFailure;
        }

        if (*la_cmd) {
            if (!la_config.empty()) {
                const auto cfg = load_config(la_config);
                config_default(cfg, la_lambda, "lambda", la.lambda);
                config_default(cfg, la_power, "k", la.power);
                config_default(cfg, la_sizes_opt, "sizes", la_sizes);
            }
            la.sizes = parse_sizes(la_sizes);
            const auto res = graphon::run_laplace(la);
            emit_csv(res.rows, la_out);
            std::cerr << (res.gaps_decreasing ? "gaps decreasing"
                                              : "gaps NOT decreasing")
                      << "\n";
            return res.gaps_decreasing ? kExitOk : kExitCheckFailure;
        }

        if (*cn_cmd) {
            const graphon::Graph g = graphon::read_gso(cn_graph);
            const graphon::StepGraphon w = graphon::induce_graphon(g);
            if (cn_exact || cn_restarts <= 0) {
                const graphon::CutNorm res = graphon::cut_norm_exact(w);
                std::cout << "cut_norm " << graphon::format_double(res.value) << "\n";
                std::cout << "s_cells";
                for (int i : res.s_cells) std::cout << " " << i;
                std::cout << "\nt_cells";
                for (int j : res.t_cells) std::cout << " " << j;
                std::cout << "\n";
            } else {
                const double v = graphon::cut_norm_heuristic(w, cn_restarts, cn_seed);
                std::cout << "cut_norm_lower_bound " << graphon::format_double(v) << "\n";
            }
            return kExitOk;
        }
    } catch (const graphon::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const graphon::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
    return kExitUsage;
}
