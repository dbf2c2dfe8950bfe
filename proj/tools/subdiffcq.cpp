#include "subdiffcq/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace subdiffcq;
using nlohmann::json;

namespace {

struct CliOptions {
    std::string case_id = "a";
    std::string alpha = "0.3";
    std::string mu = "-0.4";
    int k = 6;
    int m = 1;
    std::string n_list = "200,400,800";
    int M = 32;
    unsigned prec_bits = 256;
    std::string T = "1";
    int quad_n = 64;
    std::string format = "csv";
    std::string out;
    bool serial = false;
};

std::vector<int> parse_n_list(const std::string& s) {
    std::vector<int> out;
    std::istringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

// The optional JSON config supplies defaults; explicitly passed flags win.
void apply_config(const std::string& path, CliOptions& o, const CLI::App& app) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    json cfg = json::parse(in);

    auto unset = [&](const std::string& flag) { return app.count(flag) == 0; };
    auto str = [](const json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
    };
    if (cfg.contains("case") && unset("--case")) o.case_id = cfg["case"].get<std::string>();
    if (cfg.contains("alpha") && unset("--alpha")) o.alpha = str(cfg["alpha"]);
    if (cfg.contains("mu") && unset("--mu")) o.mu = str(cfg["mu"]);
    if (cfg.contains("k") && unset("--k")) o.k = cfg["k"].get<int>();
    if (cfg.contains("m") && unset("--m")) o.m = cfg["m"].get<int>();
    if (cfg.contains("N") && unset("--N")) {
        if (cfg["N"].is_array()) {
            std::string joined;
            for (const auto& v : cfg["N"]) {
                if (!joined.empty()) joined += ",";
                joined += std::to_string(v.get<int>());
            }
            o.n_list = joined;
        } else {
            o.n_list = str(cfg["N"]);
        }
    }
    if (cfg.contains("M") && unset("--M")) o.M = cfg["M"].get<int>();
    if (cfg.contains("prec-bits") && unset("--prec-bits"))
        o.prec_bits = cfg["prec-bits"].get<unsigned>();
    if (cfg.contains("T") && unset("--T")) o.T = str(cfg["T"]);
    if (cfg.contains("quad-n") && unset("--quad-n")) o.quad_n = cfg["quad-n"].get<int>();
    if (cfg.contains("format") && unset("--format")) o.format = cfg["format"].get<std::string>();
    if (cfg.contains("out") && unset("--out")) o.out = cfg["out"].get<std::string>();
    if (cfg.contains("serial") && unset("--serial")) o.serial = cfg["serial"].get<bool>();
}

ExperimentCase to_case(const CliOptions& o, const std::string& forced_id = "") {
    ExperimentCase c;
    c.id = forced_id.empty() ? o.case_id : forced_id;
    c.alpha = Real(o.alpha);
    c.mu = Real(o.mu);
    c.k = o.k;
    c.m = o.m;
    c.N_list = parse_n_list(o.n_list);
    c.M = o.M;
    c.prec_bits = o.prec_bits;
    c.T = Real(o.T);
    c.quad_n = o.quad_n;
    c.exec = o.serial ? Exec::Serial : Exec::Parallel;
    return c;
}

TableFormat to_format(const std::string& s) {
    if (s == "csv") return TableFormat::Csv;
    if (s == "markdown" || s == "md") return TableFormat::Markdown;
    throw std::invalid_argument("unknown format '" + s + "' (expected csv or markdown)");
}

void print_rows(const std::vector<ConvergenceRow>& rows) {
    std::cout << "N,error,rate\n";
    for (const auto& r : rows) {
        std::cout << r.N << "," << r.error.str(8, std::ios_base::scientific) << ",";
        if (r.rate) std::cout << r.rate->str(6);
        std::cout << "\n";
    }
}

void add_common_flags(CLI::App* cmd, CliOptions& o, std::string& config_path,
                      bool with_case) {
    if (with_case)
        cmd->add_option("--case", o.case_id,
                        "experiment case: a | b-conv | b-prod | scalar | baseline");
    cmd->add_option("--alpha", o.alpha, "fractional order in (0,1)");
    cmd->add_option("--mu", o.mu, "source singularity exponent, > -1");
    cmd->add_option("--k", o.k, "BDF order, 1..6");
    cmd->add_option("--m", o.m, "smoothing order, 0..k (0 = unsmoothed baseline)");
    cmd->add_option("--N", o.n_list, "comma-separated doubling step counts, e.g. 200,400,800");
    cmd->add_option("--M", o.M, "Chebyshev degree of the spatial grid");
    cmd->add_option("--prec-bits", o.prec_bits, "working precision in bits");
    cmd->add_option("--T", o.T, "final time");
    cmd->add_option("--quad-n", o.quad_n, "Gauss-Jacobi rule size for source smoothing");
    cmd->add_option("--format", o.format, "output table format: csv | markdown");
    cmd->add_option("--out", o.out, "output file path (stdout if omitted)");
    cmd->add_flag("--serial", o.serial, "run the serial reference kernels");
    cmd->add_option("--config", config_path, "JSON config file with the same keys");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"configurable-precision IDm-BDFk solver for 1D subdiffusion"};
    app.require_subcommand(1);

    CliOptions study_opts, oracle_opts;
    std::string study_config, oracle_config;
    CLI::App* study = app.add_subcommand("study", "run a refinement study");
    add_common_flags(study, study_opts, study_config, true);
    CLI::App* oracle =
        app.add_subcommand("oracle-compare", "errors against the contour-integral oracle");
    add_common_flags(oracle, oracle_opts, oracle_config, false);

    CLI::App* weights = app.add_subcommand("weights", "export convolution quadrature weights");
    int w_k = 1, w_n = 16;
    std::string w_order = "0.5", w_out;
    unsigned w_bits = 256;
    weights->add_option("--k", w_k, "BDF order, 1..6")->required();
    weights->add_option("--order", w_order, "fractional power of the generating function")
        ->required();
    weights->add_option("--n", w_n, "number of weights (indices 0..n)")->required();
    weights->add_option("--prec-bits", w_bits, "working precision in bits");
    weights->add_option("--out", w_out, "output CSV path (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (study->parsed()) {
            if (!study_config.empty()) apply_config(study_config, study_opts, *study);
            auto rows = run_study(to_case(study_opts));
            if (study_opts.out.empty())
                print_rows(rows);
            else
                emit(rows, to_format(study_opts.format), study_opts.out);
        } else if (oracle->parsed()) {
            if (!oracle_config.empty()) apply_config(oracle_config, oracle_opts, *oracle);
            auto rows = run_oracle_compare(to_case(oracle_opts, "oracle-compare"));
            if (oracle_opts.out.empty())
                print_rows(rows);
            else
                emit(rows, to_format(oracle_opts.format), oracle_opts.out);
        } else if (weights->parsed()) {
            prec::set_working_bits(w_bits);
            auto table = frac_power_weights(bdf_poly(w_k), Real(w_order), w_n);
            if (w_out.empty()) {
                std::cout << "j,weight\n";
                for (std::size_t j = 0; j < table.weights.size(); ++j)
                    std::cout << j << "," << table.weights[j].str(0, std::ios_base::scientific)
                              << "\n";
            } else {
                write_weights_csv(table, w_out);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
