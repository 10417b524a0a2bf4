#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "gadsim/pipeline.hpp"
#include "gadsim/serialize.hpp"

namespace {

using gadsim::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

int cmd_validate(const std::string& gadget_path, int q_max) {
    gadsim::GadgetSpec spec = gadsim::gadget_from_json(load_json(gadget_path));
    if (q_max <= 0) q_max = spec.ctx->degree();
    gadsim::ValidationReport rep = gadsim::validate(spec, q_max);

    json out{{"is_gadget", rep.is_gadget},
             {"low_order_block_norms", rep.low_order_block_norms},
             {"target_mismatch", rep.target_mismatch},
             {"eta", rep.eta},
             {"x_star", spec.ctx->x_star()},
             {"x_ref", spec.ctx->x_ref()},
             {"theta", spec.ctx->theta()},
             {"J", spec.ctx->j_const()}};
    if (rep.is_gadget) out["h_tar"] = gadsim::hamiltonian_to_json(rep.h_tar_computed);
    std::cout << out.dump(2) << std::endl;
    return rep.is_gadget ? 0 : 1;
}

int cmd_sw_expand(const std::string& gadget_path, int q_max, const std::string& out_path,
                  const std::string& csv_path) {
    gadsim::GadgetSpec spec = gadsim::gadget_from_json(load_json(gadget_path));
    gadsim::SWSeries series = gadsim::sw_expand(*spec.ctx, q_max);
    json out{{"q_max", series.q_max},
             {"bounds_ok", series.bounds_ok},
             {"empirical_theta", series.empirical_theta},
             {"pruned_mass", series.pruned_mass},
             {"series", gadsim::series_to_json(series)}};
    if (out_path.empty())
        std::cout << out.dump(2) << std::endl;
    else
        write_file(out_path, out.dump(2) + "\n");
    if (!csv_path.empty()) write_file(csv_path, gadsim::series_summary_csv(*spec.ctx, series));
    return series.bounds_ok ? 0 : 1;
}

int cmd_extrapolate(const std::string& samples_path, double x_max, const std::string& out_path) {
    // CSV with one sample per line (optionally "x,value"; the x column is
    // checked against the plan nodes when present).
    std::ifstream in(samples_path);
    if (!in) throw std::runtime_error("cannot open " + samples_path);
    std::vector<double> samples;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string first, second;
        std::getline(row, first, ',');
        if (std::getline(row, second, ','))
            samples.push_back(std::stod(second));
        else
            samples.push_back(std::stod(first));
    }
    gadsim::NodePlan plan = gadsim::chebyshev_nodes(int(samples.size()), x_max);
    gadsim::Estimate est = gadsim::richardson(plan, samples);
    json out = gadsim::estimate_to_json(est, plan);
    if (out_path.empty())
        std::cout << out.dump(2) << std::endl;
    else
        write_file(out_path, out.dump(2) + "\n");
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_path,
            const std::string& csv_path) {
    gadsim::ExperimentConfig config =
        gadsim::ExperimentConfig::from_json(load_json(config_path));
    gadsim::Report rep = gadsim::run_experiment(config);
    const std::string text = rep.to_json().dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    if (!csv_path.empty()) write_file(csv_path, rep.to_csv());
    return rep.error_within_budget ? 0 : 1;
}

int cmd_invariants(const std::string& suite, std::uint64_t seed, int scale) {
    gadsim::SuiteReport rep = gadsim::run_invariants(suite, seed, scale);
    for (const auto& row : rep.rows)
        std::cout << (row.pass ? "[pass] " : "[FAIL] ") << row.name << ": value=" << row.value
                  << " bound=" << row.bound << "\n";
    std::cout << (rep.all_pass ? "all checks passed" : "CHECK FAILURES PRESENT") << std::endl;
    return rep.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perturbative-gadget simulator toolkit"};
    app.require_subcommand(1);

    std::string gadget_path, out_path, csv_path, samples_path, config_path, suite = "all";
    int q_max = 0, scale = 1;
    double x_max = 0.0;
    std::uint64_t seed = 1;

    auto* validate_cmd = app.add_subcommand("validate", "validate a gadget JSON file");
    validate_cmd->add_option("gadget", gadget_path)->required();
    validate_cmd->add_option("--qmax", q_max);

    auto* expand_cmd = app.add_subcommand("sw-expand", "run the series expansion");
    expand_cmd->add_option("gadget", gadget_path)->required();
    expand_cmd->add_option("--qmax", q_max)->required();
    expand_cmd->add_option("--out", out_path);
    expand_cmd->add_option("--summary-csv", csv_path);

    auto* extrap_cmd = app.add_subcommand("extrapolate", "Richardson-extrapolate samples");
    extrap_cmd->add_option("--samples", samples_path)->required();
    extrap_cmd->add_option("--xmax", x_max)->required();
    extrap_cmd->add_option("--out", out_path);

    auto* run_cmd = app.add_subcommand("run", "run an experiment config");
    run_cmd->add_option("config", config_path)->required();
    run_cmd->add_option("--out", out_path);
    run_cmd->add_option("--csv", csv_path);

    auto* inv_cmd = app.add_subcommand("invariants", "run an invariant suite");
    inv_cmd->add_option("--suite", suite);
    inv_cmd->add_option("--seed", seed);
    inv_cmd->add_option("--scale", scale);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(validate_cmd)) return cmd_validate(gadget_path, q_max);
        if (app.got_subcommand(expand_cmd))
            return cmd_sw_expand(gadget_path, q_max, out_path, csv_path);
        if (app.got_subcommand(extrap_cmd)) return cmd_extrapolate(samples_path, x_max, out_path);
        if (app.got_subcommand(run_cmd)) return cmd_run(config_path, out_path, csv_path);
        if (app.got_subcommand(inv_cmd)) return cmd_invariants(suite, seed, scale);
    } catch (const gadsim::NotAGadget& e) {
        std::cerr << "check failure: " << e.what() << std::endl;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
    return 2;
}
