#pragma once

#include <optional>
#include <string>

#include "gadsim/serialize.hpp"

namespace gadsim {

// End-to-end experiment: build the simulator, sample the observable at the
// Chebyshev nodes by exact diagonalization, extrapolate to x = 0 and compare
// against the target computed from H_eff(0).
struct ExperimentConfig {
    GadgetSpec gadget;
    bool gibbs_mode = false;
    double beta = 1.0;
    // Observable: sum of local terms on the effective sublattice.
    LocalHamiltonian observable;
    // Either a direct (m, x_max) plan or a budget-driven one.
    int m = 6;
    double x_max = 0.0;  // 0 -> derive from (epsilon, M, R) or x_ref
    std::optional<double> plan_epsilon, plan_m_bound, plan_r;
    // Bounded uniform noise on the samples.
    double noise_delta = 0.0;
    std::uint64_t noise_seed = 0;
    int q_max = 0;  // 0 -> degree + 3

    static ExperimentConfig from_json(const json& j);
    json echo() const;
};

struct NodeRow {
    double x = 0.0;
    double f_prime = 0.0;
    double noise = 0.0;
    double max_strength = 0.0;
};

struct Report {
    json config_echo;
    double x_star = 0.0, x_ref = 0.0, x_max_used = 0.0;
    std::vector<std::string> warnings;
    std::vector<NodeRow> nodes;
    double alpha = 0.0;
    double extrapolated = 0.0;
    double exact = 0.0;
    double abs_error = 0.0;
    double budget = 0.0;
    double m_emp = 0.0;  // empirical proxy 4 max|f'|, flagged heuristic
    bool error_within_budget = false;
    double elapsed_seconds = 0.0;  // excluded from determinism comparisons

    json to_json() const;
    std::string to_csv() const;
};

Report run_experiment(const ExperimentConfig& config);

// One row of an invariant-suite run.
struct CheckRow {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<CheckRow> rows;
    bool all_pass = true;

    json to_json() const;
};

// suite in {linalg, fnorm, traceineq, qbp, spectralflow, lr, gali, sw,
// gadgets, extrap, all}; deterministic given the seed.
SuiteReport run_invariants(const std::string& suite, std::uint64_t seed, int size_scale = 1);

}  // namespace gadsim
