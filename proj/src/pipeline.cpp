#include "gadsim/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gadsim/pauli.hpp"
#include "gadsim/tensor.hpp"

namespace gadsim {

namespace {

CMatrix qubit_from_spec(const json& j) {
    if (j.is_string()) return pauli_from_char(j.get<std::string>().at(0));
    // ["Z", coeff]
    return j.at(1).get<double>() * pauli_from_char(j.at(0).get<std::string>().at(0));
}

GadgetSpec gadget_from_config(const json& j) {
    if (j.contains("spec")) return gadget_from_json(j.at("spec"));
    if (j.contains("three_to_two")) {
        const auto& t = j.at("three_to_two");
        const auto& hs = t.at("h");
        CMatrix h1 = qubit_from_spec(hs.at(0));
        CMatrix h2 = qubit_from_spec(hs.at(1));
        CMatrix h3 = qubit_from_spec(hs.at(2));
        const int count = t.value("count", 1);
        if (count == 1) return three_to_two(h1, h2, h3);
        // Replicate along a chain: gadget g acts on (g, g+1, g+2).
        const int n_eff = count + 2;
        std::vector<std::array<int, 3>> triples;
        for (int g = 0; g < count; ++g) triples.push_back({g, g + 1, g + 2});
        Lattice lattice = chain_with_ancillas(n_eff, triples);
        std::vector<GadgetSpec> parts;
        for (int g = 0; g < count; ++g)
            parts.push_back(
                three_to_two_on(lattice, {g, g + 1, g + 2}, n_eff + g, h1, h2, h3));
        return combine(parts);
    }
    throw Error("gadget config: need 'spec' or 'three_to_two'");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig c;
    c.gadget = gadget_from_config(j.at("gadget"));
    if (j.contains("background")) {
        LocalHamiltonian bg =
            hamiltonian_from_json(j.at("background"), c.gadget.ctx->eff_lattice());
        c.gadget = combine({c.gadget}, bg);
    }

    const auto& mode = j.at("mode");
    if (mode.is_string() && mode.get<std::string>() == "ground") {
        c.gibbs_mode = false;
    } else if (mode.is_object() && mode.contains("gibbs")) {
        c.gibbs_mode = true;
        c.beta = mode.at("gibbs").get<double>();
    } else {
        throw Error("mode: expected \"ground\" or {\"gibbs\": beta}");
    }

    const auto& obs = j.at("observable");
    LocalHamiltonian o{c.gadget.ctx->eff_lattice()};
    if (obs.contains("site")) {
        o.add_term({obs.at("site").get<int>()},
                   pauli_from_char(obs.at("pauli").get<std::string>().at(0)));
    } else if (obs.contains("terms")) {
        o = hamiltonian_from_json(obs.at("terms"), c.gadget.ctx->eff_lattice());
    } else {
        throw Error("observable: need 'site'+'pauli' or 'terms'");
    }
    c.observable = std::move(o);

    const auto& plan_spec = j.at("plan");
    if (plan_spec.contains("m")) {
        c.m = plan_spec.at("m").get<int>();
        c.x_max = plan_spec.value("x_max", 0.0);
    } else {
        c.plan_epsilon = plan_spec.at("epsilon").get<double>();
        c.plan_m_bound = plan_spec.at("M").get<double>();
        c.plan_r = plan_spec.at("R").get<double>();
    }
    if (j.contains("noise") && !j.at("noise").is_null()) {
        c.noise_delta = j.at("noise").at("delta").get<double>();
        c.noise_seed = j.at("noise").value("seed", 0);
    }
    c.q_max = j.value("q_max", 0);
    return c;
}

json ExperimentConfig::echo() const {
    json mode = gibbs_mode ? json{{"gibbs", beta}} : json("ground");
    return json{{"gadget", gadget_to_json(gadget)},
                {"mode", mode},
                {"observable", hamiltonian_to_json(observable)},
                {"m", m},
                {"x_max", x_max},
                {"noise_delta", noise_delta},
                {"noise_seed", noise_seed},
                {"q_max", q_max}};
}

json Report::to_json() const {
    json node_rows = json::array();
    for (const auto& r : nodes)
        node_rows.push_back(json{{"x", r.x},
                                 {"f_prime", r.f_prime},
                                 {"noise", r.noise},
                                 {"max_strength", r.max_strength}});
    return json{{"x_star", x_star},
                {"x_ref", x_ref},
                {"x_max_used", x_max_used},
                {"warnings", warnings},
                {"nodes", node_rows},
                {"alpha", alpha},
                {"extrapolated", extrapolated},
                {"exact", exact},
                {"abs_error", abs_error},
                {"budget", budget},
                {"m_emp_heuristic", m_emp},
                {"pass", json{{"error_within_budget", error_within_budget}}},
                {"config", config_echo},
                {"timing", json{{"elapsed_seconds", elapsed_seconds}}}};
}

std::string Report::to_csv() const {
    std::ostringstream os;
    os.precision(12);
    os << "x_k,f_prime,noise,max_strength\n";
    for (const auto& r : nodes)
        os << r.x << ',' << r.f_prime << ',' << r.noise << ',' << r.max_strength << '\n';
    os << "extrapolated," << extrapolated << ",,\n";
    os << "exact," << exact << ",,\n";
    os << "abs_error," << abs_error << ",,\n";
    os << "budget," << budget << ",,\n";
    os << "alpha," << alpha << ",,\n";
    return os.str();
}

Report run_experiment(const ExperimentConfig& config) {
    const auto t_start = std::chrono::steady_clock::now();
    const SWContext& ctx = *config.gadget.ctx;
    if (ctx.lattice().total_dim() > 4096)
        throw TooLarge("run_experiment: Hilbert dimension beyond 4096");

    Report rep;
    rep.config_echo = config.echo();
    rep.x_star = ctx.x_star();
    rep.x_ref = ctx.x_ref();

    const int d = ctx.degree();
    const int q_max = (config.q_max > 0) ? config.q_max : d + 3;

    ValidationReport val = validate(config.gadget, q_max);
    if (!val.is_gadget) throw NotAGadget("run_experiment: ladder failed gadget validation");
    const LocalHamiltonian h_tar = val.h_tar_computed;

    // Node plan. The spec scale x_* is clamped against only when it is
    // numerically meaningful (x_*^d resolvable in doubles); otherwise the
    // recorded working scale x_ref caps the schedule.
    int m = config.m;
    double x_max = config.x_max;
    if (config.plan_epsilon) {
        const PlanChoice pc = plan(*config.plan_epsilon, *config.plan_m_bound, *config.plan_r);
        m = pc.m;
        x_max = 0.5 * *config.plan_r;
    }
    const double eps = std::numeric_limits<double>::epsilon();
    const bool x_star_resolvable = std::pow(ctx.x_star(), double(d)) >= 100.0 * eps;
    const double cap = x_star_resolvable ? ctx.x_star() : ctx.x_ref();
    if (!x_star_resolvable)
        rep.warnings.push_back(
            "x_star^d is below double-precision resolution; capping the schedule at x_ref");
    if (x_max <= 0.0) x_max = cap;
    if (x_max > cap) {
        rep.warnings.push_back("x_max exceeds the convergence cap; clamped");
        x_max = cap;
    }
    rep.x_max_used = x_max;

    NodePlan nodes = chebyshev_nodes(m, x_max);
    rep.alpha = nodes.alpha;

    // Observable lifted to the full simulator lattice (identity on ancillas).
    CMatrix o_full(ctx.lattice().total_dim(), ctx.lattice().total_dim());
    {
        const std::size_t dim = ctx.lattice().total_dim();
        for (std::size_t i = 0; i < dim; ++i)
            o_full(i, i) += config.observable.identity_coefficient();
        for (const auto& t : config.observable.terms()) {
            std::vector<int> global;
            for (int s : t.support) global.push_back(ctx.eff_sites()[std::size_t(s)]);
            o_full += embed(t.matrix, global, ctx.lattice());
        }
    }

    std::mt19937_64 noise_gen(config.noise_seed);
    std::uniform_real_distribution<double> noise(-config.noise_delta, config.noise_delta);

    std::vector<double> samples;
    for (double x : nodes.nodes) {
        NodeRow row;
        row.x = x;
        row.max_strength = ctx.delta() * std::pow(x, -double(d));
        double f = 0.0;
        if (config.gibbs_mode) {
            const CMatrix rho = simulator_gibbs_state(ctx, x, config.beta);
            f = trace(o_full * rho).real();
        } else {
            GroundState g = simulator_ground_state(ctx, x);
            f = expect(o_full, g);
        }
        row.noise = (config.noise_delta > 0.0) ? noise(noise_gen) : 0.0;
        row.f_prime = f;
        samples.push_back(f + row.noise);
        rep.nodes.push_back(row);
    }

    Estimate est = richardson(nodes, samples);
    rep.extrapolated = est.c0_hat;

    // Exact reference from the validated effective Hamiltonian at x = 0.
    const CMatrix h_tar_dense = h_tar.assemble();
    const CMatrix o_eff = config.observable.assemble();
    if (config.gibbs_mode)
        rep.exact = expect(o_eff, gibbs(h_tar_dense, config.beta));
    else
        rep.exact = expect(o_eff, ground(h_tar_dense));

    rep.abs_error = std::abs(rep.extrapolated - rep.exact);
    double max_abs_sample = 0.0;
    for (double s : samples) max_abs_sample = std::max(max_abs_sample, std::abs(s));
    rep.m_emp = 4.0 * max_abs_sample;
    rep.budget = error_budget(config.noise_delta, rep.m_emp, m);
    rep.error_within_budget = rep.abs_error <= rep.budget;

    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rep;
}

json SuiteReport::to_json() const {
    json out{{"suite", suite}, {"seed", seed}, {"all_pass", all_pass}};
    json r = json::array();
    for (const auto& row : rows)
        r.push_back(json{{"name", row.name},
                         {"value", row.value},
                         {"bound", row.bound},
                         {"pass", row.pass}});
    out["rows"] = r;
    return out;
}

}  // namespace gadsim
