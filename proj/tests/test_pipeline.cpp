#include <cmath>

#include "doctest.h"
#include "gadsim/pauli.hpp"
#include "gadsim/pipeline.hpp"

using namespace gadsim;

namespace {

json base_config() {
    // Transverse+longitudinal background: breaks every spin-flip symmetry of
    // ZZZ so single-site observables have generic nonzero targets.
    return json{
        {"gadget", {{"three_to_two", {{"h", {"Z", "Z", "Z"}}, {"count", 1}}}}},
        {"background",
         json::array(
             {json{{"support", {0}},
                   {"pauli_terms", json::array({json{{"word", "X"}, {"coeff", -0.30}},
                                                json{{"word", "Z"}, {"coeff", -0.20}}})}},
              json{{"support", {1}},
                   {"pauli_terms", json::array({json{{"word", "X"}, {"coeff", -0.25}}})}},
              json{{"support", {2}},
                   {"pauli_terms", json::array({json{{"word", "X"}, {"coeff", -0.35}},
                                                json{{"word", "Z"}, {"coeff", 0.15}}})}}})},
        {"mode", "ground"},
        {"observable", {{"site", 0}, {"pauli", "Z"}}},
        {"plan", {{"m", 6}, {"x_max", 0.1}}},
        {"q_max", 6}};
}

}  // namespace

TEST_CASE("run_experiment: ground mode hits the target within budget") {
    ExperimentConfig config = ExperimentConfig::from_json(base_config());
    Report rep = run_experiment(config);
    CHECK(rep.abs_error <= 0.05);
    CHECK(rep.error_within_budget);
    CHECK(rep.nodes.size() == 6);
    for (const auto& r : rep.nodes) {
        CHECK(r.x > 0.0);
        CHECK(r.x <= 0.1 + 1e-15);
        CHECK(r.max_strength == doctest::Approx(std::pow(r.x, -3.0)));
    }
}

TEST_CASE("run_experiment: Gibbs-mode error decreases with m") {
    json cfg = base_config();
    cfg["mode"] = json{{"gibbs", 2.0}};
    std::vector<double> errors;
    for (int m : {4, 6, 8}) {
        cfg["plan"]["m"] = m;
        Report rep = run_experiment(ExperimentConfig::from_json(cfg));
        errors.push_back(rep.abs_error);
    }
    int violations = 0;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i)
        if (errors[i + 1] > errors[i]) ++violations;
    CHECK(violations <= 1);
    CHECK(errors.back() <= 0.05);
}

TEST_CASE("run_experiment: extensive observable equals the per-term sum (linearity)") {
    json cfg = base_config();
    cfg["mode"] = json{{"gibbs", 2.0}};

    // Whole-sum extrapolation of sum_i Z_i.
    json terms = json::array();
    for (int i = 0; i < 3; ++i)
        terms.push_back(json{{"support", {i}},
                             {"pauli_terms", json::array({json{{"word", "Z"}, {"coeff", 1.0}}})}});
    cfg["observable"] = json{{"terms", terms}};
    Report whole = run_experiment(ExperimentConfig::from_json(cfg));

    double per_term_sum = 0.0;
    for (int i = 0; i < 3; ++i) {
        json one = base_config();
        one["mode"] = json{{"gibbs", 2.0}};
        one["observable"] = json{{"site", i}, {"pauli", "Z"}};
        per_term_sum += run_experiment(ExperimentConfig::from_json(one)).extrapolated;
    }
    CHECK(std::abs(whole.extrapolated - per_term_sum) <= 1e-10);
}

TEST_CASE("run_experiment: noise values honor the bound and are deterministic") {
    json cfg = base_config();
    cfg["noise"] = json{{"delta", 1e-4}, {"seed", 7}};
    Report a = run_experiment(ExperimentConfig::from_json(cfg));
    Report b = run_experiment(ExperimentConfig::from_json(cfg));
    for (const auto& r : a.nodes) CHECK(std::abs(r.noise) <= 1e-4);
    // Determinism: identical config + seed gives identical reports modulo timing.
    json ja = a.to_json(), jb = b.to_json();
    ja.erase("timing");
    jb.erase("timing");
    CHECK(ja.dump() == jb.dump());
}

TEST_CASE("run_experiment: x_max clamp emits a warning") {
    json cfg = base_config();
    cfg["plan"]["x_max"] = 0.5;  // far above the cap
    Report rep = run_experiment(ExperimentConfig::from_json(cfg));
    CHECK(rep.x_max_used < 0.5);
    CHECK(rep.warnings.size() >= 1);
}

TEST_CASE("run_experiment: non-gadget input propagates NotAGadget") {
    // A degree-2 ladder whose first order has a P0 block.
    json gadget{{"spec",
                 json{{"lattice", json{{"custom", json{{"dist", {{0.0, 1.0}, {1.0, 0.0}}},
                                                       {"dims", {2, 2}},
                                                       {"D", 1}}}}},
                      {"anc_sites", {1}},
                      {"delta", 1.0},
                      {"degree", 2},
                      {"ladder",
                       json{{"1", json::array({json{{"support", {0}},
                                                    {"pauli_terms",
                                                     json::array({json{{"word", "Z"}, {"coeff", 0.5}}})}}})},
                            {"2", json::array({json{{"support", {0}},
                                                    {"pauli_terms",
                                                     json::array({json{{"word", "X"}, {"coeff", 1.0}}})}}})}}}}}};
    json cfg{{"gadget", gadget},
             {"mode", "ground"},
             {"observable", {{"site", 0}, {"pauli", "Z"}}},
             {"plan", {{"m", 4}, {"x_max", 0.01}}}};
    CHECK_THROWS_AS(run_experiment(ExperimentConfig::from_json(cfg)), NotAGadget);
}

TEST_CASE("gadget JSON round trip preserves the Hamiltonian") {
    GadgetSpec spec = three_to_two(pauli_z(), pauli_x(), pauli_z());
    json j = gadget_to_json(spec);
    GadgetSpec back = gadget_from_json(j);
    for (double x : {0.1, 0.37}) {
        CHECK(op_norm(back.ctx->h_dense(x) - spec.ctx->h_dense(x)) <= 1e-10);
    }
    CHECK(op_norm(back.target->assemble() - spec.target->assemble()) <= 1e-10);
}

TEST_CASE("run_invariants: deterministic rows and unknown suite error") {
    SuiteReport a = run_invariants("extrap", 7);
    SuiteReport b = run_invariants("extrap", 7);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].name == b.rows[i].name);
        CHECK(a.rows[i].value == b.rows[i].value);
    }
    CHECK(a.all_pass);
    CHECK_THROWS_AS(run_invariants("nonsense", 1), UnknownSuite);
}

TEST_CASE("run_invariants: traceineq suite passes with seed 7") {
    SuiteReport rep = run_invariants("traceineq", 7);
    CHECK(rep.all_pass);
    CHECK(rep.rows.front().value == 0.0);  // zero violations out of 200
}

TEST_CASE("hamiltonian JSON round trip: pauli and dense branches") {
    Lattice l = Lattice::chain(3);
    LocalHamiltonian h{l};
    h.add_term({0, 1}, 0.7 * kron(pauli_z(), pauli_z()) + 0.2 * kron(pauli_x(), pauli_i()));
    h.add_term({2}, -0.4 * pauli_y());
    h.set_identity_coefficient(0.3);
    LocalHamiltonian back = hamiltonian_from_json(hamiltonian_to_json(h), l);
    CHECK(op_norm(back.assemble() - h.assemble()) <= 1e-10);

    // Dense branch via a non-qubit site.
    Lattice l3 = Lattice::custom({{0.0, 1.0}, {1.0, 0.0}}, {3, 2}, 1);
    LocalHamiltonian hq{l3};
    CMatrix m(3, 3);
    m(0, 0) = 1.0;
    m(1, 2) = cplx(0.0, 0.5);
    m(2, 1) = cplx(0.0, -0.5);
    hq.add_term({0}, m);
    LocalHamiltonian backq = hamiltonian_from_json(hamiltonian_to_json(hq), l3);
    CHECK(op_norm(backq.assemble() - hq.assemble()) <= 1e-12);
}
