#include <cmath>
#include <random>

#include "doctest.h"
#include "gadsim/extrapolation.hpp"

using namespace gadsim;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("chebyshev_nodes: m=1 gives the midpoint with unit weight") {
    NodePlan p = chebyshev_nodes(1, 1.0);
    REQUIRE(p.nodes.size() == 1);
    CHECK(p.nodes[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.alpha == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("chebyshev_nodes: m=2 node values and alpha = sqrt(2)") {
    NodePlan p = chebyshev_nodes(2, 1.0);
    const double lo = std::sin(kPi / 8.0), hi = std::sin(3.0 * kPi / 8.0);
    CHECK(p.nodes[0] == doctest::Approx(lo * lo).epsilon(1e-12));
    CHECK(p.nodes[1] == doctest::Approx(hi * hi).epsilon(1e-12));
    CHECK(p.alpha == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("chebyshev_nodes: weights sum to one, nodes increasing") {
    for (int m : {1, 2, 3, 5, 8, 13, 21, 40, 64}) {
        NodePlan p = chebyshev_nodes(m, 0.7);
        double sum = 0.0;
        for (double w : p.weights) sum += w;
        CHECK(std::abs(sum - 1.0) <= 1e-10);
        for (std::size_t k = 0; k + 1 < p.nodes.size(); ++k) CHECK(p.nodes[k] < p.nodes[k + 1]);
        CHECK(p.nodes.front() > 0.0);
        CHECK(p.nodes.back() <= 0.7 + 1e-15);
    }
}

TEST_CASE("alpha: product form equals closed form for m in [1,64]") {
    for (int m = 1; m <= 64; ++m) {
        NodePlan p = chebyshev_nodes(m, 1.0);
        CHECK(std::abs(p.alpha - condition_closed_form(m)) <= 1e-10);
    }
}

TEST_CASE("alpha: bounded by 3 log m for m in [2,64]") {
    for (int m = 2; m <= 64; ++m) {
        NodePlan p = chebyshev_nodes(m, 1.0);
        CHECK(p.alpha <= 3.0 * std::log(double(m)));
    }
}

TEST_CASE("alpha: closed-form hand values") {
    CHECK(condition_closed_form(1) == doctest::Approx(1.0).epsilon(1e-14));
    const double want = 0.5 * (1.0 / std::tan(kPi / 8.0) + 1.0 / std::tan(3.0 * kPi / 8.0));
    CHECK(condition_closed_form(2) == doctest::Approx(want).epsilon(1e-14));
    CHECK(condition_closed_form(2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("richardson: constants are exact") {
    NodePlan p = chebyshev_nodes(6, 0.3);
    std::vector<double> samples(6, 2.5);
    CHECK(richardson(p, samples).c0_hat == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("richardson: linear functions vanish at zero") {
    NodePlan p = chebyshev_nodes(4, 1.0);
    std::vector<double> samples;
    for (double x : p.nodes) samples.push_back(x);
    CHECK(std::abs(richardson(p, samples).c0_hat) <= 1e-12);
}

TEST_CASE("richardson: polynomial exactness up to degree m-1") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (int m : {2, 5, 10, 15, 20}) {
        NodePlan p = chebyshev_nodes(m, 0.8);
        std::vector<double> c;
        for (int k = 0; k < m; ++k) c.push_back(coeff(gen));
        std::vector<double> samples;
        for (double x : p.nodes) {
            double acc = 0.0;
            for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
            samples.push_back(acc);
        }
        const double got = richardson(p, samples).c0_hat;
        CHECK(std::abs(got - c[0]) <= 1e-10 * (1.0 + std::abs(c[0])));
    }
}

TEST_CASE("richardson: smooth non-polynomial within theorem budget") {
    NodePlan p = chebyshev_nodes(8, 0.5);
    std::vector<double> samples;
    for (double x : p.nodes) samples.push_back(1.0 / (1.0 + x));
    const double got = richardson(p, samples).c0_hat;
    CHECK(std::abs(got - 1.0) <= 0.15);
    CHECK(std::abs(got - 1.0) <= 0.01);  // typical observed is far below the bound
}

TEST_CASE("richardson: length mismatch throws") {
    NodePlan p = chebyshev_nodes(3, 1.0);
    CHECK_THROWS_AS(richardson(p, {1.0, 2.0}), LengthMismatch);
}

TEST_CASE("error_budget: explicit values and shape") {
    CHECK(error_budget(0.0, 0.0, 5) == doctest::Approx(0.0));
    const double v = error_budget(1e-3, 1.0, 10);
    CHECK(v == doctest::Approx((1e-3 + std::ldexp(1.0, -10)) * 3.0 * std::log(10.0)).epsilon(1e-14));
    // m -> m+1 halves the M-term at delta = 0.
    const double a = error_budget(0.0, 1.0, 12) / (3.0 * std::log(12.0));
    const double b = error_budget(0.0, 1.0, 13) / (3.0 * std::log(13.0));
    CHECK(a == doctest::Approx(2.0 * b).epsilon(1e-12));
}

TEST_CASE("plan: direct search honors the budget") {
    PlanChoice pc = plan(1e-3, 1.0, 0.5);
    CHECK(error_budget(pc.delta, 1.0, pc.m) <= 1e-3);
    CHECK(pc.m >= 10);
    CHECK(pc.m <= 20);
    // x_min = (R/2) sin^2(pi/4m) is within a factor 2 of (R/2)(pi/4m)^2 for m >= 8.
    const double small_angle = 0.25 * (kPi / (4.0 * double(pc.m))) * (kPi / (4.0 * double(pc.m)));
    CHECK(pc.x_min <= 2.0 * small_angle * 0.5 * 2.0 * 2.0);
    CHECK(pc.x_min >= 0.5 * small_angle);
    (void)small_angle;
}

TEST_CASE("plan: epsilon = M returns the smallest feasible m") {
    PlanChoice pc = plan(0.5, 0.5, 1.0);
    CHECK(pc.m <= 3);
    CHECK(error_budget(pc.delta, 0.5, pc.m) <= 0.5);
    if (pc.m > 2) {
        const double delta_prev = 0.5 / (6.0 * std::log(double(pc.m - 1)));
        CHECK(error_budget(delta_prev, 0.5, pc.m - 1) > 0.5);
    }
}

TEST_CASE("noise robustness: error within (2 delta + 2^-m M) 3 log m") {
    // f(x) = 1/(1+x) is analytic with |f| <= M = 2 on |z| <= 0.5; nodes on
    // x_max = 0.25 = R/2 with R = 0.5.
    const int m = 10;
    const double delta = 1e-4;
    NodePlan p = chebyshev_nodes(m, 0.25);
    const double budget = (2.0 * delta + std::ldexp(2.0, -m)) * 3.0 * std::log(double(m));
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> noise(-delta, delta);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> samples;
        for (double x : p.nodes) samples.push_back(1.0 / (1.0 + x) + noise(gen));
        const double got = richardson(p, samples).c0_hat;
        CHECK(std::abs(got - 1.0) <= budget);
    }
}
