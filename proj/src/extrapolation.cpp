#include "gadsim/extrapolation.hpp"

#include <cmath>

namespace gadsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

NodePlan chebyshev_nodes(int m, double x_max) {
    if (m < 1) throw OutOfDomain("chebyshev_nodes: m must be >= 1");
    if (x_max <= 0.0) throw OutOfDomain("chebyshev_nodes: x_max must be positive");

    NodePlan plan;
    plan.m = m;
    plan.x_max = x_max;
    plan.nodes.resize(std::size_t(m));
    for (int k = 1; k <= m; ++k) {
        const double s = std::sin(double(2 * k - 1) * kPi / double(4 * m));
        plan.nodes[std::size_t(k - 1)] = x_max * s * s;
    }

    plan.weights.resize(std::size_t(m));
    if (m <= 20) {
        for (int k = 0; k < m; ++k) {
            double w = 1.0;
            for (int j = 0; j < m; ++j) {
                if (j == k) continue;
                w *= plan.nodes[std::size_t(j)] /
                     (plan.nodes[std::size_t(j)] - plan.nodes[std::size_t(k)]);
            }
            plan.weights[std::size_t(k)] = w;
        }
    } else {
        // Individual factors can overflow long products; accumulate log
        // magnitudes and signs instead.
        for (int k = 0; k < m; ++k) {
            double log_mag = 0.0;
            int sign = 1;
            for (int j = 0; j < m; ++j) {
                if (j == k) continue;
                const double ratio = plan.nodes[std::size_t(j)] /
                                     (plan.nodes[std::size_t(j)] - plan.nodes[std::size_t(k)]);
                log_mag += std::log(std::abs(ratio));
                if (ratio < 0.0) sign = -sign;
            }
            plan.weights[std::size_t(k)] = double(sign) * std::exp(log_mag);
        }
    }

    plan.alpha = 0.0;
    for (double w : plan.weights) plan.alpha += std::abs(w);
    return plan;
}

double condition_closed_form(int m) {
    if (m < 1) throw OutOfDomain("condition_closed_form: m must be >= 1");
    double s = 0.0;
    for (int k = 1; k <= m; ++k) s += 1.0 / std::tan(double(2 * k - 1) * kPi / double(4 * m));
    return s / double(m);
}

Estimate richardson(const NodePlan& plan, const std::vector<double>& samples) {
    if (int(samples.size()) != plan.m)
        throw LengthMismatch("richardson: samples length differs from node count");
    Estimate est;
    est.samples = samples;
    double acc = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) acc += plan.weights[k] * samples[k];
    est.c0_hat = acc;
    return est;
}

double error_budget(double delta, double big_m, int m) {
    if (delta < 0.0 || big_m < 0.0) throw OutOfDomain("error_budget: negative inputs");
    if (m < 2) throw OutOfDomain("error_budget: m must be >= 2");
    return (delta + std::ldexp(big_m, -m)) * 3.0 * std::log(double(m));
}

PlanChoice plan(double epsilon, double big_m, double r) {
    if (epsilon <= 0.0) throw OutOfDomain("plan: epsilon must be positive");
    if (big_m < epsilon) throw OutOfDomain("plan: require M >= epsilon");
    if (r <= 0.0) throw OutOfDomain("plan: R must be positive");

    for (int m = 2; m <= 4096; ++m) {
        const double delta = epsilon / (6.0 * std::log(double(m)));
        if (error_budget(delta, big_m, m) <= epsilon) {
            const double s = std::sin(kPi / double(4 * m));
            return {m, delta, 0.5 * r * s * s};
        }
    }
    throw Infeasible("plan: no m <= 4096 meets the budget");
}

}  // namespace gadsim
