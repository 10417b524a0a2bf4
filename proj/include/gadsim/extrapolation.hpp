#pragma once

#include <vector>

#include "gadsim/errors.hpp"

namespace gadsim {

// Chebyshev sampling plan with Lagrange-at-zero weights and its condition
// number alpha = sum_k |w_k|.
struct NodePlan {
    int m = 0;
    double x_max = 0.0;
    std::vector<double> nodes;    // strictly increasing, in (0, x_max]
    std::vector<double> weights;  // sum to 1
    double alpha = 0.0;
};

struct Estimate {
    double c0_hat = 0.0;
    double budget = 0.0;
    std::vector<double> samples;
};

// Nodes x_k = x_max sin^2((2k-1) pi / 4m); weights by the pairwise product
// formula (log-magnitude accumulation above m = 20).
NodePlan chebyshev_nodes(int m, double x_max);

// (1/m) sum_k cot((2k-1) pi / 4m); equals the product-form alpha.
double condition_closed_form(int m);

// c0_hat = sum_k w_k f(x_k): exact for polynomials of degree <= m-1.
Estimate richardson(const NodePlan& plan, const std::vector<double>& samples);

// (delta + 2^-m M) * 3 log(m)
double error_budget(double delta, double big_m, int m);

struct PlanChoice {
    int m = 0;
    double delta = 0.0;
    double x_min = 0.0;
};

// Smallest m with error_budget(delta(m), M, m) <= epsilon, where
// delta(m) = epsilon / (6 log m); x_min = (R/2) sin^2(pi / 4m).
PlanChoice plan(double epsilon, double big_m, double r);

}  // namespace gadsim
