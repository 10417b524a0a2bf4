#pragma once

#include <vector>

#include "gadsim/cmatrix.hpp"
#include "gadsim/eig.hpp"
#include "gadsim/hamiltonian.hpp"

namespace gadsim {

struct GibbsState {
    CMatrix rho;
    double beta = 0.0;
    double log_z = 0.0;
    EigDecomp eig;  // spectrum of the Hamiltonian, kept for reuse
};

struct GroundState {
    double energy = 0.0;
    std::vector<cplx> vector;
    double gap = 0.0;
};

// Gibbs state at inverse temperature beta, computed in the eigenbasis with
// energies shifted by the ground energy before exponentiation.
GibbsState gibbs(const CMatrix& h, double beta);

// Lowest eigenpair and gap. Throws Degenerate when the gap falls below
// degeneracy_tol; pass a negative tol to default to 1e-8 (1 + ||H||).
GroundState ground(const CMatrix& h, double degeneracy_tol = -1.0);

double expect(const CMatrix& o, const GibbsState& state);
double expect(const CMatrix& o, const GroundState& state);

// Cov_rho(X, Y) = 1/2 tr[rho {X,Y}] - tr[rho X] tr[rho Y]
double cov(const CMatrix& rho, const CMatrix& x, const CMatrix& y);

struct CorrelationPoint {
    double distance = 0.0;
    double value = 0.0;  // max over probe pairs of |cov| / (||M|| ||N|| |A||B|)
};

struct CorrelationScan {
    std::vector<CorrelationPoint> points;
    double fitted_k = 0.0;   // reported, never asserted
    double fitted_xi = 0.0;  // reported, never asserted
};

// Per-distance maxima of normalized two-point covariances for single-site
// probes (defaults: Pauli Z and X at every site).
CorrelationScan correlation_scan(const CMatrix& rho, const Lattice& lattice,
                                 const std::vector<CMatrix>& probes = {});

// CSV columns (distance, value).
std::string correlation_scan_csv(const CorrelationScan& scan);

struct TraceRatio {
    double omega = 0.0;
    double lower = 0.0;  // 2 - e^{||Y||}
    double upper = 0.0;  // e^{||Y||}
};

// omega(X, Y) = |tr e^{X+Y}| / tr e^X with the two-sided bound attached.
TraceRatio trace_ratio(const CMatrix& x, const CMatrix& y);

}  // namespace gadsim
