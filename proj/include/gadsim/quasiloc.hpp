#pragma once

#include <vector>

#include "gadsim/hamiltonian.hpp"
#include "gadsim/states.hpp"

namespace gadsim {

// Commutator-norm profile ||[O_A(t), O_B]||_op over times and probe sites.
struct LRProfile {
    std::vector<double> times;
    std::vector<double> distances;            // per probe site, dist(B, A)
    std::vector<std::vector<double>> norms;   // norms[it][ib]
    std::vector<double> fitted_decay_rates;   // per time, slope of log-norm vs distance
};

// Kernel selection for the locally-smeared operators. For the Gibbs-side
// kernel the time cutoff is chosen so the tail bound
// (4/pi beta)/(e^{pi T/beta} - 1) drops below kappa_tail_tol.
struct FilterSpec {
    enum class Kind { Qbp, SpectralFlow };

    Kind kind = Kind::Qbp;
    double beta = 1.0;            // qbp only
    double gamma = 1.0;           // spectral flow only
    double time_cutoff = 0.0;     // 0 -> derive from kappa_tail_tol
    double kappa_tail_tol = 1e-12;
    double quad_tol = 1e-11;

    static FilterSpec qbp(double beta);
    static FilterSpec spectral_flow(double gamma);

    double effective_cutoff() const;
};

// e^{iHt} O e^{-iHt} through the eigenbasis.
CMatrix heisenberg(const CMatrix& o, const CMatrix& h, double t);

// Commutator norms against Pauli-Z probes at sites_b.
LRProfile lr_profile(const LocalHamiltonian& h, const CMatrix& o_a_term,
                     const std::vector<int>& support_a, const std::vector<int>& sites_b,
                     const std::vector<double>& times);

// Gibbs-side smearing: in the eigenbasis of H the matrix element (a,b) picks
// up the factor khat(E_a - E_b), where khat is the Fourier transform of the
// kernel on [-T, T], evaluated by adaptive quadrature and cached per gap.
CMatrix qbp_operator(const CMatrix& h, const CMatrix& x, double beta, const FilterSpec& spec);

// khat(omega) itself (exposed for normalization checks: khat(0) = 1).
double qbp_filter_value(double omega, double beta, const FilterSpec& spec);

// Trace-norm residual of the Gibbs-state derivative identity checked with
// central finite differences on a polynomial family.
double qbp_derivative_check(const ParamFamily& family, double x0, double beta, double fd_step);

// Ground-side smearing with the Fejer window: matrix element filter
// phi(omega) = i sign(omega)/gamma for 0 < |omega| <= gamma, i/omega for
// |omega| > gamma, 0 at omega = 0.
CMatrix spectral_flow_operator(const CMatrix& h, const CMatrix& x, double gamma);

cplx spectral_flow_filter(double omega, double gamma);

// Residual of d/dx |psi0> = i Psi(dH) |psi0| after projecting the ground
// component out of both sides. gamma <= 0 selects 0.9 * gap automatically.
double sf_derivative_check(const ParamFamily& family, double x0, double fd_step,
                           double gamma = -1.0);

// Normalized partial trace outside B_r(A): identity outside the ball, exact
// Hilbert-Schmidt projection onto ball-supported operators.
CMatrix truncate_to_ball(const CMatrix& o, const Lattice& lattice, const std::vector<int>& a,
                         double r);

struct GaliMode {
    bool gibbs_mode = true;
    double beta = 1.0;

    static GaliMode gibbs(double beta) { return {true, beta}; }
    static GaliMode ground() { return {false, 0.0}; }
};

struct GaliPoint {
    double r0 = 0.0;
    double difference = 0.0;  // |f(x,x) - f(0,x)| with region = B_r0(A)^c
};

// For each r0, re-parametrize the terms outside B_r0(A) and measure how much
// the local observable moves when that far parameter is switched off.
std::vector<GaliPoint> gali_scan(const ParamFamily& family, const CMatrix& o_a_term,
                                 const std::vector<int>& support_a, const GaliMode& mode, double x,
                                 const std::vector<double>& r0_values);

// CSV outputs for plotting: (t, distance, value) rows for commutator
// profiles and (r0, value) for locality scans.
std::string lr_profile_csv(const LRProfile& profile);
std::string gali_scan_csv(const std::vector<GaliPoint>& points);

}  // namespace gadsim
