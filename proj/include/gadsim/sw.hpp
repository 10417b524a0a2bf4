#pragma once

#include <optional>
#include <vector>

#include "gadsim/hamiltonian.hpp"
#include "gadsim/states.hpp"

namespace gadsim {

// Everything the series construction needs: ancilla layout, penalty, the
// term ladder H^(1..d), and the normalized F-function with its derived
// constants J, theta = 64(1 + 4J/Delta)^2 and x_* = 1/(theta (2 + ||F||)).
// H^(0) = Delta sum_i (1 - P_{0,i}) is implied by anc_sites/local_ground.
class SWContext {
  public:
    SWContext(Lattice lattice, std::vector<int> anc_sites, double delta,
              std::vector<LocalHamiltonian> ladder, FFunction f_unnormalized,
              std::vector<CMatrix> local_ground = {});

    const Lattice& lattice() const { return lattice_; }
    const std::vector<int>& anc_sites() const { return anc_; }
    const std::vector<int>& eff_sites() const { return eff_; }
    double delta() const { return delta_; }
    int degree() const { return int(ladder_.size()); }
    const std::vector<LocalHamiltonian>& ladder() const { return ladder_; }
    const LocalHamiltonian& h_alpha(int alpha) const { return ladder_[std::size_t(alpha - 1)]; }
    const FFunction& f() const { return f_; }

    bool is_ancilla(int site) const;
    // Rank-1 local ground projector of ancilla `site`.
    const CMatrix& ground_projector(int site) const;
    // Ground vector |0_i> of ancilla `site` (eigenvector of the projector).
    const std::vector<cplx>& ground_vector(int site) const;

    double j_const() const { return j_const_; }
    double theta() const { return theta_; }
    double x_star() const { return x_star_; }
    double f_norm_const() const { return f_norm_const_; }

    // Dense H^(0) on the full lattice.
    CMatrix h0_dense() const;
    // Dense H(x) = H^(0) + sum_alpha x^alpha H^(alpha).
    CMatrix h_dense(double x) const;
    // Full ancilla ground projector P_0 (identity on effective sites).
    CMatrix p0_dense() const;

    // Effective-site sublattice (metric restricted) and the map from global
    // site id to its index there.
    const Lattice& eff_lattice() const { return eff_lattice_; }
    int eff_index(int global_site) const;

    // Working scale for numerical experiments. theta's worst-case constants
    // put x_* itself below double-precision resolution of the x^d-scaled
    // effective physics, so numerical anchors use half the empirical
    // analyticity radius Delta/(2W) instead, with W the largest ladder
    // operator norm: x_ref = min(Delta/(4W), 0.1). Recorded alongside x_*.
    double x_ref() const { return x_ref_; }

  private:
    Lattice lattice_;
    std::vector<int> anc_;
    std::vector<int> eff_;
    double delta_ = 1.0;
    std::vector<LocalHamiltonian> ladder_;
    FFunction f_;
    std::vector<CMatrix> ground_proj_;
    std::vector<std::vector<cplx>> ground_vec_;
    double j_const_ = 0.0, theta_ = 0.0, x_star_ = 0.0, f_norm_const_ = 0.0, x_ref_ = 0.0;
    Lattice eff_lattice_;
    std::vector<int> eff_index_;
};

// The expansion through order q_max. T^(q) is anti-Hermitian and stored as
// the Hermitian matrix S^(q) = -i T^(q).
struct SWSeries {
    int q_max = 0;
    std::vector<LocalHamiltonian> v;       // v[q-1] = V^(q)
    std::vector<LocalHamiltonian> t_herm;  // t_herm[q-1] = -i T^(q)
    std::vector<double> v_fnorm, t_fnorm;
    std::vector<double> v_bound, t_bound;  // Delta theta^q/16, theta^q/16
    bool bounds_ok = true;
    double max_hermiticity_defect = 0.0;
    double max_blockdiag_defect = 0.0;  // per-term offdiag of V + [T, H0]
    int max_support_seen = 0;
    double pruned_mass = 0.0;

    // Empirical growth rate: max_q (16 ||V^(q)||_F / Delta)^(1/q).
    double empirical_theta = 0.0;
};

// P_A and Q_A = 1 - P_A on the local space of the (sorted) support a.
std::pair<CMatrix, CMatrix> projectors(const SWContext& ctx, const std::vector<int>& a);

// Closed-form L_A: Delta G_A Q_A X P_A - P_A X Q_A Delta G_A with G_A the
// pseudo-inverse of H^(0)|_A on its excited space. Asserts the three defining
// properties to 1e-10 on every call.
CMatrix l_super(const SWContext& ctx, const std::vector<int>& a, const CMatrix& x);

SWSeries sw_expand(const SWContext& ctx, int q_max, std::size_t term_cap = 1'000'000);

// || P0 e^{T(x)} H(x) e^{-T(x)} (1 - P0) ||_op with the unrescaled H(x).
double block_residual(const SWContext& ctx, const SWSeries& series, double x);

// Operator norm of the P0-block of V^(q) (acting on the effective factors).
double p0_block_norm(const SWContext& ctx, const LocalHamiltonian& v_q);

// H_eff(x) = sum_{q=0}^{q_max-d} x^q H_eff^(q) on the effective sublattice;
// the coefficients come from sandwiching V^(q+d) with the ancilla ground
// states. Throws NotAGadget when P0 V^(q) P0 fails to vanish for q < d.
LocalHamiltonian effective_hamiltonian(const SWContext& ctx, const SWSeries& series, double x);
// Just the coefficient list H_eff^(0..q_max-d).
std::vector<LocalHamiltonian> effective_coefficients(const SWContext& ctx, const SWSeries& series);

// Dense T(x) = i sum_q x^q S^(q).
CMatrix t_dense(const SWContext& ctx, const SWSeries& series, double x);

struct SubspaceReport {
    double x = 0.0, beta = 0.0;
    // Gibbs-state comparison against the rotated effective Gibbs state.
    double gibbs_distance = 0.0;
    double gibbs_bound = 0.0;       // 2 (m-1) |anc| e^{-beta Delta x^-d / 2}
    double gibbs_allowance = 0.0;   // measured series-truncation contribution
    bool gibbs_ok = false;
    // Ground-projector identity.
    double ground_distance = 0.0;
    double ground_tol = 0.0;  // 10 block_residual / gap
    bool ground_ok = false;
    // Ancilla-ground weight of the Gibbs state of H^(0) + V(x) at beta x^-d.
    double p0_weight = 0.0;
    double p0_lower_bound = 0.0;
    bool p0_ok = false;
    double block_residual_value = 0.0;
};

SubspaceReport subspace_checks(const SWContext& ctx, const SWSeries& series, double x,
                               double beta);

// Gibbs state of H'(x) = x^-d H(x), computed from the spectrum of the
// unrescaled H(x) so the x^-d scale never enters the eigensolver.
CMatrix simulator_gibbs_state(const SWContext& ctx, double x, double beta);

// Ground state of H'(x) (energies and gap on the H'(x) scale). The
// degeneracy guard is absolute at 1e-13 on the unrescaled spectrum.
GroundState simulator_ground_state(const SWContext& ctx, double x);

}  // namespace gadsim
