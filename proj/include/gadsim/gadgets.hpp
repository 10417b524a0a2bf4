#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "gadsim/sw.hpp"

namespace gadsim {

// A simulator construction: SW context plus an optional claimed target on
// the effective sublattice (always recomputed by validate()).
struct GadgetSpec {
    std::shared_ptr<SWContext> ctx;
    std::optional<LocalHamiltonian> target;
};

struct ValidationReport {
    bool is_gadget = false;
    std::vector<double> low_order_block_norms;  // ||P0 V^(q) P0||, q = 1..d-1
    LocalHamiltonian h_tar_computed;            // H_eff(0) on the effective lattice
    double target_mismatch = 0.0;               // vs the claimed target, if any
    double eta = 0.0;                           // ||e^{-T(x_ref)} - 1||, x_ref = x_*/4
    SWSeries series;
};

// The 2-local degree-3 construction mediating h1 (x) h2 (x) h3 through one
// ancilla qubit, with Delta = 1 and the ladder read off the x^{alpha-3}
// grading. Sites: effective {0,1,2}, ancilla 3.
GadgetSpec three_to_two(const CMatrix& h1, const CMatrix& h2, const CMatrix& h3);

// Same construction placed on an existing lattice: three effective sites
// (ascending, all below the ancilla id) and one ancilla site.
GadgetSpec three_to_two_on(const Lattice& lattice, const std::array<int, 3>& eff, int anc,
                           const CMatrix& h1, const CMatrix& h2, const CMatrix& h3);

// Chain of n_eff effective qubits with one hub ancilla per triple; ancilla g
// gets site id n_eff + g and unit edges to its three effective sites.
Lattice chain_with_ancillas(int n_eff, const std::vector<std::array<int, 3>>& triples);

ValidationReport validate(const GadgetSpec& spec, int q_max);

// Parallel combination of gadgets living on one shared lattice with pairwise
// disjoint ancillas and equal degree d <= 3. The optional background (on the
// effective sublattice of the result) folds into H^(d).
GadgetSpec combine(const std::vector<GadgetSpec>& specs,
                   const std::optional<LocalHamiltonian>& background = std::nullopt);

// ceil((k-1)/(k'-1)): minimal degree for a k-local target with a k'-local
// simulator.
int locality_floor(int k, int k_prime);

struct SimulatorEval {
    double x = 0.0;
    CMatrix matrix;                // H'(x) = x^-d sum_alpha x^alpha H^(alpha)
    double max_interaction = 0.0;  // Delta x^-d
};

SimulatorEval simulator_eval(const GadgetSpec& spec, double x);

// Lowest 2^|eff| eigenvalues of H'(x), computed from the spectrum of the
// unrescaled H(x) so no x^-d scale enters the eigensolver.
std::vector<double> simulator_low_spectrum(const GadgetSpec& spec, double x);

}  // namespace gadsim
