#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gadsim/cmatrix.hpp"
#include "gadsim/lattice.hpp"
#include "gadsim/tensor.hpp"

namespace gadsim {

// One Hermitian interaction term with an explicit support (sorted site
// list). An empty support denotes the scalar identity component.
struct LocalTerm {
    std::vector<int> support;
    CMatrix matrix;

    double norm() const;  // operator norm, 0 for the identity component times |c|
};

// H = sum_A H_A with at most one term per distinct support, plus an explicit
// identity component so traces stay exact and f_norm can ignore it.
class LocalHamiltonian {
  public:
    LocalHamiltonian() = default;
    explicit LocalHamiltonian(Lattice lattice) : lattice_(std::move(lattice)) {}

    const Lattice& lattice() const { return lattice_; }
    const std::vector<LocalTerm>& terms() const { return terms_; }
    double identity_coefficient() const { return identity_; }
    void set_identity_coefficient(double c) { identity_ = c; }

    // Merge `matrix` into the slot for `support` (sorted ascending). A 1x1
    // matrix on an empty support goes to the identity component.
    void add_term(std::vector<int> support, const CMatrix& matrix, double herm_tol = 1e-10);
    // Same merge without the Hermiticity guard; used by the series engine
    // whose intermediate terms are anti-Hermitian.
    void add_term_unchecked(std::vector<int> support, const CMatrix& matrix);
    void add_scaled(const LocalHamiltonian& other, double factor);

    // max over terms of the per-term Hermiticity defect.
    double hermiticity_defect() const;
    double antihermiticity_defect() const;

    bool empty() const { return terms_.empty() && identity_ == 0.0; }
    std::size_t term_count() const { return terms_.size(); }

    CMatrix assemble() const;

    // Largest term operator norm (identity excluded).
    double max_term_norm() const;
    // Largest support cardinality.
    int max_support_size() const;

    LocalHamiltonian scaled(double factor) const;

  private:
    Lattice lattice_;
    std::vector<LocalTerm> terms_;
    double identity_ = 0.0;
};

// || H ||_F = sup over ordered site pairs (i,j), including i = j, of
// (1/F(dist(i,j))) * sum of operator norms of terms containing both.
double f_norm(const LocalHamiltonian& h, const FFunction& f);

struct RestrictResult {
    LocalHamiltonian restricted;
    double bound;  // |Gamma \ Gamma'| * ||H||_F * ||F||
};

// Keep terms with support inside `region`; bound the dropped part in
// operator norm.
RestrictResult restrict_to(const LocalHamiltonian& h, const std::vector<int>& region,
                           const FFunction& f);

// Term-pairwise commutator; non-overlapping pairs vanish, overlapping pairs
// land on the union support. The result is Pauli-grouped.
LocalHamiltonian lh_commutator(const LocalHamiltonian& x, const LocalHamiltonian& y,
                               double prune_threshold = 0.0);

// Regroup all terms by exact Pauli support (qubit sites only) and drop
// grouped terms with operator norm below `prune_threshold`. The total norm
// of dropped terms is reported through `dropped_mass` when given.
LocalHamiltonian canonical_grouping(const LocalHamiltonian& h, double prune_threshold = 0.0,
                                    double* dropped_mass = nullptr);

// Canonical Pauli decomposition of a dense operator on a qubit lattice.
// Reassembly agrees with m up to the dropped-coefficient threshold.
LocalHamiltonian pauli_decompose(const CMatrix& m, const Lattice& lattice,
                                 double drop_threshold_rel = 1e-14);

// Polynomial-in-x family of local terms: H(x) = sum_A sum_k x^k C_{A,k}.
class ParamFamily {
  public:
    struct PolyTerm {
        std::vector<int> support;
        std::vector<CMatrix> coeffs;  // coeffs[k] multiplies x^k
    };

    ParamFamily() = default;
    ParamFamily(Lattice lattice, double x_lo, double x_hi)
        : lattice_(std::move(lattice)), x_lo_(x_lo), x_hi_(x_hi) {}

    const Lattice& lattice() const { return lattice_; }
    const std::vector<PolyTerm>& terms() const { return terms_; }
    void add_poly_term(std::vector<int> support, std::vector<CMatrix> coeffs);

    LocalHamiltonian eval(double x) const;
    // d/dx H(x), itself a LocalHamiltonian at the given x.
    LocalHamiltonian derivative(double x) const;

    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }

  private:
    void check_domain(double x) const;

    Lattice lattice_;
    std::vector<PolyTerm> terms_;
    double x_lo_ = -1e300;
    double x_hi_ = 1e300;
};

// Family split by a region: terms supported inside region get parameter x,
// all others get y, so eval2(p, x, x) = eval(base, x) exactly.
struct PartitionedFamily {
    ParamFamily base;
    std::vector<int> region;

    LocalHamiltonian eval2(double x, double y) const;
};

}  // namespace gadsim
