#pragma once

#include <vector>

#include "gadsim/cmatrix.hpp"

namespace gadsim {

// Eigendecomposition of a Hermitian matrix: H = U diag(values) U^dag,
// values ascending, U unitary with eigenvectors in columns.
struct EigDecomp {
    std::vector<double> values;
    CMatrix vectors;

    // || U diag(v) U^dag - H ||_op
    double reconstruction_residual(const CMatrix& h) const;
    // || U^dag U - I ||_op
    double unitarity_residual() const;
};

// Householder tridiagonalization of the Hermitian input, a diagonal phase
// sweep to make the subdiagonal real, then implicit-shift QL with a sweep
// budget of 64 per eigenvalue. Throws NonHermitian / NoConvergence.
EigDecomp herm_eig(const CMatrix& h);

// Apply f to the spectrum: U diag(f(lambda)) U^dag.
CMatrix spectral_function(const EigDecomp& ed, const std::vector<cplx>& f_of_lambda);

}  // namespace gadsim
