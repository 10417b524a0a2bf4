#pragma once

#include "gadsim/cmatrix.hpp"

namespace gadsim {

// Matrix exponential e^A. Hermitian and anti-Hermitian inputs are detected
// and routed through the eigensolver; everything else goes through scaling
// and squaring with a truncated series at ||A/2^s||_op <= 0.5.
CMatrix mat_exp(const CMatrix& a);

}  // namespace gadsim
