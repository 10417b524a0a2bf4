#include "gadsim/expm.hpp"

#include <cmath>

#include "gadsim/eig.hpp"

namespace gadsim {

namespace {

CMatrix expm_series_scaled(const CMatrix& a) {
    const std::size_t n = a.rows();
    const double norm = op_norm(a);
    int s = 0;
    if (norm > 0.5) s = int(std::ceil(std::log2(norm / 0.5)));
    const double scale = std::ldexp(1.0, -s);

    CMatrix b = scale * a;
    CMatrix result = CMatrix::identity(n);
    CMatrix term = CMatrix::identity(n);
    for (int k = 1; k <= 40; ++k) {
        term = term * b;
        term *= cplx(1.0 / double(k), 0.0);
        result += term;
        if (term.max_abs() < 1e-18) break;
    }
    for (int i = 0; i < s; ++i) result = result * result;
    return result;
}

}  // namespace

CMatrix mat_exp(const CMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("mat_exp: non-square input");
    const std::size_t n = a.rows();
    if (n == 0) return a;
    const double scale = a.max_abs();
    const double tol = 1e-12 * (1.0 + scale);

    if (a.hermiticity_defect() <= tol) {
        EigDecomp ed = herm_eig(a);
        std::vector<cplx> f(n);
        for (std::size_t i = 0; i < n; ++i) f[i] = std::exp(ed.values[i]);
        return spectral_function(ed, f);
    }
    if (a.antihermiticity_defect() <= tol) {
        // a = i h with h Hermitian: unitary exponential through the spectrum.
        CMatrix h = cplx(0.0, -1.0) * a;
        EigDecomp ed = herm_eig(h);
        std::vector<cplx> f(n);
        for (std::size_t i = 0; i < n; ++i)
            f[i] = std::exp(cplx(0.0, ed.values[i]));
        return spectral_function(ed, f);
    }
    return expm_series_scaled(a);
}

}  // namespace gadsim
