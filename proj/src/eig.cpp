#include "gadsim/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gadsim {

namespace {

constexpr int kSweepBudget = 64;  // QL sweeps allowed per eigenvalue

// In-place complex Householder reduction to Hermitian tridiagonal form.
// On exit d holds the real diagonal, e the real nonnegative subdiagonal
// (e[i] couples i and i+1), and q the accumulated unitary with
// q^dag a q = tridiag(d, e).
void tridiagonalize(CMatrix a, std::vector<double>& d, std::vector<double>& e, CMatrix& q) {
    const std::size_t n = a.rows();
    q = CMatrix::identity(n);
    std::vector<cplx> v(n), p(n), w(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        // Column below the diagonal.
        double xnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm <= std::numeric_limits<double>::min()) continue;

        const cplx x0 = a(k + 1, k);
        const double ax0 = std::abs(x0);
        const cplx phase = (ax0 > 0.0) ? x0 / ax0 : cplx(1.0, 0.0);
        const cplx alpha = -phase * xnorm;

        // v = x - alpha e1; ||v||^2 = 2 v^dag x, beta = 2/||v||^2.
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 <= std::numeric_limits<double>::min()) continue;
        const double beta = 2.0 / vnorm2;

        // p = beta * A22 v over the trailing block.
        for (std::size_t i = k + 1; i < n; ++i) {
            cplx acc = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) acc += a(i, j) * v[j];
            p[i] = beta * acc;
        }
        // w = p - (beta/2) (p^dag v) v
        cplx pv = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) pv += std::conj(p[i]) * v[i];
        const cplx corr = 0.5 * beta * pv;
        for (std::size_t i = k + 1; i < n; ++i) w[i] = p[i] - corr * v[i];

        // A22 <- A22 - v w^dag - w v^dag
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) -= v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]);

        a(k + 1, k) = alpha;
        a(k, k + 1) = std::conj(alpha);
        for (std::size_t i = k + 2; i < n; ++i) {
            a(i, k) = 0.0;
            a(k, i) = 0.0;
        }

        // Q <- Q (I - beta v v^dag), acting on columns k+1..n-1.
        for (std::size_t r = 0; r < n; ++r) {
            cplx qv = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) qv += q(r, j) * v[j];
            qv *= beta;
            for (std::size_t j = k + 1; j < n; ++j) q(r, j) -= qv * std::conj(v[j]);
        }
    }

    // Phase sweep: make the subdiagonal real nonnegative.
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    std::vector<cplx> ph(n, cplx(1.0, 0.0));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const cplx sub = a(i + 1, i);
        const double mag = std::abs(sub);
        ph[i + 1] = (mag > 0.0) ? ph[i] * (sub / mag) : ph[i];
        e[i] = mag;
    }
    for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) q(r, c) *= ph[c];
}

// Implicit-shift QL on the real tridiagonal (d, e), rotations accumulated
// into the complex columns of q. Classic tql2 with a hard sweep budget.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, CMatrix& q) {
    const std::size_t n = d.size();
    if (n == 0) return;
    e.resize(n, 0.0);
    e[n - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == kSweepBudget)
                    throw NoConvergence("herm_eig: QL sweep budget exhausted");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (std::size_t k = 0; k < n; ++k) {
                        const cplx fk = q(k, i + 1);
                        q(k, i + 1) = s * q(k, i) + c * fk;
                        q(k, i) = c * q(k, i) - s * fk;
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

double EigDecomp::reconstruction_residual(const CMatrix& h) const {
    CMatrix lam = CMatrix::diag_real(values);
    return op_norm(vectors * lam * vectors.dagger() - h);
}

double EigDecomp::unitarity_residual() const {
    return op_norm(vectors.dagger() * vectors - CMatrix::identity(vectors.rows()));
}

EigDecomp herm_eig(const CMatrix& h) {
    if (h.rows() != h.cols()) throw DimensionMismatch("herm_eig: non-square input");
    const double scale = h.max_abs();
    if (h.hermiticity_defect() > 1e-10 * (1.0 + scale))
        throw NonHermitian("herm_eig: input fails Hermiticity check");

    // Symmetrize away roundoff-level defects before reducing.
    const std::size_t n = h.rows();
    CMatrix hs(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) hs(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));

    EigDecomp ed;
    std::vector<double> e;
    tridiagonalize(std::move(hs), ed.values, e, ed.vectors);
    ql_implicit(ed.values, e, ed.vectors);

    // Ascending order.
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return ed.values[a] < ed.values[b]; });
    std::vector<double> sorted(n);
    CMatrix sorted_vecs(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        sorted[c] = ed.values[idx[c]];
        for (std::size_t r = 0; r < n; ++r) sorted_vecs(r, c) = ed.vectors(r, idx[c]);
    }
    ed.values = std::move(sorted);
    ed.vectors = std::move(sorted_vecs);
    return ed;
}

CMatrix spectral_function(const EigDecomp& ed, const std::vector<cplx>& f_of_lambda) {
    if (f_of_lambda.size() != ed.values.size())
        throw DimensionMismatch("spectral_function: length mismatch");
    const std::size_t n = ed.values.size();
    // U diag(f) U^dag without forming the diagonal matrix.
    CMatrix scaled = ed.vectors;
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= f_of_lambda[c];
    return scaled * ed.vectors.dagger();
}

}  // namespace gadsim
