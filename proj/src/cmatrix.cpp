#include "gadsim/cmatrix.hpp"

#include <algorithm>
#include <cmath>

#include "gadsim/eig.hpp"

namespace gadsim {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diag(const std::vector<cplx>& d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMatrix CMatrix::diag_real(const std::vector<double>& d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatch("CMatrix +=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatch("CMatrix -=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

CMatrix CMatrix::dagger() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

CMatrix CMatrix::conjugate() const {
    CMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = std::conj(data_[i]);
    return out;
}

CMatrix CMatrix::transpose() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

double CMatrix::hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

bool CMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    return hermiticity_defect() <= tol;
}

double CMatrix::antihermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) + std::conj((*this)(j, i))));
    return worst;
}

double CMatrix::max_abs() const {
    double worst = 0.0;
    for (const auto& v : data_) worst = std::max(worst, std::abs(v));
    return worst;
}

CMatrix operator+(CMatrix a, const CMatrix& b) {
    a += b;
    return a;
}

CMatrix operator-(CMatrix a, const CMatrix& b) {
    a -= b;
    return a;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("CMatrix *: inner dimensions differ");
    CMatrix out(a.rows(), b.cols());
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    // i-k-j order: streams through rows of b, vectorizes well.
    for (std::size_t i = 0; i < n; ++i) {
        cplx* out_row = &out(i, 0);
        for (std::size_t l = 0; l < k; ++l) {
            const cplx a_il = a(i, l);
            if (a_il == cplx(0.0, 0.0)) continue;
            const cplx* b_row = &b(l, 0);
            for (std::size_t j = 0; j < m; ++j) out_row[j] += a_il * b_row[j];
        }
    }
    return out;
}

CMatrix operator*(cplx s, CMatrix a) {
    a *= s;
    return a;
}

CMatrix operator*(double s, CMatrix a) {
    a *= cplx(s, 0.0);
    return a;
}

cplx trace(const CMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("trace: non-square");
    cplx t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

double fro_norm(const CMatrix& a) {
    double s = 0.0;
    for (const auto& v : a.data()) s += std::norm(v);
    return std::sqrt(s);
}

double op_norm(const CMatrix& a) {
    if (a.empty()) return 0.0;
    const std::size_t n = a.rows(), m = a.cols();
    // Power iteration on A^dag A with a deterministic start vector. Near
    // degeneracy of the top singular values can stall the iteration at a
    // stale value; that case falls back to the dense Gram spectrum.
    std::vector<cplx> v(m);
    for (std::size_t j = 0; j < m; ++j) v[j] = cplx(1.0 + 1e-3 * double(j % 7), 1e-4 * double(j % 11));
    double vnorm = 0.0;
    for (const auto& c : v) vnorm += std::norm(c);
    vnorm = std::sqrt(vnorm);
    for (auto& c : v) c /= vnorm;

    double lambda = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
        // w = A v ; u = A^dag w
        std::vector<cplx> w(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            cplx acc = 0.0;
            const cplx* row = &a(i, 0);
            for (std::size_t j = 0; j < m; ++j) acc += row[j] * v[j];
            w[i] = acc;
        }
        std::vector<cplx> u(m, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const cplx wi = std::conj(w[i]);
            const cplx* row = &a(i, 0);
            for (std::size_t j = 0; j < m; ++j) u[j] += std::conj(row[j] * wi);
        }
        double unorm = 0.0;
        for (const auto& c : u) unorm += std::norm(c);
        unorm = std::sqrt(unorm);
        if (unorm == 0.0) return 0.0;
        const double lambda_new = unorm;  // |A^dag A v| -> sigma_max^2
        // Residual-based convergence: || A^dag A v - lambda v ||.
        double resid2 = 0.0;
        for (std::size_t j = 0; j < m; ++j) resid2 += std::norm(u[j] - lambda_new * v[j]);
        for (std::size_t j = 0; j < m; ++j) v[j] = u[j] / unorm;
        lambda = lambda_new;
        if (std::sqrt(resid2) <= 1e-12 * (1.0 + lambda_new)) {
            converged = true;
            break;
        }
    }
    if (converged) return std::sqrt(lambda);

    // Exact fallback: largest eigenvalue of the Gram matrix.
    CMatrix gram = a.dagger() * a;
    for (std::size_t i = 0; i < gram.rows(); ++i)
        for (std::size_t j = i; j < gram.cols(); ++j) {
            const cplx avg = 0.5 * (gram(i, j) + std::conj(gram(j, i)));
            gram(i, j) = avg;
            gram(j, i) = std::conj(avg);
        }
    EigDecomp ed = herm_eig(gram);
    return std::sqrt(std::max(0.0, ed.values.back()));
}

std::vector<double> singular_values(const CMatrix& a) {
    if (a.empty()) return {};
    CMatrix gram = a.dagger() * a;
    // Symmetrize away roundoff before the eigensolver.
    for (std::size_t i = 0; i < gram.rows(); ++i)
        for (std::size_t j = i; j < gram.cols(); ++j) {
            const cplx avg = 0.5 * (gram(i, j) + std::conj(gram(j, i)));
            gram(i, j) = avg;
            gram(j, i) = std::conj(avg);
        }
    EigDecomp ed = herm_eig(gram);
    std::vector<double> sv(ed.values.size());
    for (std::size_t i = 0; i < sv.size(); ++i)
        sv[i] = std::sqrt(std::max(0.0, ed.values[ed.values.size() - 1 - i]));
    return sv;
}

double trace_norm(const CMatrix& a) {
    double s = 0.0;
    for (double sv : singular_values(a)) s += sv;
    return s;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const cplx aij = a(ia, ja);
            if (aij == cplx(0.0, 0.0)) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    out(ia * b.rows() + ib, ja * b.cols() + jb) = aij * b(ib, jb);
        }
    return out;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CMatrix anticommutator(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

std::vector<cplx> matvec(const CMatrix& a, const std::vector<cplx>& v) {
    if (a.cols() != v.size()) throw DimensionMismatch("matvec: shape mismatch");
    std::vector<cplx> out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx acc = 0.0;
        const cplx* row = &a(i, 0);
        for (std::size_t j = 0; j < v.size(); ++j) acc += row[j] * v[j];
        out[i] = acc;
    }
    return out;
}

}  // namespace gadsim
