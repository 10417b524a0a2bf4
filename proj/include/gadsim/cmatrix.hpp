#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "gadsim/errors.hpp"

namespace gadsim {

using cplx = std::complex<double>;

// Dense complex matrix, row-major storage. Value type: copyable, movable,
// no shared state.
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

    static CMatrix identity(std::size_t n);
    static CMatrix diag(const std::vector<cplx>& d);
    static CMatrix diag_real(const std::vector<double>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(cplx s);

    CMatrix dagger() const;
    CMatrix conjugate() const;
    CMatrix transpose() const;

    // max_ij |M_ij - conj(M_ji)|
    double hermiticity_defect() const;
    bool is_hermitian(double tol) const;
    // max_ij |M_ij + conj(M_ji)|
    double antihermiticity_defect() const;

    double max_abs() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(double s, CMatrix a);

cplx trace(const CMatrix& a);
double fro_norm(const CMatrix& a);

// Largest singular value by power iteration on A^dag A (relative tol 1e-12).
double op_norm(const CMatrix& a);

// All singular values, descending (through the eigenvalues of A^dag A).
std::vector<double> singular_values(const CMatrix& a);

// Sum of singular values.
double trace_norm(const CMatrix& a);

CMatrix kron(const CMatrix& a, const CMatrix& b);

CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix anticommutator(const CMatrix& a, const CMatrix& b);

// Matrix-vector product.
std::vector<cplx> matvec(const CMatrix& a, const std::vector<cplx>& v);

}  // namespace gadsim
