#pragma once

#include <complex>
#include <vector>

namespace algpaths {

using cplx = std::complex<double>;

/**
 * Dense complex matrix, row-major storage. The one concrete algebra element
 * type of the library; everything desk-scale, no sparsity.
 */
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static ComplexMatrix identity(int n);
    static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }
    static ComplexMatrix diagonal(const std::vector<cplx>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_ && rows_ > 0; }
    bool all_finite() const;

    cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    ComplexMatrix adjoint() const;           // conjugate transpose
    ComplexMatrix transpose() const;
    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;                  // ||.||_max, largest entry modulus

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator-(const ComplexMatrix& a);

    bool same_shape(const ComplexMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

// a - z*I and z*I - a come up constantly in resolvent work.
ComplexMatrix shift(const ComplexMatrix& a, cplx z);          // a - z*I
ComplexMatrix shift_from(cplx z, const ComplexMatrix& a);     // z*I - a

} // namespace algpaths
