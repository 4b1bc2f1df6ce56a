#include "algpaths/complex_matrix.hpp"

#include <cmath>

namespace algpaths {

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& d) {
    ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

bool ComplexMatrix::all_finite() const {
    for (const cplx& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
    return m;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double s = 0.0;
    for (const cplx& v : a_) s = std::max(s, std::abs(v));
    return s;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (cplx& v : a_) v *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows_, b.cols_);
    for (int r = 0; r < a.rows_; ++r) {
        for (int k = 0; k < a.cols_; ++k) {
            const cplx ark = a(r, k);
            if (ark == cplx(0.0)) continue;
            for (int c = 0; c < b.cols_; ++c) out(r, c) += ark * b(k, c);
        }
    }
    return out;
}

ComplexMatrix operator-(const ComplexMatrix& a) {
    ComplexMatrix out = a;
    return out *= cplx(-1.0);
}

ComplexMatrix shift(const ComplexMatrix& a, cplx z) {
    ComplexMatrix out = a;
    for (int i = 0; i < a.rows(); ++i) out(i, i) -= z;
    return out;
}

ComplexMatrix shift_from(cplx z, const ComplexMatrix& a) {
    ComplexMatrix out = -a;
    for (int i = 0; i < a.rows(); ++i) out(i, i) += z;
    return out;
}

} // namespace algpaths
