#include "afdm/linalg.hpp"

#include <cmath>

namespace afdm {

CMat CMat::adjoint() const {
    CMat out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

CMat CMat::mul(const CMat& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("CMat::mul: dimension mismatch");
    CMat out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const cd a = (*this)(r, k);
            if (a == cd(0.0, 0.0)) continue;
            const cd* brow = &other.data_[k * other.cols_];
            cd* orow = &out.data_[r * other.cols_];
            for (std::size_t c = 0; c < other.cols_; ++c) {
                orow[c] += a * brow[c];
            }
        }
    }
    return out;
}

ComplexVec CMat::mul(const ComplexVec& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("CMat::mul: vector length mismatch");
    ComplexVec out(rows_, cd(0.0, 0.0));
    for (std::size_t r = 0; r < rows_; ++r) {
        const cd* row = &data_[r * cols_];
        cd acc = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) acc += row[c] * v[c];
        out[r] = acc;
    }
    return out;
}

double CMat::max_abs() const {
    double m = 0.0;
    for (const cd& z : data_) m = std::max(m, std::abs(z));
    return m;
}

ComplexVec lu_solve(CMat a, ComplexVec b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw std::invalid_argument("lu_solve: dimension mismatch");
    const double tiny = 1e-13 * std::max(a.max_abs(), 1e-300);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double pmag = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = std::abs(a(r, col));
            if (m > pmag) {
                pmag = m;
                pivot = r;
            }
        }
        if (pmag <= tiny) throw std::runtime_error("lu_solve: singular system");
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
            std::swap(b[col], b[pivot]);
        }
        const cd inv_p = 1.0 / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const cd f = a(r, col) * inv_p;
            if (f == cd(0.0, 0.0)) continue;
            a(r, col) = f;
            for (std::size_t c = col + 1; c < n; ++c) a(r, c) -= f * a(col, c);
            b[r] -= f * b[col];
        }
    }
    // back substitution
    ComplexVec x(n);
    for (std::size_t ri = n; ri-- > 0;) {
        cd acc = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) acc -= a(ri, c) * x[c];
        x[ri] = acc / a(ri, ri);
    }
    return x;
}

}  // namespace afdm
