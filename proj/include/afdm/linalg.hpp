// linalg.hpp - minimal dense complex matrix (desk-scale N <= 256)

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "afdm/complex_vec.hpp"

namespace afdm {

/// Row-major dense complex matrix.
class CMat {
public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, cd(0.0, 0.0)) {}

    static CMat identity(std::size_t n) {
        CMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cd& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cd& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<cd>& data() const { return data_; }
    std::vector<cd>& data() { return data_; }

    CMat adjoint() const;
    CMat mul(const CMat& other) const;
    ComplexVec mul(const ComplexVec& v) const;

    double max_abs() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cd> data_;
};

/// Solve A x = b by partial-pivot LU. Throws std::runtime_error on a
/// numerically singular system.
ComplexVec lu_solve(CMat a, ComplexVec b);

}  // namespace afdm
