#pragma once

#include <span>
#include <vector>

#include "cdmm/dense_matrix.hpp"

namespace cdmm::detail {

// Inverse of a small square system (row-major, k x k) via LU with partial pivoting.
// Throws IllConditionedError when cond_1 exceeds kMaxConditionNumber.
struct SmallInverse {
    int k = 0;
    std::vector<double> inverse;  // row-major
    double condition = 0.0;

    std::span<const double> row(int r) const {
        return {inverse.data() + static_cast<std::size_t>(r) * k, static_cast<std::size_t>(k)};
    }
};

SmallInverse invert_checked(std::span<const double> system, int k, const char* what);

// out_d = sum_r inverse(d, r) * rhs[r]
DenseMatrix apply_row(const SmallInverse& inv, int d, std::span<const DenseMatrix> rhs);

}  // namespace cdmm::detail
