#include "small_solve.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "cdmm/codes.hpp"
#include "cdmm/matrix_codes.hpp"

namespace cdmm::detail {

SmallInverse invert_checked(std::span<const double> system, int k, const char* what) {
    using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMat> m(system.data(), k, k);
    const Eigen::PartialPivLU<RowMat> lu(m);
    const RowMat inv = lu.inverse();

    double cond = m.cwiseAbs().colwise().sum().maxCoeff() * inv.cwiseAbs().colwise().sum().maxCoeff();
    if (!std::isfinite(cond)) cond = std::numeric_limits<double>::infinity();
    if (cond > kMaxConditionNumber) {
        throw IllConditionedError(std::string(what) + ": condition number " + std::to_string(cond) +
                                      " exceeds limit",
                                  cond);
    }
    SmallInverse out;
    out.k = k;
    out.condition = cond;
    out.inverse.assign(inv.data(), inv.data() + static_cast<std::size_t>(k) * k);
    return out;
}

DenseMatrix apply_row(const SmallInverse& inv, int d, std::span<const DenseMatrix> rhs) {
    return linear_combination(rhs, inv.row(d));
}

}  // namespace cdmm::detail
