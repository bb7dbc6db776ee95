#ifndef MINIANT_TESTS_SUPPORT_CHECKS_HPP
#define MINIANT_TESTS_SUPPORT_CHECKS_HPP

#include <Eigen/Dense>
#include <cmath>

namespace miniant::testsupport {

inline bool close_abs(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool close_rel(double a, double b, double tol) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= tol * std::max(scale, 1e-300);
}

// Bit-exact coefficient equality.
template <typename DerivedA, typename DerivedB>
bool same(const Eigen::DenseBase<DerivedA>& a, const Eigen::DenseBase<DerivedB>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return (a.derived().array() == b.derived().array()).all();
}

template <typename DerivedA, typename DerivedB>
double max_abs_diff(const Eigen::DenseBase<DerivedA>& a, const Eigen::DenseBase<DerivedB>& b) {
    return (a.derived().array() - b.derived().array()).abs().maxCoeff();
}

} // namespace miniant::testsupport

#endif
