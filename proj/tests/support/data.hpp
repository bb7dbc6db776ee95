#ifndef MINIANT_TESTS_SUPPORT_DATA_HPP
#define MINIANT_TESTS_SUPPORT_DATA_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "miniant/dataset.hpp"

namespace miniant::testsupport {

inline std::pair<Eigen::MatrixX2d, Eigen::VectorXd> make_xy(
    const std::vector<SampleRecord>& records) {
    Eigen::MatrixX2d x(static_cast<Eigen::Index>(records.size()), 2);
    Eigen::VectorXd y(static_cast<Eigen::Index>(records.size()));
    for (std::size_t i = 0; i < records.size(); ++i) {
        x(static_cast<Eigen::Index>(i), 0) = records[i].d_inner_mm;
        x(static_cast<Eigen::Index>(i), 1) = records[i].d_outer_mm;
        y[static_cast<Eigen::Index>(i)] = records[i].f_res_ghz;
    }
    return {std::move(x), std::move(y)};
}

} // namespace miniant::testsupport

#endif
