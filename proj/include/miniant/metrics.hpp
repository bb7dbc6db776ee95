#ifndef MINIANT_METRICS_HPP
#define MINIANT_METRICS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace miniant {

// The six-number regression panel reported per model and data split.
// Units: mae/rmse in GHz, mse in GHz^2, r2 dimensionless, rmspe/mape in percent.
struct MetricPanel {
    double mae = 0.0;
    double mse = 0.0;
    double rmse = 0.0;
    double r2 = 0.0;
    double rmspe = 0.0;
    double mape = 0.0;
};

template <typename DerivedA, typename DerivedP>
MetricPanel metric_panel(const Eigen::DenseBase<DerivedA>& actual_expr,
                         const Eigen::DenseBase<DerivedP>& predicted_expr) {
    const Eigen::ArrayXd actual = actual_expr.derived().template cast<double>().array();
    const Eigen::ArrayXd predicted = predicted_expr.derived().template cast<double>().array();
    const Eigen::Index n = actual.size();
    if (n == 0)
        throw std::invalid_argument("metric_panel: empty input");
    if (predicted.size() != n)
        throw std::invalid_argument("metric_panel: length mismatch (" + std::to_string(n) +
                                    " vs " + std::to_string(predicted.size()) + ")");
    for (Eigen::Index i = 0; i < n; ++i)
        if (actual[i] == 0.0)
            throw std::domain_error(
                "metric_panel: actual value is zero at index " + std::to_string(i) +
                "; percentage metrics undefined");

    const Eigen::ArrayXd err = predicted - actual;
    const Eigen::ArrayXd rel = err / actual;

    MetricPanel p;
    p.mae = err.abs().mean();
    p.mse = err.square().mean();
    p.rmse = std::sqrt(p.mse);
    const double ss_tot = (actual - actual.mean()).square().sum();
    if (ss_tot == 0.0)
        throw std::domain_error("metric_panel: constant actual values, r2 undefined");
    p.r2 = 1.0 - err.square().sum() / ss_tot;
    p.rmspe = 100.0 * std::sqrt(rel.square().mean());
    p.mape = 100.0 * rel.abs().mean();
    return p;
}

// Per-model report over the three fixed splits.
struct ModelReport {
    std::string model;
    MetricPanel train;
    MetricPanel test;
    MetricPanel validation;
};

inline constexpr const char* kSplitNames[3] = {"train", "test", "validation"};

// CSV with header `model,split,mae,mse,rmse,r2,rmspe,mape`, values at 4 decimals.
std::string render_report_csv(const std::vector<ModelReport>& reports);
std::vector<ModelReport> parse_report_csv(const std::string& csv);

// Aligned per-split tables for terminal output.
std::string render_report_table(const std::vector<ModelReport>& reports);

} // namespace miniant

#endif
