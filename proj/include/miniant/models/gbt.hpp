#ifndef MINIANT_MODELS_GBT_HPP
#define MINIANT_MODELS_GBT_HPP

#include <Eigen/Dense>
#include <vector>

#include "miniant/models/scaler.hpp"
#include "miniant/models/tree.hpp"

namespace miniant {

struct GbtConfig {
    int n_rounds = 300;
    double learning_rate = 0.1;
    int max_depth = 3;
    int min_leaf = 1;
};

// Stagewise squared-error boosting: start from the target mean, then add
// learning_rate times a depth-limited tree fitted to the current residuals.
class GradientBoostedTrees {
  public:
    void fit(const Eigen::MatrixX2d& features_mm, const Eigen::VectorXd& targets_ghz,
             const GbtConfig& config);

    Eigen::VectorXd predict(const Eigen::MatrixX2d& features_mm) const;
    double predict_one(const Eigen::Vector2d& feature_mm) const;

    bool fitted() const { return fitted_; }
    double base_value() const { return base_value_; }
    const std::vector<RegressionTree>& trees() const { return trees_; }
    const FeatureScaler& scaler() const { return scaler_; }
    const GbtConfig& config() const { return config_; }

    // In-sample MSE after each boosting round; non-increasing by construction.
    const std::vector<double>& train_mse_by_round() const { return train_mse_by_round_; }

    static GradientBoostedTrees from_parts(GbtConfig config, FeatureScaler scaler,
                                           double base_value,
                                           std::vector<RegressionTree> trees);

  private:
    GbtConfig config_;
    FeatureScaler scaler_;
    double base_value_ = 0.0;
    std::vector<RegressionTree> trees_;
    std::vector<double> train_mse_by_round_;
    bool fitted_ = false;
};

} // namespace miniant

#endif
