#include "miniant/models/gbt.hpp"

#include <stdexcept>

namespace miniant {

void GradientBoostedTrees::fit(const Eigen::MatrixX2d& features_mm,
                               const Eigen::VectorXd& targets_ghz, const GbtConfig& config) {
    if (config.n_rounds < 1) throw std::invalid_argument("gbt: n_rounds must be >= 1");
    if (!(config.learning_rate >= 0.0))
        throw std::invalid_argument("gbt: learning_rate must be >= 0");
    if (features_mm.rows() == 0) throw std::invalid_argument("gbt: empty training data");
    if (features_mm.rows() != targets_ghz.size())
        throw std::invalid_argument("gbt: features/targets size mismatch");

    config_ = config;
    scaler_ = FeatureScaler::fit(features_mm);
    const Eigen::MatrixX2d scaled = scaler_.transform(features_mm);

    base_value_ = targets_ghz.mean();
    Eigen::VectorXd residual = targets_ghz.array() - base_value_;

    const TreeConfig tree_config{config.max_depth, config.min_leaf, 2};
    trees_.clear();
    trees_.reserve(static_cast<std::size_t>(config.n_rounds));
    train_mse_by_round_.clear();
    for (int round = 0; round < config.n_rounds; ++round) {
        RegressionTree tree;
        tree.fit(scaled, residual, tree_config);
        residual -= config.learning_rate * tree.predict(scaled);
        trees_.push_back(std::move(tree));
        train_mse_by_round_.push_back(residual.squaredNorm() /
                                      static_cast<double>(residual.size()));
    }
    fitted_ = true;
}

Eigen::VectorXd GradientBoostedTrees::predict(const Eigen::MatrixX2d& features_mm) const {
    if (!fitted_) throw std::logic_error("gbt: not fitted");
    const Eigen::MatrixX2d scaled = scaler_.transform(features_mm);
    Eigen::VectorXd out = Eigen::VectorXd::Constant(scaled.rows(), base_value_);
    for (const auto& tree : trees_) out += config_.learning_rate * tree.predict(scaled);
    return out;
}

double GradientBoostedTrees::predict_one(const Eigen::Vector2d& feature_mm) const {
    Eigen::MatrixX2d m(1, 2);
    m.row(0) = feature_mm.transpose();
    return predict(m)[0];
}

GradientBoostedTrees GradientBoostedTrees::from_parts(GbtConfig config, FeatureScaler scaler,
                                                      double base_value,
                                                      std::vector<RegressionTree> trees) {
    if (!scaler.fitted()) throw std::invalid_argument("gbt: incomplete model parts");
    GradientBoostedTrees g;
    g.config_ = config;
    g.scaler_ = scaler;
    g.base_value_ = base_value;
    g.trees_ = std::move(trees);
    g.fitted_ = true;
    return g;
}

} // namespace miniant
