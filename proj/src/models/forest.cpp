#include "miniant/models/forest.hpp"

#include <numeric>
#include <stdexcept>

namespace miniant {

void RandomForest::fit(const Eigen::MatrixX2d& features_mm, const Eigen::VectorXd& targets_ghz,
                       const ForestConfig& config) {
    if (config.n_trees < 1) throw std::invalid_argument("forest: n_trees must be >= 1");
    if (features_mm.rows() == 0) throw std::invalid_argument("forest: empty training data");
    if (features_mm.rows() != targets_ghz.size())
        throw std::invalid_argument("forest: features/targets size mismatch");

    config_ = config;
    scaler_ = FeatureScaler::fit(features_mm);
    const Eigen::MatrixX2d scaled = scaler_.transform(features_mm);
    const std::size_t n = static_cast<std::size_t>(scaled.rows());

    const TreeConfig tree_config{config.max_depth, config.min_leaf, config.mtry};
    trees_.assign(static_cast<std::size_t>(config.n_trees), RegressionTree{});
    std::vector<Eigen::Index> rows(n);
    for (std::size_t t = 0; t < trees_.size(); ++t) {
        Rng rng = Rng::substream(config.seed, t);
        if (config.bootstrap) {
            for (std::size_t k = 0; k < n; ++k)
                rows[k] = static_cast<Eigen::Index>(rng.below(n));
        } else {
            std::iota(rows.begin(), rows.end(), Eigen::Index{0});
        }
        trees_[t].fit_subset(scaled, targets_ghz, rows, tree_config, &rng);
    }
}

Eigen::VectorXd RandomForest::predict(const Eigen::MatrixX2d& features_mm) const {
    if (!fitted()) throw std::logic_error("forest: not fitted");
    const Eigen::MatrixX2d scaled = scaler_.transform(features_mm);
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(scaled.rows());
    for (const auto& tree : trees_) sum += tree.predict(scaled);
    return sum / static_cast<double>(trees_.size());
}

double RandomForest::predict_one(const Eigen::Vector2d& feature_mm) const {
    Eigen::MatrixX2d m(1, 2);
    m.row(0) = feature_mm.transpose();
    return predict(m)[0];
}

RandomForest RandomForest::from_parts(ForestConfig config, FeatureScaler scaler,
                                      std::vector<RegressionTree> trees) {
    if (trees.empty() || !scaler.fitted())
        throw std::invalid_argument("forest: incomplete model parts");
    RandomForest f;
    f.config_ = config;
    f.scaler_ = scaler;
    f.trees_ = std::move(trees);
    return f;
}

} // namespace miniant
