#ifndef MINIANT_MODELS_FOREST_HPP
#define MINIANT_MODELS_FOREST_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "miniant/models/scaler.hpp"
#include "miniant/models/tree.hpp"

namespace miniant {

struct ForestConfig {
    int n_trees = 200;
    int max_depth = 12;
    int min_leaf = 1;
    int mtry = 1;          // features tried per split
    bool bootstrap = true; // sample n rows with replacement per tree
    std::uint64_t seed = 0;
};

// Bagged regression trees; the prediction is the plain mean over trees.
// Tree t draws from substream(seed, t), so fits are reproducible and trees
// could be built concurrently without changing the result.
class RandomForest {
  public:
    void fit(const Eigen::MatrixX2d& features_mm, const Eigen::VectorXd& targets_ghz,
             const ForestConfig& config);

    Eigen::VectorXd predict(const Eigen::MatrixX2d& features_mm) const;
    double predict_one(const Eigen::Vector2d& feature_mm) const;

    bool fitted() const { return !trees_.empty(); }
    const std::vector<RegressionTree>& trees() const { return trees_; }
    const FeatureScaler& scaler() const { return scaler_; }
    const ForestConfig& config() const { return config_; }

    static RandomForest from_parts(ForestConfig config, FeatureScaler scaler,
                                   std::vector<RegressionTree> trees);

  private:
    ForestConfig config_;
    FeatureScaler scaler_;
    std::vector<RegressionTree> trees_;
};

} // namespace miniant

#endif
