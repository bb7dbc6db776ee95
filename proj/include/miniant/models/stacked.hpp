#ifndef MINIANT_MODELS_STACKED_HPP
#define MINIANT_MODELS_STACKED_HPP

#include <Eigen/Dense>
#include <cstdint>

#include "miniant/models/forest.hpp"
#include "miniant/models/gbt.hpp"
#include "miniant/models/svr.hpp"

namespace miniant {

// `paper` trains the meta-learner on the base models' own training
// predictions, which deliberately overfits; `out_of_fold` is the k-fold
// correction.
enum class StackMode { paper, out_of_fold };

struct StackedConfig {
    StackMode mode = StackMode::paper;
    int folds = 5;
    std::uint64_t seed = 0; // drives the fold assignment only
    ForestConfig forest;
    SvrConfig svr;
    GbtConfig gbt;
};

// Affine least-squares combination over the base prediction columns.
// A rank-deficient meta system (collinear bases) falls back to equal weights;
// the flag reports that. Returns (intercept, w_forest, w_svr, w_gbt).
Eigen::Vector4d fit_affine_meta(const Eigen::MatrixXd& base_predictions,
                                const Eigen::VectorXd& targets, bool* used_fallback = nullptr);

class StackedModel {
  public:
    void fit(const Eigen::MatrixX2d& features_mm, const Eigen::VectorXd& targets_ghz,
             const StackedConfig& config);

    Eigen::VectorXd predict(const Eigen::MatrixX2d& features_mm) const;
    double predict_one(const Eigen::Vector2d& feature_mm) const;

    bool fitted() const { return fitted_; }
    const RandomForest& forest() const { return forest_; }
    const SvrModel& svr() const { return svr_; }
    const GradientBoostedTrees& gbt() const { return gbt_; }
    Eigen::Vector4d weights() const { return weights_; }
    bool used_fallback() const { return used_fallback_; }
    StackMode mode() const { return mode_; }

    static StackedModel from_parts(StackMode mode, Eigen::Vector4d weights, bool used_fallback,
                                   RandomForest forest, SvrModel svr, GradientBoostedTrees gbt);

  private:
    Eigen::MatrixXd base_predictions(const Eigen::MatrixX2d& features_mm) const;

    StackMode mode_ = StackMode::paper;
    RandomForest forest_;
    SvrModel svr_;
    GradientBoostedTrees gbt_;
    Eigen::Vector4d weights_{0.0, 0.0, 0.0, 0.0};
    bool used_fallback_ = false;
    bool fitted_ = false;
};

} // namespace miniant

#endif
