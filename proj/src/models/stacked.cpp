#include "miniant/models/stacked.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

#include "miniant/rng.hpp"

namespace miniant {

Eigen::Vector4d fit_affine_meta(const Eigen::MatrixXd& base_predictions,
                                const Eigen::VectorXd& targets, bool* used_fallback) {
    if (base_predictions.cols() != 3)
        throw std::invalid_argument("meta: expected 3 base prediction columns");
    if (base_predictions.rows() != targets.size())
        throw std::invalid_argument("meta: predictions/targets size mismatch");

    Eigen::MatrixXd design(base_predictions.rows(), 4);
    design.col(0).setOnes();
    design.rightCols<3>() = base_predictions;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < 4) {
        if (used_fallback) *used_fallback = true;
        return Eigen::Vector4d{0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    }
    if (used_fallback) *used_fallback = false;
    return qr.solve(targets);
}

void StackedModel::fit(const Eigen::MatrixX2d& features_mm, const Eigen::VectorXd& targets_ghz,
                       const StackedConfig& config) {
    const Eigen::Index n = features_mm.rows();
    if (n == 0) throw std::invalid_argument("stacked: empty training data");
    if (n != targets_ghz.size())
        throw std::invalid_argument("stacked: features/targets size mismatch");

    mode_ = config.mode;
    forest_.fit(features_mm, targets_ghz, config.forest);
    svr_.fit(features_mm, targets_ghz, config.svr);
    gbt_.fit(features_mm, targets_ghz, config.gbt);
    fitted_ = true;

    Eigen::MatrixXd meta_features;
    if (config.mode == StackMode::paper) {
        meta_features = base_predictions(features_mm);
    } else {
        if (config.folds < 2) throw std::invalid_argument("stacked: folds must be >= 2");
        if (n < config.folds) throw std::invalid_argument("stacked: fewer rows than folds");

        std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        Rng rng(config.seed);
        for (std::size_t i = order.size() - 1; i > 0; --i)
            std::swap(order[i], order[rng.below(i + 1)]);

        std::vector<int> fold_of(static_cast<std::size_t>(n));
        for (std::size_t k = 0; k < order.size(); ++k)
            fold_of[static_cast<std::size_t>(order[k])] = static_cast<int>(k) % config.folds;

        meta_features.resize(n, 3);
        for (int f = 0; f < config.folds; ++f) {
            std::vector<Eigen::Index> in_rows, out_rows;
            for (Eigen::Index i = 0; i < n; ++i)
                (fold_of[static_cast<std::size_t>(i)] == f ? out_rows : in_rows).push_back(i);

            Eigen::MatrixX2d x_in(static_cast<Eigen::Index>(in_rows.size()), 2);
            Eigen::VectorXd y_in(static_cast<Eigen::Index>(in_rows.size()));
            Eigen::MatrixX2d x_out(static_cast<Eigen::Index>(out_rows.size()), 2);
            for (std::size_t k = 0; k < in_rows.size(); ++k) {
                x_in.row(static_cast<Eigen::Index>(k)) = features_mm.row(in_rows[k]);
                y_in[static_cast<Eigen::Index>(k)] = targets_ghz[in_rows[k]];
            }
            for (std::size_t k = 0; k < out_rows.size(); ++k)
                x_out.row(static_cast<Eigen::Index>(k)) = features_mm.row(out_rows[k]);

            ForestConfig fold_forest = config.forest;
            fold_forest.seed = Rng::derive_seed(config.forest.seed, static_cast<std::uint64_t>(f));
            RandomForest forest_f;
            forest_f.fit(x_in, y_in, fold_forest);
            SvrModel svr_f;
            svr_f.fit(x_in, y_in, config.svr);
            GradientBoostedTrees gbt_f;
            gbt_f.fit(x_in, y_in, config.gbt);

            const Eigen::VectorXd pf = forest_f.predict(x_out);
            const Eigen::VectorXd ps = svr_f.predict(x_out);
            const Eigen::VectorXd pg = gbt_f.predict(x_out);
            for (std::size_t k = 0; k < out_rows.size(); ++k) {
                meta_features(out_rows[k], 0) = pf[static_cast<Eigen::Index>(k)];
                meta_features(out_rows[k], 1) = ps[static_cast<Eigen::Index>(k)];
                meta_features(out_rows[k], 2) = pg[static_cast<Eigen::Index>(k)];
            }
        }
    }

    weights_ = fit_affine_meta(meta_features, targets_ghz, &used_fallback_);
}

Eigen::MatrixXd StackedModel::base_predictions(const Eigen::MatrixX2d& features_mm) const {
    Eigen::MatrixXd p(features_mm.rows(), 3);
    p.col(0) = forest_.predict(features_mm);
    p.col(1) = svr_.predict(features_mm);
    p.col(2) = gbt_.predict(features_mm);
    return p;
}

Eigen::VectorXd StackedModel::predict(const Eigen::MatrixX2d& features_mm) const {
    if (!fitted_) throw std::logic_error("stacked: not fitted");
    const Eigen::MatrixXd p = base_predictions(features_mm);
    return (p * weights_.tail<3>()).array() + weights_[0];
}

double StackedModel::predict_one(const Eigen::Vector2d& feature_mm) const {
    Eigen::MatrixX2d m(1, 2);
    m.row(0) = feature_mm.transpose();
    return predict(m)[0];
}

StackedModel StackedModel::from_parts(StackMode mode, Eigen::Vector4d weights, bool used_fallback,
                                      RandomForest forest, SvrModel svr,
                                      GradientBoostedTrees gbt) {
    StackedModel m;
    m.mode_ = mode;
    m.weights_ = weights;
    m.used_fallback_ = used_fallback;
    m.forest_ = std::move(forest);
    m.svr_ = std::move(svr);
    m.gbt_ = std::move(gbt);
    m.fitted_ = true;
    return m;
}

} // namespace miniant
