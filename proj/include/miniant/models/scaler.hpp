#ifndef MINIANT_MODELS_SCALER_HPP
#define MINIANT_MODELS_SCALER_HPP

#include <Eigen/Dense>
#include <stdexcept>

namespace miniant {

// Per-feature min-max scaling to [0, 1]. The parameters are always fitted on
// the training split and carried inside the fitted model, so evaluating other
// splits can never re-derive them from leaked data.
class FeatureScaler {
  public:
    FeatureScaler() = default;

    static FeatureScaler fit(const Eigen::MatrixX2d& train_features) {
        if (train_features.rows() == 0)
            throw std::invalid_argument("scaler: cannot fit on empty features");
        FeatureScaler s;
        s.lo_ = train_features.colwise().minCoeff();
        s.hi_ = train_features.colwise().maxCoeff();
        s.fitted_ = true;
        return s;
    }

    bool fitted() const { return fitted_; }
    Eigen::Vector2d low() const { return lo_.transpose(); }
    Eigen::Vector2d high() const { return hi_.transpose(); }

    Eigen::MatrixX2d transform(const Eigen::MatrixX2d& features) const {
        require_fitted();
        Eigen::MatrixX2d out(features.rows(), 2);
        for (int c = 0; c < 2; ++c) {
            const double span = hi_[c] - lo_[c];
            if (span == 0.0)
                out.col(c).setConstant(0.5); // degenerate feature carries no signal
            else
                out.col(c) = (features.col(c).array() - lo_[c]) / span;
        }
        return out;
    }

    Eigen::Vector2d transform_row(const Eigen::Vector2d& row) const {
        Eigen::MatrixX2d m(1, 2);
        m.row(0) = row.transpose();
        return transform(m).row(0).transpose();
    }

    void set_parameters(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi) {
        lo_ = lo.transpose();
        hi_ = hi.transpose();
        fitted_ = true;
    }

  private:
    void require_fitted() const {
        if (!fitted_) throw std::logic_error("scaler: not fitted");
    }

    Eigen::RowVector2d lo_{0.0, 0.0};
    Eigen::RowVector2d hi_{0.0, 0.0};
    bool fitted_ = false;
};

} // namespace miniant

#endif
