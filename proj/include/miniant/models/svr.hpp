#ifndef MINIANT_MODELS_SVR_HPP
#define MINIANT_MODELS_SVR_HPP

#include <Eigen/Dense>
#include <stdexcept>

#include "miniant/models/scaler.hpp"

namespace miniant {

struct SvrConfig {
    double c = 10.0;          // box constraint on each dual coefficient
    double epsilon_ghz = 0.01; // insensitive-tube half width
    double gamma = 2.0;        // RBF bandwidth on scaled features
    double tol = 1e-3;         // KKT violation at which the solver stops
    long max_passes = 500000;  // pair updates before giving up
};

class SvrConvergenceError : public std::runtime_error {
  public:
    SvrConvergenceError(const std::string& what, double violation)
        : std::runtime_error(what), kkt_violation_(violation) {}
    double kkt_violation() const { return kkt_violation_; }

  private:
    double kkt_violation_;
};

// Epsilon-insensitive RBF support vector regression. The dual (box-constrained
// QP with one equality constraint) is solved by sequential two-coordinate
// updates on the maximal-violating pair, libsvm style.
class SvrModel {
  public:
    void fit(const Eigen::MatrixX2d& features_mm, const Eigen::VectorXd& targets_ghz,
             const SvrConfig& config);

    Eigen::VectorXd predict(const Eigen::MatrixX2d& features_mm) const;
    double predict_one(const Eigen::Vector2d& feature_mm) const;

    bool fitted() const { return fitted_; }
    double bias() const { return bias_; }
    double kkt_violation() const { return kkt_violation_; }
    // One dual coefficient per training row right after fit (support-vector
    // rows are the nonzero entries); loaded models carry only the nonzero ones.
    const Eigen::VectorXd& coefficients() const { return coefficients_; }
    const Eigen::VectorXd& support_coefficients() const { return support_coefficients_; }
    const Eigen::MatrixX2d& support_features_scaled() const { return support_features_; }
    const FeatureScaler& scaler() const { return scaler_; }
    const SvrConfig& config() const { return config_; }

    static SvrModel from_parts(SvrConfig config, FeatureScaler scaler,
                               Eigen::MatrixX2d support_features_scaled,
                               Eigen::VectorXd support_coefficients, double bias);

  private:
    SvrConfig config_;
    FeatureScaler scaler_;
    Eigen::MatrixX2d support_features_{0, 2}; // scaled rows with nonzero coefficient
    Eigen::VectorXd support_coefficients_;
    Eigen::VectorXd coefficients_;
    double bias_ = 0.0;
    double kkt_violation_ = 0.0;
    bool fitted_ = false;
};

} // namespace miniant

#endif
