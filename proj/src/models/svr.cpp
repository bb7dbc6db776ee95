#include "miniant/models/svr.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace miniant {

namespace {

Eigen::MatrixXd rbf_kernel(const Eigen::MatrixX2d& a, const Eigen::MatrixX2d& b, double gamma) {
    Eigen::MatrixXd k(a.rows(), b.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < b.rows(); ++j)
            k(i, j) = std::exp(-gamma * (a.row(i) - b.row(j)).squaredNorm());
    return k;
}

} // namespace

void SvrModel::fit(const Eigen::MatrixX2d& features_mm, const Eigen::VectorXd& targets_ghz,
                   const SvrConfig& config) {
    if (!(config.c > 0.0)) throw std::invalid_argument("svr: C must be > 0");
    if (!(config.gamma > 0.0)) throw std::invalid_argument("svr: gamma must be > 0");
    if (!(config.epsilon_ghz >= 0.0)) throw std::invalid_argument("svr: epsilon must be >= 0");
    if (features_mm.rows() == 0) throw std::invalid_argument("svr: empty training data");
    if (features_mm.rows() != targets_ghz.size())
        throw std::invalid_argument("svr: features/targets size mismatch");

    config_ = config;
    scaler_ = FeatureScaler::fit(features_mm);
    const Eigen::MatrixX2d x = scaler_.transform(features_mm);
    const Eigen::Index n = x.rows();
    const Eigen::MatrixXd kernel = rbf_kernel(x, x, config.gamma);

    // Dual variables z = (alpha, alpha*): beta_i = z_i - z_{n+i}. Constraint
    // sum(beta) = 0 is preserved by every pair update. For variable t the
    // constraint sign is sgn(t) = +1 for alpha, -1 for alpha*, the gradient is
    // sgn * (Kbeta - y)_i + epsilon, and score(t) = -sgn * gradient is the
    // common axis the violating pair is selected on.
    const double c_box = config.c;
    const double eps = config.epsilon_ghz;
    Eigen::VectorXd z = Eigen::VectorXd::Zero(2 * n);
    Eigen::VectorXd kbeta = Eigen::VectorXd::Zero(n);

    const auto score = [&](Eigen::Index t) {
        const Eigen::Index i = t % n;
        const double sgn = t < n ? 1.0 : -1.0;
        const double grad = sgn * (kbeta[i] - targets_ghz[i]) + eps;
        return -sgn * grad;
    };
    const auto movable_up = [&](Eigen::Index t) {
        return t < n ? z[t] < c_box : z[t] > 0.0;
    };
    const auto movable_down = [&](Eigen::Index t) {
        return t < n ? z[t] > 0.0 : z[t] < c_box;
    };

    double violation = std::numeric_limits<double>::infinity();
    long updates = 0;
    while (true) {
        Eigen::Index p = -1, q = -1;
        double m_up = -std::numeric_limits<double>::infinity();
        double m_low = std::numeric_limits<double>::infinity();
        for (Eigen::Index t = 0; t < 2 * n; ++t) {
            const double s = score(t);
            if (movable_up(t) && s > m_up) {
                m_up = s;
                p = t;
            }
            if (movable_down(t) && s < m_low) {
                m_low = s;
                q = t;
            }
        }
        violation = m_up - m_low;
        if (violation <= config.tol) break;
        if (updates >= config.max_passes)
            throw SvrConvergenceError("svr: no convergence after " +
                                          std::to_string(config.max_passes) +
                                          " pair updates, KKT violation " +
                                          std::to_string(violation),
                                      violation);

        const Eigen::Index ip = p % n, iq = q % n;
        const double sp = p < n ? 1.0 : -1.0;
        const double sq = q < n ? 1.0 : -1.0;
        const double grad_p = sp * (kbeta[ip] - targets_ghz[ip]) + eps;
        const double grad_q = sq * (kbeta[iq] - targets_ghz[iq]) + eps;

        double eta = kernel(ip, ip) + kernel(iq, iq) - 2.0 * kernel(ip, iq);
        if (eta < 1e-12) eta = 1e-12;
        double delta = -(grad_p - sp * sq * grad_q) / eta;

        // Box: z_p + delta and z_q - sp*sq*delta both stay within [0, C].
        double lo = -z[p], hi = c_box - z[p];
        if (sp * sq > 0.0) {
            lo = std::max(lo, z[q] - c_box);
            hi = std::min(hi, z[q]);
        } else {
            lo = std::max(lo, -z[q]);
            hi = std::min(hi, c_box - z[q]);
        }
        delta = std::min(std::max(delta, lo), hi);

        z[p] += delta;
        z[q] -= sp * sq * delta;
        // A same-row (alpha, alpha*) pair only shrinks both variables and
        // leaves beta untouched.
        if (ip != iq) {
            const double dbeta = sp * delta;
            kbeta += kernel.col(ip) * dbeta;
            kbeta -= kernel.col(iq) * dbeta;
        }
        ++updates;
    }
    kkt_violation_ = std::max(violation, 0.0);

    // Bias from the final optimality interval; with any free variable the
    // interval collapses onto its score.
    double m_up = -std::numeric_limits<double>::infinity();
    double m_low = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < 2 * n; ++t) {
        if (movable_up(t)) m_up = std::max(m_up, score(t));
        if (movable_down(t)) m_low = std::min(m_low, score(t));
    }
    bias_ = 0.5 * (m_up + m_low);

    coefficients_ = z.head(n) - z.tail(n);
    Eigen::Index n_sv = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (coefficients_[i] != 0.0) ++n_sv;
    support_features_.resize(n_sv, 2);
    support_coefficients_.resize(n_sv);
    for (Eigen::Index i = 0, s = 0; i < n; ++i) {
        if (coefficients_[i] == 0.0) continue;
        support_features_.row(s) = x.row(i);
        support_coefficients_[s] = coefficients_[i];
        ++s;
    }
    fitted_ = true;
}

Eigen::VectorXd SvrModel::predict(const Eigen::MatrixX2d& features_mm) const {
    if (!fitted_) throw std::logic_error("svr: not fitted");
    if (!scaler_.fitted()) throw std::logic_error("svr: scaler missing");
    const Eigen::MatrixX2d x = scaler_.transform(features_mm);
    if (support_coefficients_.size() == 0)
        return Eigen::VectorXd::Constant(x.rows(), bias_);
    return (rbf_kernel(x, support_features_, config_.gamma) * support_coefficients_).array() +
           bias_;
}

double SvrModel::predict_one(const Eigen::Vector2d& feature_mm) const {
    Eigen::MatrixX2d m(1, 2);
    m.row(0) = feature_mm.transpose();
    return predict(m)[0];
}

SvrModel SvrModel::from_parts(SvrConfig config, FeatureScaler scaler,
                              Eigen::MatrixX2d support_features_scaled,
                              Eigen::VectorXd support_coefficients, double bias) {
    if (!scaler.fitted()) throw std::invalid_argument("svr: incomplete model parts");
    if (support_features_scaled.rows() != support_coefficients.size())
        throw std::invalid_argument("svr: support vector size mismatch");
    SvrModel m;
    m.config_ = config;
    m.scaler_ = scaler;
    m.support_features_ = std::move(support_features_scaled);
    m.support_coefficients_ = std::move(support_coefficients);
    m.coefficients_ = m.support_coefficients_;
    m.bias_ = bias;
    m.fitted_ = true;
    return m;
}

} // namespace miniant
