#include <doctest.h>

#include <Eigen/Dense>

#include "miniant/models/svr.hpp"
#include "miniant/rng.hpp"
#include "support/checks.hpp"
#include "support/svr_qp_oracle.hpp"

using namespace miniant;
using testsupport::close_abs;

namespace {

// Three-point toy set in millimetres; the second feature is constant and
// min-max scales to 0.5, so the problem is effectively one-dimensional.
void toy_problem(Eigen::MatrixX2d& x_mm, Eigen::VectorXd& y, Eigen::MatrixXd& x_scaled) {
    x_mm.resize(3, 2);
    x_mm << 0.0, 7.0, 0.5, 7.0, 1.0, 7.0;
    y.resize(3);
    y << 0.0, 0.8, 0.1;
    x_scaled.resize(3, 2);
    x_scaled << 0.0, 0.5, 0.5, 0.5, 1.0, 0.5;
}

} // namespace

TEST_CASE("constant targets sit inside the tube") {
    Eigen::MatrixX2d x(4, 2);
    x << 0.0, 1.0, 0.3, 0.2, 0.7, 0.9, 1.0, 0.4;
    const Eigen::VectorXd y = Eigen::VectorXd::Constant(4, 1.5);

    SvrConfig cfg;
    cfg.epsilon_ghz = 0.1;
    SvrModel svr;
    svr.fit(x, y, cfg);

    CHECK(svr.bias() == 1.5);
    CHECK(svr.coefficients().size() == 4);
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(svr.coefficients()[i] == 0.0);
    CHECK(svr.support_coefficients().size() == 0);
    const Eigen::VectorXd pred = svr.predict(x);
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(pred[i] == 1.5);
}

TEST_CASE("three-point toy matches the dense QP enumeration oracle") {
    Eigen::MatrixX2d x_mm;
    Eigen::VectorXd y;
    Eigen::MatrixXd x_scaled;
    toy_problem(x_mm, y, x_scaled);

    SvrConfig cfg;
    cfg.c = 10.0;
    cfg.epsilon_ghz = 0.05;
    cfg.gamma = 1.0;
    cfg.tol = 1e-10;
    SvrModel svr;
    svr.fit(x_mm, y, cfg);

    const auto oracle = testsupport::solve_svr_dual_oracle(x_scaled, y, cfg.c, cfg.epsilon_ghz,
                                                           cfg.gamma);
    REQUIRE(oracle.solved);
    CHECK(oracle.free_count >= 1); // the toy is chosen so the bias is pinned

    for (Eigen::Index i = 0; i < 3; ++i)
        CHECK(close_abs(svr.coefficients()[i], oracle.beta[i], 1e-4));
    CHECK(close_abs(svr.bias(), oracle.bias, 1e-4));

    // Training rows and off-sample probes.
    const Eigen::VectorXd pred = svr.predict(x_mm);
    for (Eigen::Index i = 0; i < 3; ++i) {
        const double expect =
            testsupport::svr_oracle_predict(oracle, x_scaled, x_scaled.row(i), cfg.gamma);
        CHECK(close_abs(pred[i], expect, 1e-4));
    }
    for (double raw : {0.25, 0.4, 0.75, 0.9}) {
        Eigen::RowVectorXd q(2);
        q << raw, 0.5; // manual transform: col0 spans [0,1], col1 is pinned
        const double expect = testsupport::svr_oracle_predict(oracle, x_scaled, q, cfg.gamma);
        CHECK(close_abs(svr.predict_one({raw, 7.0}), expect, 1e-4));
    }
}

TEST_CASE("dual coefficients respect the box and the kkt tolerance") {
    Eigen::MatrixX2d x(6, 2);
    x << 0.0, 0.1, 0.2, 0.8, 0.4, 0.3, 0.6, 0.9, 0.8, 0.2, 1.0, 0.7;
    Eigen::VectorXd y(6);
    y << 1.4, 1.9, 1.5, 1.8, 1.45, 1.7;

    SvrConfig cfg;
    cfg.c = 2.0;
    cfg.epsilon_ghz = 0.01;
    cfg.gamma = 0.8;
    cfg.tol = 1e-6;
    SvrModel svr;
    svr.fit(x, y, cfg);

    CHECK(svr.kkt_violation() <= cfg.tol);
    for (Eigen::Index i = 0; i < 6; ++i) {
        CHECK(svr.coefficients()[i] <= cfg.c + 1e-12);
        CHECK(svr.coefficients()[i] >= -cfg.c - 1e-12);
    }
}

TEST_CASE("merging duplicate rows leaves predictions unchanged") {
    Eigen::MatrixX2d with_dup(4, 2);
    with_dup << 0.0, 0.0, 0.0, 0.0, 0.5, 1.0, 1.0, 0.5;
    Eigen::VectorXd y_dup(4);
    y_dup << 1.2, 1.2, 1.8, 1.5;

    Eigen::MatrixX2d merged(3, 2);
    merged << 0.0, 0.0, 0.5, 1.0, 1.0, 0.5;
    Eigen::VectorXd y_merged(3);
    y_merged << 1.2, 1.8, 1.5;

    SvrConfig cfg;
    cfg.c = 50.0;
    cfg.epsilon_ghz = 0.01;
    cfg.gamma = 1.0;
    cfg.tol = 1e-9;
    SvrModel a, b;
    a.fit(with_dup, y_dup, cfg);
    b.fit(merged, y_merged, cfg);

    for (double u : {0.0, 0.2, 0.5, 0.8, 1.0}) {
        Eigen::Vector2d probe{u, 1.0 - u};
        CHECK(close_abs(a.predict_one(probe), b.predict_one(probe), 1e-3));
    }
}

TEST_CASE("non-convergence raises with the final violation attached") {
    Eigen::MatrixX2d x(5, 2);
    x << 0.0, 0.0, 0.25, 0.9, 0.5, 0.1, 0.75, 0.8, 1.0, 0.3;
    Eigen::VectorXd y(5);
    y << 0.0, 1.0, -0.5, 0.8, 0.2;

    SvrConfig cfg;
    cfg.tol = 1e-12;
    cfg.max_passes = 2;
    SvrModel svr;
    CHECK_THROWS_AS(svr.fit(x, y, cfg), SvrConvergenceError);
    try {
        svr.fit(x, y, cfg);
    } catch (const SvrConvergenceError& e) {
        CHECK(e.kkt_violation() > 0.0);
    }
}

TEST_CASE("svr config validation") {
    Eigen::MatrixX2d x(2, 2);
    x << 0.0, 0.0, 1.0, 1.0;
    Eigen::VectorXd y(2);
    y << 1.0, 2.0;
    SvrModel svr;
    SvrConfig cfg;
    cfg.c = 0.0;
    CHECK_THROWS_AS(svr.fit(x, y, cfg), std::invalid_argument);
    cfg = SvrConfig{};
    cfg.gamma = -1.0;
    CHECK_THROWS_AS(svr.fit(x, y, cfg), std::invalid_argument);
    CHECK_THROWS_AS(svr.predict(x), std::logic_error);
}

TEST_CASE("randomized tiny problems all match the enumeration oracle") {
    Rng rng(2027);
    for (int rep = 0; rep < 40; ++rep) {
        Eigen::MatrixX2d x_mm(3, 2);
        Eigen::MatrixXd x_scaled(3, 2);
        // Distinct first feature; constant second (scales to one half).
        const double a = rng.uniform(0.0, 0.3);
        const double b = rng.uniform(0.35, 0.65);
        const double c = rng.uniform(0.7, 1.0);
        x_mm << a, 5.0, b, 5.0, c, 5.0;
        x_scaled << 0.0, 0.5, (b - a) / (c - a), 0.5, 1.0, 0.5;

        Eigen::VectorXd y(3);
        for (int i = 0; i < 3; ++i) y[i] = rng.uniform(-1.0, 1.0);

        SvrConfig cfg;
        cfg.c = rng.coin() ? 10.0 : 1.0;
        cfg.epsilon_ghz = rng.coin() ? 0.01 : 0.1;
        cfg.gamma = rng.uniform(0.5, 3.0);
        cfg.tol = 1e-9;
        SvrModel svr;
        svr.fit(x_mm, y, cfg);

        const auto oracle = testsupport::solve_svr_dual_oracle(x_scaled, y, cfg.c,
                                                               cfg.epsilon_ghz, cfg.gamma);
        REQUIRE(oracle.solved);
        for (double raw : {0.1, 0.5, 0.9}) {
            Eigen::RowVectorXd q(2);
            q << raw, 0.5;
            const double expect =
                testsupport::svr_oracle_predict(oracle, x_scaled, q, cfg.gamma);
            const double got = svr.predict_one({a + raw * (c - a), 5.0});
            CHECK(close_abs(got, expect, 1e-3));
        }
    }
}

TEST_CASE("svr predicts nothing for no rows") {
    Eigen::MatrixX2d x(3, 2);
    x << 0.0, 0.0, 0.5, 0.5, 1.0, 1.0;
    Eigen::VectorXd y(3);
    y << 1.0, 1.5, 1.2;
    SvrModel svr;
    svr.fit(x, y, SvrConfig{});
    const Eigen::MatrixX2d empty(0, 2);
    CHECK(svr.predict(empty).size() == 0);
}

TEST_CASE("svr fit is deterministic") {
    Eigen::MatrixX2d x(6, 2);
    x << 0.0, 0.1, 0.2, 0.8, 0.4, 0.3, 0.6, 0.9, 0.8, 0.2, 1.0, 0.7;
    Eigen::VectorXd y(6);
    y << 1.4, 1.9, 1.5, 1.8, 1.45, 1.7;
    SvrModel a, b;
    a.fit(x, y, SvrConfig{});
    b.fit(x, y, SvrConfig{});
    CHECK(testsupport::same(a.predict(x), b.predict(x)));
    CHECK(a.bias() == b.bias());
}
