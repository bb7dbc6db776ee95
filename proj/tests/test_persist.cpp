#include <doctest.h>

#include <sstream>

#include "miniant/dataset.hpp"
#include "miniant/models/persist.hpp"
#include "support/checks.hpp"
#include "support/data.hpp"

using namespace miniant;
using testsupport::make_xy;
using testsupport::same;

namespace {

std::pair<Eigen::MatrixX2d, Eigen::VectorXd> training_data() {
    SynthConfig cfg;
    cfg.n_samples = 60;
    cfg.seed = 14;
    return make_xy(generate_synthetic(cfg));
}

Eigen::MatrixX2d probe_points() {
    Eigen::MatrixX2d probes(4, 2);
    probes << 3.0, 9.0, 2.5, 11.5, 6.2441, 11.8614, 4.0, 6.0;
    return probes;
}

} // namespace

TEST_CASE("forest round-trips with bit-equal predictions") {
    const auto [x, y] = training_data();
    ForestConfig cfg;
    cfg.n_trees = 12;
    cfg.seed = 2;
    RandomForest model;
    model.fit(x, y, cfg);

    std::stringstream buf;
    save_model(buf, model);
    const RandomForest loaded = load_forest(buf);
    CHECK(same(loaded.predict(probe_points()), model.predict(probe_points())));

    // Saving the loaded model reproduces the identical bytes.
    std::stringstream again;
    save_model(again, loaded);
    std::stringstream first;
    save_model(first, model);
    CHECK(again.str() == first.str());
}

TEST_CASE("gbt round-trips with bit-equal predictions") {
    const auto [x, y] = training_data();
    GbtConfig cfg;
    cfg.n_rounds = 25;
    GradientBoostedTrees model;
    model.fit(x, y, cfg);

    std::stringstream buf;
    save_model(buf, model);
    const GradientBoostedTrees loaded = load_gbt(buf);
    CHECK(same(loaded.predict(probe_points()), model.predict(probe_points())));
}

TEST_CASE("svr round-trips with bit-equal predictions") {
    const auto [x, y] = training_data();
    SvrConfig cfg;
    cfg.tol = 1e-6;
    SvrModel model;
    model.fit(x, y, cfg);

    std::stringstream buf;
    save_model(buf, model);
    const SvrModel loaded = load_svr(buf);
    CHECK(loaded.bias() == model.bias());
    CHECK(same(loaded.predict(probe_points()), model.predict(probe_points())));
}

TEST_CASE("stacked model round-trips with bit-equal predictions") {
    const auto [x, y] = training_data();
    StackedConfig cfg;
    cfg.forest.n_trees = 8;
    cfg.forest.seed = 3;
    cfg.gbt.n_rounds = 15;
    cfg.svr.tol = 1e-5;
    StackedModel model;
    model.fit(x, y, cfg);

    std::stringstream buf;
    save_model(buf, model);
    const StackedModel loaded = load_stacked(buf);
    CHECK(same(loaded.weights(), model.weights()));
    CHECK(same(loaded.predict(probe_points()), model.predict(probe_points())));
}

TEST_CASE("file helpers and malformed input") {
    const auto [x, y] = training_data();
    ForestConfig cfg;
    cfg.n_trees = 3;
    RandomForest model;
    model.fit(x, y, cfg);

    const auto path = std::filesystem::temp_directory_path() / "miniant_forest.model";
    save_model_file(path, model);
    const RandomForest loaded = load_forest_file(path);
    CHECK(same(loaded.predict(probe_points()), model.predict(probe_points())));
    std::filesystem::remove(path);

    std::stringstream junk("not a model\n");
    CHECK_THROWS_WITH(load_forest(junk), doctest::Contains("model file"));

    std::stringstream wrong_version("miniant-model 99\nkind forest\n");
    CHECK_THROWS_WITH(load_forest(wrong_version), doctest::Contains("version"));

    std::stringstream wrong_kind;
    save_model(wrong_kind, model);
    CHECK_THROWS_WITH(load_svr(wrong_kind), doctest::Contains("kind"));

    CHECK_THROWS_AS(save_model_file("/nonexistent_dir/x.model", model), std::runtime_error);
}

TEST_CASE("unfitted models refuse to save") {
    RandomForest empty;
    std::stringstream buf;
    CHECK_THROWS_AS(save_model(buf, empty), std::logic_error);
}
