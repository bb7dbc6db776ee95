#include "miniant/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "miniant/dataset.hpp"
#include "miniant/format.hpp"
#include "miniant/metrics.hpp"
#include "miniant/models/persist.hpp"
#include "miniant/models/stacked.hpp"
#include "miniant/physics.hpp"
#include "miniant/qdpso.hpp"

namespace miniant::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Reference sweep results for the eight published loop configurations:
// ANSYS resonance and the printed miniaturization percentage.
struct ReferenceRow {
    double d_outer_mm;
    double d_inner_mm;
    double f_ansys_ghz;
    double miniaturization_pct;
};

constexpr ReferenceRow kReferenceRows[8] = {
    {11.9787, 2.9498, 1.5912, 29.90}, {11.6620, 7.0070, 1.5711, 30.79},
    {11.5439, 4.9963, 1.5411, 32.11}, {11.9711, 3.2773, 1.5110, 33.44},
    {11.8729, 5.2052, 1.5110, 33.44}, {11.1002, 2.2014, 1.4810, 34.76},
    {11.9187, 5.6182, 1.4409, 36.52}, {11.8614, 6.2441, 1.4208, 37.41},
};

constexpr const char* kFixtureHeader = "d_outer_mm,d_inner_mm,f_ansys_ghz,miniaturization_pct";

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

fs::path prepare_out_dir(const std::string& out_dir) {
    fs::path p(out_dir);
    fs::create_directories(p);
    return p;
}

std::pair<Eigen::MatrixX2d, Eigen::VectorXd> to_matrices(const std::vector<SampleRecord>& rows) {
    Eigen::MatrixX2d x(static_cast<Eigen::Index>(rows.size()), 2);
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        x(static_cast<Eigen::Index>(i), 0) = rows[i].d_inner_mm;
        x(static_cast<Eigen::Index>(i), 1) = rows[i].d_outer_mm;
        y[static_cast<Eigen::Index>(i)] = rows[i].f_res_ghz;
    }
    return {std::move(x), std::move(y)};
}

std::string cpu_model() {
    std::ifstream info("/proc/cpuinfo");
    std::string line;
    while (std::getline(info, line)) {
        const auto pos = line.find("model name");
        if (pos != std::string::npos) {
            const auto colon = line.find(':');
            if (colon != std::string::npos && colon + 2 <= line.size())
                return line.substr(colon + 2);
        }
    }
    return "unknown cpu";
}

struct OptimizeOptions {
    int swarm = 30;
    int iters = 100;
    double target = kReferenceFrequencyGhz;
    double beta_start = 1.0;
    double beta_end = 0.5;
    int stagnation_window = 20;
    double stagnation_eps = 0.0;
    std::optional<double> threshold;
};

struct ModelOptions {
    int trees = 200;
    int forest_depth = 12;
    int mtry = 1;
    int gbt_rounds = 300;
    double learning_rate = 0.1;
    int gbt_depth = 3;
    double svr_c = 10.0;
    double svr_epsilon = 0.01;
    double svr_gamma = 2.0;
    double svr_tol = 1e-3;
    long svr_passes = 500000;
    std::string stack_mode = "paper";
    int folds = 5;

    ForestConfig forest_config(std::uint64_t seed) const {
        return ForestConfig{trees, forest_depth, 1, mtry, true, seed};
    }
    GbtConfig gbt_config() const { return GbtConfig{gbt_rounds, learning_rate, gbt_depth, 1}; }
    SvrConfig svr_config() const {
        return SvrConfig{svr_c, svr_epsilon, svr_gamma, svr_tol, svr_passes};
    }

    void validate() const {
        if (trees < 1) throw std::invalid_argument("train-eval: --trees must be >= 1");
        if (forest_depth < 1 || gbt_depth < 1)
            throw std::invalid_argument("train-eval: tree depths must be >= 1");
        if (mtry < 1 || mtry > 2) throw std::invalid_argument("train-eval: --mtry must be 1 or 2");
        if (gbt_rounds < 1) throw std::invalid_argument("train-eval: --gbt-rounds must be >= 1");
        if (!(learning_rate >= 0.0)) throw std::invalid_argument("train-eval: --lr must be >= 0");
        if (!(svr_c > 0.0)) throw std::invalid_argument("train-eval: --svr-c must be > 0");
        if (!(svr_gamma > 0.0)) throw std::invalid_argument("train-eval: --svr-gamma must be > 0");
        if (svr_passes < 1) throw std::invalid_argument("train-eval: --svr-passes must be >= 1");
        if (stack_mode != "paper" && stack_mode != "out_of_fold")
            throw std::invalid_argument("train-eval: --stack-mode must be paper or out_of_fold");
        if (folds < 2) throw std::invalid_argument("train-eval: --folds must be >= 2");
    }
};

struct TrainedSuite {
    RandomForest forest;
    GradientBoostedTrees gbt;
    std::optional<SvrModel> svr;
    std::optional<StackedModel> stacked;
};

// Fits the four models; a non-converging SVR is reported and skipped (the
// stack needs it, so the stack is skipped too) without failing the run.
TrainedSuite fit_suite(const Eigen::MatrixX2d& x, const Eigen::VectorXd& y,
                       const ModelOptions& opts, std::uint64_t seed, std::ostream& err) {
    TrainedSuite suite;
    suite.forest.fit(x, y, opts.forest_config(Rng::derive_seed(seed, 101)));
    suite.gbt.fit(x, y, opts.gbt_config());

    try {
        SvrModel svr;
        svr.fit(x, y, opts.svr_config());
        suite.svr = std::move(svr);
    } catch (const SvrConvergenceError& e) {
        err << "warning: svr skipped: " << e.what() << "\n";
        return suite;
    }

    if (opts.stack_mode == "paper") {
        // Bases are already trained; the meta-learner fits on their own
        // training predictions, which is the point of this mode.
        Eigen::MatrixXd p(x.rows(), 3);
        p.col(0) = suite.forest.predict(x);
        p.col(1) = suite.svr->predict(x);
        p.col(2) = suite.gbt.predict(x);
        bool fallback = false;
        const Eigen::Vector4d w = fit_affine_meta(p, y, &fallback);
        suite.stacked = StackedModel::from_parts(StackMode::paper, w, fallback, suite.forest,
                                                 *suite.svr, suite.gbt);
    } else {
        StackedConfig cfg;
        cfg.mode = StackMode::out_of_fold;
        cfg.folds = opts.folds;
        cfg.seed = Rng::derive_seed(seed, 202);
        cfg.forest = opts.forest_config(Rng::derive_seed(seed, 101));
        cfg.svr = opts.svr_config();
        cfg.gbt = opts.gbt_config();
        try {
            StackedModel stacked;
            stacked.fit(x, y, cfg);
            suite.stacked = std::move(stacked);
        } catch (const SvrConvergenceError& e) {
            err << "warning: stacked model skipped: " << e.what() << "\n";
        }
    }
    return suite;
}

int cmd_optimize(std::uint64_t seed, const std::string& out_dir, const OptimizeOptions& opts,
                 std::ostream& out, std::ostream& err) {
    qdpso::SwarmConfig cfg;
    cfg.swarm_size = opts.swarm;
    cfg.max_iterations = opts.iters;
    cfg.target_ghz = opts.target;
    cfg.beta_start = opts.beta_start;
    cfg.beta_end = opts.beta_end;
    cfg.stagnation_window = opts.stagnation_window;
    cfg.stagnation_epsilon = opts.stagnation_eps;
    cfg.fitness_threshold = opts.threshold;
    cfg.seed = seed;
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    const qdpso::RunResult result = qdpso::run(cfg);
    const double f_r = resonant_frequency_ghz(
        reference_geometry(result.best_position[0], result.best_position[1]));
    const double mini = miniaturization_percent(f_r, kReferenceFrequencyGhz);

    try {
        const fs::path dir = prepare_out_dir(out_dir);
        write_text_file(dir / "fitness_trace.csv", qdpso::render_trace_csv(result.trace));
        std::string summary = "d_inner_mm,d_outer_mm,f_r_ghz,miniaturization_pct,fitness,iterations\n";
        summary += format_exact(result.best_position[0]);
        summary += ',';
        summary += format_exact(result.best_position[1]);
        summary += ',';
        summary += format_exact(f_r);
        summary += ',';
        summary += format_exact(mini);
        summary += ',';
        summary += format_exact(result.best_fitness);
        summary += ',';
        summary += std::to_string(result.iterations);
        summary += '\n';
        write_text_file(dir / "optimize_summary.csv", summary);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    out << "d_outer_mm   d_inner_mm   f_r_ghz   miniaturization_pct\n";
    out << format_fixed(result.best_position[1], 4) << "      " << format_fixed(result.best_position[0], 4)
        << "       " << format_fixed(f_r, 4) << "    " << format_fixed(mini, 2) << "\n";
    out << "fitness " << format_fixed(result.best_fitness, 6) << " after " << result.iterations
        << " iterations (seed " << seed << ")\n";
    return 0;
}

int cmd_generate(std::uint64_t seed, const std::string& out_dir, SynthConfig cfg,
                 std::ostream& out, std::ostream& err) {
    cfg.seed = seed;
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    try {
        const auto records = generate_synthetic(cfg);
        const fs::path dir = prepare_out_dir(out_dir);
        write_csv(dir / "dataset.csv", records);
        out << "wrote " << records.size() << " records to " << (dir / "dataset.csv").string()
            << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

int cmd_train_eval(std::uint64_t seed, const std::string& out_dir, const std::string& data_path,
                   const ModelOptions& opts, bool save_models, std::ostream& out,
                   std::ostream& err) {
    try {
        opts.validate();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        const auto records = load_csv(data_path);
        const DatasetSplit split = split_dataset(records, seed);
        const auto [x_train, y_train] = to_matrices(split.train);
        const auto [x_test, y_test] = to_matrices(split.test);
        const auto [x_val, y_val] = to_matrices(split.validation);

        const TrainedSuite suite = fit_suite(x_train, y_train, opts, seed, err);

        std::vector<ModelReport> reports;
        const auto add_report = [&](const std::string& name, auto&& predict) {
            ModelReport r;
            r.model = name;
            r.train = metric_panel(y_train, predict(x_train));
            r.test = metric_panel(y_test, predict(x_test));
            r.validation = metric_panel(y_val, predict(x_val));
            reports.push_back(std::move(r));
        };
        add_report("Random Forest", [&](const auto& x) { return suite.forest.predict(x); });
        if (suite.svr) add_report("SVM", [&](const auto& x) { return suite.svr->predict(x); });
        add_report("XGBoost", [&](const auto& x) { return suite.gbt.predict(x); });
        if (suite.stacked)
            add_report("Stacked Model", [&](const auto& x) { return suite.stacked->predict(x); });

        // Keep the published row order: forest, svm, boosted trees, stack.
        std::vector<ModelReport> ordered;
        for (const char* name : {"Random Forest", "SVM", "XGBoost", "Stacked Model"})
            for (auto& r : reports)
                if (r.model == name) ordered.push_back(r);

        const fs::path dir = prepare_out_dir(out_dir);
        write_text_file(dir / "model_report.csv", render_report_csv(ordered));

        std::string preds =
            "d_inner_mm,d_outer_mm,f_actual_ghz,forest_ghz,svm_ghz,xgboost_ghz,stacked_ghz\n";
        const Eigen::VectorXd p_forest = suite.forest.predict(x_test);
        const Eigen::VectorXd p_gbt = suite.gbt.predict(x_test);
        const Eigen::VectorXd p_svr =
            suite.svr ? suite.svr->predict(x_test) : Eigen::VectorXd(Eigen::VectorXd::Constant(x_test.rows(), std::numeric_limits<double>::quiet_NaN()));
        const Eigen::VectorXd p_stack =
            suite.stacked ? suite.stacked->predict(x_test) : Eigen::VectorXd(Eigen::VectorXd::Constant(x_test.rows(), std::numeric_limits<double>::quiet_NaN()));
        for (Eigen::Index i = 0; i < x_test.rows(); ++i) {
            preds += format_general(x_test(i, 0), 6);
            preds += ',';
            preds += format_general(x_test(i, 1), 6);
            preds += ',';
            preds += format_general(y_test[i], 6);
            preds += ',';
            preds += format_general(p_forest[i], 6);
            preds += ',';
            preds += format_general(p_svr[i], 6);
            preds += ',';
            preds += format_general(p_gbt[i], 6);
            preds += ',';
            preds += format_general(p_stack[i], 6);
            preds += '\n';
        }
        write_text_file(dir / "predictions.csv", preds);

        if (save_models) {
            const fs::path mdir = dir / "models";
            fs::create_directories(mdir);
            save_model_file(mdir / "forest.model", suite.forest);
            save_model_file(mdir / "gbt.model", suite.gbt);
            if (suite.svr) save_model_file(mdir / "svr.model", *suite.svr);
            if (suite.stacked) save_model_file(mdir / "stacked.model", *suite.stacked);
        }

        out << "split sizes: train " << split.train.size() << ", validation "
            << split.validation.size() << ", test " << split.test.size() << " (seed " << seed
            << ")\n\n";
        out << render_report_table(ordered);
        out << "wrote " << (dir / "model_report.csv").string() << " and "
            << (dir / "predictions.csv").string() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

std::vector<ReferenceRow> load_fixture(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty fixture");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kFixtureHeader)
        throw std::runtime_error(path + ": bad header, expected '" + kFixtureHeader + "'");
    std::vector<ReferenceRow> rows;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++n;
        std::istringstream ls(line);
        std::string field;
        double v[4];
        for (int k = 0; k < 4; ++k) {
            if (!std::getline(ls, field, ','))
                throw std::runtime_error(path + ": row " + std::to_string(n) + ": expected 4 fields");
            v[k] = parse_double(field);
        }
        rows.push_back(ReferenceRow{v[0], v[1], v[2], v[3]});
    }
    return rows;
}

int cmd_reproduce(const std::string& fixture_path, std::ostream& out, std::ostream& err) {
    std::vector<ReferenceRow> rows;
    if (fixture_path.empty()) {
        rows.assign(std::begin(kReferenceRows), std::end(kReferenceRows));
    } else {
        try {
            rows = load_fixture(fixture_path);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return 2;
        }
    }

    int failures = 0;
    out << "reference reproduction (" << rows.size() << " rows, tolerance 0.01 on percent)\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const ReferenceRow& r = rows[i];
        const bool feasible = is_feasible(r.d_inner_mm, r.d_outer_mm);
        const double recomputed = miniaturization_percent(r.f_ansys_ghz, kReferenceFrequencyGhz);
        const bool pct_ok = std::abs(recomputed - r.miniaturization_pct) <= 0.01;
        const double f_analytical =
            resonant_frequency_ghz(reference_geometry(r.d_inner_mm, r.d_outer_mm));
        const double gap_pct = 100.0 * (f_analytical - r.f_ansys_ghz) / r.f_ansys_ghz;
        if (!feasible || !pct_ok) ++failures;

        out << "row " << (i + 1) << ": d_outer " << format_fixed(r.d_outer_mm, 4) << " d_inner "
            << format_fixed(r.d_inner_mm, 4) << "  feasible " << (feasible ? "ok" : "FAIL")
            << "  miniaturization " << format_fixed(r.miniaturization_pct, 2) << "% (recomputed "
            << format_fixed(recomputed, 4) << ", " << (pct_ok ? "ok" : "FAIL") << ")"
            << "  analytical f_r " << format_fixed(f_analytical, 4) << " GHz  gap vs reference "
            << format_fixed(gap_pct, 2) << "%\n";
    }
    out << (failures == 0 ? "all checks passed" : "checks FAILED") << "\n";
    return failures == 0 ? 0 : 3;
}

int cmd_timing(std::uint64_t seed, std::size_t n_samples, const ModelOptions& model_opts,
               std::ostream& out, std::ostream& err) {
    qdpso::SwarmConfig swarm_cfg;
    swarm_cfg.seed = seed;

    const auto t_opt = Clock::now();
    const qdpso::RunResult result = qdpso::run(swarm_cfg);
    const double optimize_s = seconds_since(t_opt);

    SynthConfig synth;
    synth.n_samples = n_samples;
    synth.seed = seed;
    synth.validate();
    const auto records = generate_synthetic(synth);
    const auto [x, y] = to_matrices(records);
    const TrainedSuite suite = fit_suite(x, y, model_opts, seed, err);

    const auto t_pred = Clock::now();
    double checksum = 0.0;
    checksum += suite.forest.predict(x).sum();
    checksum += suite.gbt.predict(x).sum();
    if (suite.svr) checksum += suite.svr->predict(x).sum();
    if (suite.stacked) checksum += suite.stacked->predict(x).sum();
    const double predict_s = seconds_since(t_pred);
    if (!std::isfinite(checksum)) err << "warning: non-finite predictions in the timing run\n";

    out << "timing report\n";
    out << "  hardware: " << cpu_model() << ", " << std::thread::hardware_concurrency()
        << " threads\n";
    out << "  optimize stage: " << format_fixed(optimize_s, 3) << " s  (swarm "
        << swarm_cfg.swarm_size << ", " << result.iterations << " iterations)\n";
    out << "  predict stage:  " << format_fixed(predict_s, 3) << " s  (four models over "
        << records.size() << " samples)\n";
    out << "  reference measurements on other hardware: optimize 11.53 s, predict 0.75 s\n";
    out << "  reference values are informational only, not an acceptance gate\n";
    out << "  the reference workflow also timed a full-wave solver validation stage"
           " (~12.4 min); no solver exists here, so it is not measured\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"loop-loaded slot antenna miniaturization: swarm optimizer, closed-form"
                 " frequency surrogate, and regression model suite"};
    app.fallthrough();
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    std::string out_dir = "out";
    app.add_option("--seed", seed, "seed for every stochastic stage");
    app.add_option("--out", out_dir, "output directory for artifacts");
    app.set_config("--config", "", "key=value config file; command-line flags win");

    OptimizeOptions opt;
    auto* c_optimize = app.add_subcommand("optimize", "search loop diameters that move the"
                                                      " resonance away from the target");
    c_optimize->add_option("--swarm", opt.swarm, "swarm size");
    c_optimize->add_option("--iters", opt.iters, "iteration budget");
    c_optimize->add_option("--target", opt.target, "target frequency in GHz");
    c_optimize->add_option("--beta-start", opt.beta_start, "initial contraction-expansion coefficient");
    c_optimize->add_option("--beta-end", opt.beta_end, "final contraction-expansion coefficient");
    c_optimize->add_option("--stagnation-window", opt.stagnation_window,
                           "iterations the stagnation stop looks back over");
    c_optimize->add_option("--stagnation-eps", opt.stagnation_eps,
                           "minimum improvement per window; 0 disables");
    double threshold_value = 0.0;
    auto* threshold_opt =
        c_optimize->add_option("--threshold", threshold_value, "stop once fitness <= threshold");

    SynthConfig synth;
    auto* c_generate = app.add_subcommand("generate", "write a synthetic sweep dataset");
    c_generate->add_option("--n", synth.n_samples, "number of samples");
    c_generate->add_option("--noise", synth.noise_std_ghz, "frequency noise sigma in GHz");
    c_generate->add_option("--alpha", synth.inner_coupling, "synthetic d_inner coupling strength");

    ModelOptions models;
    std::string data_path;
    bool save_models = false;
    auto* c_train = app.add_subcommand("train-eval", "train the model suite and report metrics");
    c_train->add_option("--data", data_path, "dataset csv path")->required();
    c_train->add_option("--trees", models.trees, "forest size");
    c_train->add_option("--forest-depth", models.forest_depth, "forest tree depth");
    c_train->add_option("--mtry", models.mtry, "features tried per forest split");
    c_train->add_option("--gbt-rounds", models.gbt_rounds, "boosting rounds");
    c_train->add_option("--lr", models.learning_rate, "boosting learning rate");
    c_train->add_option("--gbt-depth", models.gbt_depth, "boosting tree depth");
    c_train->add_option("--svr-c", models.svr_c, "svr box constraint");
    c_train->add_option("--svr-eps", models.svr_epsilon, "svr tube half-width in GHz");
    c_train->add_option("--svr-gamma", models.svr_gamma, "svr rbf bandwidth");
    c_train->add_option("--svr-tol", models.svr_tol, "svr kkt tolerance");
    c_train->add_option("--svr-passes", models.svr_passes, "svr pair-update budget");
    c_train->add_option("--stack-mode", models.stack_mode, "paper or out_of_fold");
    c_train->add_option("--folds", models.folds, "folds for out_of_fold stacking");
    c_train->add_flag("--save-models", save_models, "persist fitted models under <out>/models");

    std::string fixture_path;
    auto* c_reproduce = app.add_subcommand("reproduce", "check the bundled reference rows");
    c_reproduce->add_option("--fixture", fixture_path, "override the embedded fixture (csv)");

    std::size_t timing_n = 936;
    ModelOptions timing_models;
    auto* c_timing = app.add_subcommand("timing", "measure optimize and predict stage durations");
    c_timing->add_option("--n", timing_n, "dataset size for the predict stage");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_optimize->parsed()) {
            if (threshold_opt->count() > 0) opt.threshold = threshold_value;
            return cmd_optimize(seed, out_dir, opt, out, err);
        }
        if (c_generate->parsed()) return cmd_generate(seed, out_dir, synth, out, err);
        if (c_train->parsed())
            return cmd_train_eval(seed, out_dir, data_path, models, save_models, out, err);
        if (c_reproduce->parsed()) return cmd_reproduce(fixture_path, out, err);
        if (c_timing->parsed()) return cmd_timing(seed, timing_n, timing_models, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 1;
}

} // namespace miniant::cli
