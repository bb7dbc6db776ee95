#include "miniant/models/persist.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "miniant/format.hpp"

namespace miniant {

namespace {

constexpr const char* kMagic = "miniant-model";
constexpr int kVersion = 1;

[[noreturn]] void bad(const std::string& what) {
    throw std::runtime_error("model file: " + what);
}

std::vector<std::string> next_tokens(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> tokens;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (!tokens.empty()) return tokens;
    }
    bad("unexpected end of file");
}

std::vector<std::string> expect(std::istream& in, const std::string& keyword,
                                std::size_t n_values) {
    auto tokens = next_tokens(in);
    if (tokens[0] != keyword)
        bad("expected '" + keyword + "', found '" + tokens[0] + "'");
    if (tokens.size() != n_values + 1)
        bad("'" + keyword + "' carries " + std::to_string(tokens.size() - 1) + " values, want " +
            std::to_string(n_values));
    return tokens;
}

void write_header(std::ostream& out, const std::string& kind) {
    out << kMagic << ' ' << kVersion << '\n' << "kind " << kind << '\n';
}

void read_header(std::istream& in, const std::string& kind) {
    auto magic = expect(in, kMagic, 1);
    if (parse_long(magic[1]) != kVersion) bad("unsupported version " + magic[1]);
    auto k = expect(in, "kind", 1);
    if (k[1] != kind) bad("expected kind '" + kind + "', found '" + k[1] + "'");
}

void write_scaler(std::ostream& out, const FeatureScaler& s) {
    out << "scaler " << format_exact(s.low()[0]) << ' ' << format_exact(s.low()[1]) << ' '
        << format_exact(s.high()[0]) << ' ' << format_exact(s.high()[1]) << '\n';
}

FeatureScaler read_scaler(std::istream& in) {
    auto t = expect(in, "scaler", 4);
    FeatureScaler s;
    s.set_parameters(Eigen::Vector2d{parse_double(t[1]), parse_double(t[2])},
                     Eigen::Vector2d{parse_double(t[3]), parse_double(t[4])});
    return s;
}

void write_tree(std::ostream& out, const RegressionTree& tree) {
    out << "tree " << tree.nodes().size() << '\n';
    for (const auto& nd : tree.nodes()) {
        if (nd.is_leaf())
            out << "leaf " << format_exact(nd.value) << '\n';
        else
            out << "split " << nd.feature << ' ' << format_exact(nd.threshold) << ' ' << nd.left
                << ' ' << nd.right << '\n';
    }
}

RegressionTree read_tree(std::istream& in) {
    auto header = expect(in, "tree", 1);
    const long n_nodes = parse_long(header[1]);
    if (n_nodes < 1) bad("tree with no nodes");
    std::vector<RegressionTree::Node> nodes;
    nodes.reserve(static_cast<std::size_t>(n_nodes));
    for (long k = 0; k < n_nodes; ++k) {
        auto tokens = next_tokens(in);
        RegressionTree::Node nd;
        if (tokens[0] == "leaf" && tokens.size() == 2) {
            nd.value = parse_double(tokens[1]);
        } else if (tokens[0] == "split" && tokens.size() == 5) {
            nd.feature = static_cast<int>(parse_long(tokens[1]));
            nd.threshold = parse_double(tokens[2]);
            nd.left = static_cast<int>(parse_long(tokens[3]));
            nd.right = static_cast<int>(parse_long(tokens[4]));
        } else {
            bad("malformed tree node line");
        }
        nodes.push_back(nd);
    }
    return RegressionTree::from_nodes(std::move(nodes));
}

void write_footer(std::ostream& out, const std::string& kind) { out << "end " << kind << '\n'; }

void read_footer(std::istream& in, const std::string& kind) {
    auto t = expect(in, "end", 1);
    if (t[1] != kind) bad("mismatched end marker '" + t[1] + "'");
}

} // namespace

void save_model(std::ostream& out, const RandomForest& model) {
    if (!model.fitted()) throw std::logic_error("save: forest not fitted");
    write_header(out, "forest");
    write_scaler(out, model.scaler());
    const ForestConfig& c = model.config();
    out << "params " << c.n_trees << ' ' << c.max_depth << ' ' << c.min_leaf << ' ' << c.mtry
        << ' ' << (c.bootstrap ? 1 : 0) << ' ' << c.seed << '\n';
    for (const auto& tree : model.trees()) write_tree(out, tree);
    write_footer(out, "forest");
}

RandomForest load_forest(std::istream& in) {
    read_header(in, "forest");
    FeatureScaler scaler = read_scaler(in);
    auto p = expect(in, "params", 6);
    ForestConfig cfg;
    cfg.n_trees = static_cast<int>(parse_long(p[1]));
    cfg.max_depth = static_cast<int>(parse_long(p[2]));
    cfg.min_leaf = static_cast<int>(parse_long(p[3]));
    cfg.mtry = static_cast<int>(parse_long(p[4]));
    cfg.bootstrap = parse_long(p[5]) != 0;
    cfg.seed = static_cast<std::uint64_t>(parse_long(p[6]));
    std::vector<RegressionTree> trees;
    trees.reserve(static_cast<std::size_t>(cfg.n_trees));
    for (int t = 0; t < cfg.n_trees; ++t) trees.push_back(read_tree(in));
    read_footer(in, "forest");
    return RandomForest::from_parts(cfg, scaler, std::move(trees));
}

void save_model(std::ostream& out, const GradientBoostedTrees& model) {
    if (!model.fitted()) throw std::logic_error("save: gbt not fitted");
    write_header(out, "gbt");
    write_scaler(out, model.scaler());
    const GbtConfig& c = model.config();
    out << "params " << static_cast<int>(model.trees().size()) << ' '
        << format_exact(c.learning_rate) << ' ' << c.max_depth << ' ' << c.min_leaf << '\n';
    out << "base " << format_exact(model.base_value()) << '\n';
    for (const auto& tree : model.trees()) write_tree(out, tree);
    write_footer(out, "gbt");
}

GradientBoostedTrees load_gbt(std::istream& in) {
    read_header(in, "gbt");
    FeatureScaler scaler = read_scaler(in);
    auto p = expect(in, "params", 4);
    GbtConfig cfg;
    cfg.n_rounds = static_cast<int>(parse_long(p[1]));
    cfg.learning_rate = parse_double(p[2]);
    cfg.max_depth = static_cast<int>(parse_long(p[3]));
    cfg.min_leaf = static_cast<int>(parse_long(p[4]));
    auto b = expect(in, "base", 1);
    const double base_value = parse_double(b[1]);
    std::vector<RegressionTree> trees;
    trees.reserve(static_cast<std::size_t>(cfg.n_rounds));
    for (int t = 0; t < cfg.n_rounds; ++t) trees.push_back(read_tree(in));
    read_footer(in, "gbt");
    return GradientBoostedTrees::from_parts(cfg, scaler, base_value, std::move(trees));
}

void save_model(std::ostream& out, const SvrModel& model) {
    if (!model.fitted()) throw std::logic_error("save: svr not fitted");
    write_header(out, "svr");
    write_scaler(out, model.scaler());
    const SvrConfig& c = model.config();
    out << "params " << format_exact(c.c) << ' ' << format_exact(c.epsilon_ghz) << ' '
        << format_exact(c.gamma) << ' ' << format_exact(c.tol) << ' ' << c.max_passes << '\n';
    out << "bias " << format_exact(model.bias()) << '\n';
    const auto& sv = model.support_features_scaled();
    const auto& coef = model.support_coefficients();
    out << "support " << sv.rows() << '\n';
    for (Eigen::Index k = 0; k < sv.rows(); ++k)
        out << "sv " << format_exact(coef[k]) << ' ' << format_exact(sv(k, 0)) << ' '
            << format_exact(sv(k, 1)) << '\n';
    write_footer(out, "svr");
}

SvrModel load_svr(std::istream& in) {
    read_header(in, "svr");
    FeatureScaler scaler = read_scaler(in);
    auto p = expect(in, "params", 5);
    SvrConfig cfg;
    cfg.c = parse_double(p[1]);
    cfg.epsilon_ghz = parse_double(p[2]);
    cfg.gamma = parse_double(p[3]);
    cfg.tol = parse_double(p[4]);
    cfg.max_passes = parse_long(p[5]);
    auto b = expect(in, "bias", 1);
    const double bias = parse_double(b[1]);
    auto s = expect(in, "support", 1);
    const long n_sv = parse_long(s[1]);
    Eigen::MatrixX2d features(n_sv, 2);
    Eigen::VectorXd coefficients(n_sv);
    for (long k = 0; k < n_sv; ++k) {
        auto t = expect(in, "sv", 3);
        coefficients[k] = parse_double(t[1]);
        features(k, 0) = parse_double(t[2]);
        features(k, 1) = parse_double(t[3]);
    }
    read_footer(in, "svr");
    return SvrModel::from_parts(cfg, scaler, std::move(features), std::move(coefficients), bias);
}

void save_model(std::ostream& out, const StackedModel& model) {
    if (!model.fitted()) throw std::logic_error("save: stacked model not fitted");
    write_header(out, "stacked");
    out << "mode " << (model.mode() == StackMode::paper ? "paper" : "out_of_fold") << '\n';
    const Eigen::Vector4d w = model.weights();
    out << "weights " << format_exact(w[0]) << ' ' << format_exact(w[1]) << ' '
        << format_exact(w[2]) << ' ' << format_exact(w[3]) << '\n';
    out << "fallback " << (model.used_fallback() ? 1 : 0) << '\n';
    save_model(out, model.forest());
    save_model(out, model.svr());
    save_model(out, model.gbt());
    write_footer(out, "stacked");
}

StackedModel load_stacked(std::istream& in) {
    read_header(in, "stacked");
    auto m = expect(in, "mode", 1);
    StackMode mode;
    if (m[1] == "paper")
        mode = StackMode::paper;
    else if (m[1] == "out_of_fold")
        mode = StackMode::out_of_fold;
    else
        bad("unknown stacking mode '" + m[1] + "'");
    auto w = expect(in, "weights", 4);
    Eigen::Vector4d weights{parse_double(w[1]), parse_double(w[2]), parse_double(w[3]),
                            parse_double(w[4])};
    auto f = expect(in, "fallback", 1);
    const bool fallback = parse_long(f[1]) != 0;
    RandomForest forest = load_forest(in);
    SvrModel svr = load_svr(in);
    GradientBoostedTrees gbt = load_gbt(in);
    read_footer(in, "stacked");
    return StackedModel::from_parts(mode, weights, fallback, std::move(forest), std::move(svr),
                                    std::move(gbt));
}

template <typename Model>
void save_model_file(const std::filesystem::path& path, const Model& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    save_model(out, model);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

template void save_model_file<RandomForest>(const std::filesystem::path&, const RandomForest&);
template void save_model_file<GradientBoostedTrees>(const std::filesystem::path&,
                                                    const GradientBoostedTrees&);
template void save_model_file<SvrModel>(const std::filesystem::path&, const SvrModel&);
template void save_model_file<StackedModel>(const std::filesystem::path&, const StackedModel&);

namespace {
std::ifstream open_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    return in;
}
} // namespace

RandomForest load_forest_file(const std::filesystem::path& path) {
    auto in = open_model(path);
    return load_forest(in);
}
GradientBoostedTrees load_gbt_file(const std::filesystem::path& path) {
    auto in = open_model(path);
    return load_gbt(in);
}
SvrModel load_svr_file(const std::filesystem::path& path) {
    auto in = open_model(path);
    return load_svr(in);
}
StackedModel load_stacked_file(const std::filesystem::path& path) {
    auto in = open_model(path);
    return load_stacked(in);
}

} // namespace miniant
