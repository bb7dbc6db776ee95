#include "miniant/models/tree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace miniant {

namespace {

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double score = 0.0; // sum of child (sum^2 / n) terms; higher is better
};

} // namespace

void RegressionTree::fit(const Eigen::MatrixX2d& features, const Eigen::VectorXd& targets,
                         const TreeConfig& config, Rng* rng) {
    std::vector<Eigen::Index> rows(static_cast<std::size_t>(features.rows()));
    std::iota(rows.begin(), rows.end(), Eigen::Index{0});
    fit_subset(features, targets, rows, config, rng);
}

void RegressionTree::fit_subset(const Eigen::MatrixX2d& features, const Eigen::VectorXd& targets,
                                const std::vector<Eigen::Index>& rows, const TreeConfig& config,
                                Rng* rng) {
    if (rows.empty()) throw std::invalid_argument("tree: cannot fit on empty data");
    if (features.rows() != targets.size())
        throw std::invalid_argument("tree: features/targets size mismatch");
    if (config.min_leaf < 1) throw std::invalid_argument("tree: min_leaf must be >= 1");

    nodes_.clear();
    std::vector<Eigen::Index> work = rows;
    build(features, targets, work, 0, work.size(), 0, config, rng);
}

int RegressionTree::build(const Eigen::MatrixX2d& features, const Eigen::VectorXd& targets,
                          std::vector<Eigen::Index>& rows, std::size_t begin, std::size_t end,
                          int depth, const TreeConfig& config, Rng* rng) {
    const std::size_t n = end - begin;
    double sum = 0.0, lo = targets[rows[begin]], hi = lo;
    for (std::size_t k = begin; k < end; ++k) {
        const double y = targets[rows[k]];
        sum += y;
        lo = std::min(lo, y);
        hi = std::max(hi, y);
    }
    const double mean = sum / static_cast<double>(n);

    const int node_index = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{});
    nodes_[node_index].value = mean;

    const bool splittable = depth < config.max_depth &&
                            n >= 2 * static_cast<std::size_t>(config.min_leaf) && lo < hi;
    if (!splittable) return node_index;

    int first_feature = 0, last_feature = 1;
    if (config.mtry < 2) {
        if (!rng) throw std::invalid_argument("tree: mtry < 2 requires an rng");
        first_feature = last_feature = static_cast<int>(rng->below(2));
    }

    SplitChoice best;
    std::vector<std::pair<double, double>> column(n); // (feature value, target)
    for (int f = first_feature; f <= last_feature; ++f) {
        for (std::size_t k = 0; k < n; ++k) {
            const Eigen::Index r = rows[begin + k];
            column[k] = {features(r, f), targets[r]};
        }
        std::sort(column.begin(), column.end());

        double left_sum = 0.0;
        for (std::size_t k = 1; k < n; ++k) {
            left_sum += column[k - 1].second;
            if (column[k - 1].first == column[k].first) continue;
            if (k < static_cast<std::size_t>(config.min_leaf) ||
                n - k < static_cast<std::size_t>(config.min_leaf))
                continue;
            const double right_sum = sum - left_sum;
            const double score = left_sum * left_sum / static_cast<double>(k) +
                                 right_sum * right_sum / static_cast<double>(n - k);
            if (!best.found || score > best.score) {
                best.found = true;
                best.feature = f;
                best.threshold = 0.5 * (column[k - 1].first + column[k].first);
                best.score = score;
            }
        }
    }

    // No split can improve on the parent: gain is score - sum^2/n.
    if (!best.found || !(best.score > sum * sum / static_cast<double>(n)))
        return node_index;

    const auto mid_it =
        std::stable_partition(rows.begin() + static_cast<std::ptrdiff_t>(begin),
                              rows.begin() + static_cast<std::ptrdiff_t>(end),
                              [&](Eigen::Index r) { return features(r, best.feature) <= best.threshold; });
    const std::size_t mid = static_cast<std::size_t>(mid_it - rows.begin());
    if (mid == begin || mid == end) return node_index; // threshold rounding collapse

    nodes_[node_index].feature = best.feature;
    nodes_[node_index].threshold = best.threshold;
    const int left = build(features, targets, rows, begin, mid, depth + 1, config, rng);
    const int right = build(features, targets, rows, mid, end, depth + 1, config, rng);
    nodes_[node_index].left = left;
    nodes_[node_index].right = right;
    return node_index;
}

double RegressionTree::predict_one(const Eigen::Vector2d& x) const {
    if (nodes_.empty()) throw std::logic_error("tree: not fitted");
    int at = 0;
    while (!nodes_[static_cast<std::size_t>(at)].is_leaf()) {
        const Node& nd = nodes_[static_cast<std::size_t>(at)];
        at = (x[nd.feature] <= nd.threshold) ? nd.left : nd.right;
    }
    return nodes_[static_cast<std::size_t>(at)].value;
}

Eigen::VectorXd RegressionTree::predict(const Eigen::MatrixX2d& features) const {
    Eigen::VectorXd out(features.rows());
    for (Eigen::Index i = 0; i < features.rows(); ++i)
        out[i] = predict_one(features.row(i).transpose());
    return out;
}

RegressionTree RegressionTree::from_nodes(std::vector<Node> nodes) {
    const int n = static_cast<int>(nodes.size());
    for (const Node& nd : nodes) {
        if (nd.is_leaf()) continue;
        if (nd.feature > 1 || nd.left < 0 || nd.left >= n || nd.right < 0 || nd.right >= n)
            throw std::invalid_argument("tree: malformed node table");
    }
    RegressionTree t;
    t.nodes_ = std::move(nodes);
    return t;
}

} // namespace miniant
