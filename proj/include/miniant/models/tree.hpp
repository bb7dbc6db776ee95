#ifndef MINIANT_MODELS_TREE_HPP
#define MINIANT_MODELS_TREE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "miniant/rng.hpp"

namespace miniant {

struct TreeConfig {
    int max_depth = 12;
    int min_leaf = 1;
    int mtry = 2; // features considered per split; < 2 requires an rng
};

// CART regression tree on (already scaled) features: greedy variance-reduction
// splits, mean-value leaves. The shared weak learner of forest and boosting.
class RegressionTree {
  public:
    struct Node {
        int feature = -1; // -1 marks a leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        double value = 0.0;

        bool is_leaf() const { return feature < 0; }
    };

    void fit(const Eigen::MatrixX2d& features, const Eigen::VectorXd& targets,
             const TreeConfig& config, Rng* rng = nullptr);

    // Fits on a row subset (bootstrap samples repeat indices).
    void fit_subset(const Eigen::MatrixX2d& features, const Eigen::VectorXd& targets,
                    const std::vector<Eigen::Index>& rows, const TreeConfig& config,
                    Rng* rng = nullptr);

    double predict_one(const Eigen::Vector2d& x) const;
    Eigen::VectorXd predict(const Eigen::MatrixX2d& features) const;

    bool fitted() const { return !nodes_.empty(); }
    const std::vector<Node>& nodes() const { return nodes_; }
    static RegressionTree from_nodes(std::vector<Node> nodes);

  private:
    int build(const Eigen::MatrixX2d& features, const Eigen::VectorXd& targets,
              std::vector<Eigen::Index>& rows, std::size_t begin, std::size_t end, int depth,
              const TreeConfig& config, Rng* rng);

    std::vector<Node> nodes_;
};

} // namespace miniant

#endif
