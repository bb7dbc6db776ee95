#ifndef MINIANT_QDPSO_HPP
#define MINIANT_QDPSO_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "miniant/physics.hpp"
#include "miniant/rng.hpp"

namespace miniant::qdpso {

// Design vector: (d_inner_mm, d_outer_mm).
using Position = Eigen::Vector2d;

// Per-dimension sampling box for initialization. Defaults span the feasible
// diameter region; initialization repairs any draw that lands outside it.
struct Bounds {
    Position lo{1.2, 1.2};
    Position hi{12.0, 12.0};
};

struct Particle {
    Position position;
    Position personal_best;
    double personal_best_fitness = 0.0;
};

struct TracePoint {
    int iteration = 0;
    double global_best_fitness = 0.0;
    Position global_best{0.0, 0.0};
};

struct SwarmState {
    std::vector<Particle> particles;
    Position global_best{0.0, 0.0};
    double global_best_fitness = 0.0;
    int iteration = 0;
    std::vector<TracePoint> trace;
    Rng rng{0};
};

struct SwarmConfig {
    int swarm_size = 30;
    int max_iterations = 100;
    int stagnation_window = 20;
    double stagnation_epsilon = 0.0; // 0 disables the stagnation stop
    std::optional<double> fitness_threshold;
    double beta_start = 1.0; // contraction-expansion schedule, linear decay
    double beta_end = 0.5;
    double target_ghz = kReferenceFrequencyGhz;
    Bounds bounds;
    std::uint64_t seed = 42;

    // Extension point for penalty terms beyond the frequency offset; empty
    // selects the built-in objective. Must be pure for determinism.
    std::function<double(const Position&)> objective;

    void validate() const;
};

// Inverse frequency-offset objective, range (0, 1]; minimized, so pushing the
// resonance away from the target scores better. Equals 1 only at f_r = target.
double fitness(const Position& position, double target_ghz);

// One quantum jump with explicit randomness, before repair:
// x[d] = p[d] + sign[d] * beta * |p[d] - g[d]| * ln(1/u[d]).
Position quantum_jump(const Position& personal_best, const Position& global_best, double beta,
                      const Eigen::Vector2d& u, const Eigen::Vector2d& sign);

// Draws u in (0,1) and an equiprobable sign per dimension from rng.
Position quantum_update(const Position& personal_best, const Position& global_best, double beta,
                        Rng& rng);

// Maps any input to a point satisfying the feasibility predicate: finite
// coordinates are clamped into the region, anything else is resampled.
Position repair(Position position, const FeasibleRegion& region, Rng& rng);

SwarmState init_swarm(const SwarmConfig& config);

// Advances every particle once: jump around the personal best, repair,
// re-evaluate, then commit personal/global bests in particle-index order.
void step(SwarmState& state, const SwarmConfig& config);

struct RunResult {
    Position best_position{0.0, 0.0};
    double best_fitness = 0.0;
    std::vector<TracePoint> trace;
    int iterations = 0;
};

RunResult run(const SwarmConfig& config);

// CSV with header `iteration,global_best_fitness,d_inner_mm,d_outer_mm`.
std::string render_trace_csv(const std::vector<TracePoint>& trace);

} // namespace miniant::qdpso

#endif
