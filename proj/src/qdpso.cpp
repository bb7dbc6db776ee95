#include "miniant/qdpso.hpp"

#include <cmath>
#include <stdexcept>

#include "miniant/format.hpp"

namespace miniant::qdpso {

namespace {

constexpr double kClampEpsilonMm = 1e-6;

double evaluate(const SwarmConfig& config, const Position& position) {
    return config.objective ? config.objective(position) : fitness(position, config.target_ghz);
}

double beta_at(const SwarmConfig& config, int completed_iterations) {
    if (config.max_iterations <= 1) return config.beta_start;
    double t = static_cast<double>(completed_iterations) /
               static_cast<double>(config.max_iterations - 1);
    if (t > 1.0) t = 1.0;
    return config.beta_start + (config.beta_end - config.beta_start) * t;
}

void refresh_global_best(SwarmState& state) {
    for (const auto& p : state.particles) {
        if (p.personal_best_fitness < state.global_best_fitness) {
            state.global_best_fitness = p.personal_best_fitness;
            state.global_best = p.personal_best;
        }
    }
}

} // namespace

void SwarmConfig::validate() const {
    if (swarm_size < 2) throw std::invalid_argument("swarm config: swarm_size must be >= 2");
    if (max_iterations < 1)
        throw std::invalid_argument("swarm config: max_iterations must be >= 1");
    if (!(beta_end > 0.0) || !(beta_end <= beta_start))
        throw std::invalid_argument("swarm config: need 0 < beta_end <= beta_start");
    if (!(target_ghz > 0.0)) throw std::invalid_argument("swarm config: target_ghz must be > 0");
    if (stagnation_window < 1)
        throw std::invalid_argument("swarm config: stagnation_window must be >= 1");
    if (!(stagnation_epsilon >= 0.0))
        throw std::invalid_argument("swarm config: stagnation_epsilon must be >= 0");
    for (int d = 0; d < 2; ++d) {
        if (!std::isfinite(bounds.lo[d]) || !std::isfinite(bounds.hi[d]) ||
            bounds.lo[d] > bounds.hi[d])
            throw std::invalid_argument("swarm config: bounds must be finite with lo <= hi");
    }
}

double fitness(const Position& position, double target_ghz) {
    const double f_r = resonant_frequency_ghz(reference_geometry(position[0], position[1]));
    return 1.0 / (1.0 + std::abs(f_r - target_ghz));
}

Position quantum_jump(const Position& personal_best, const Position& global_best, double beta,
                      const Eigen::Vector2d& u, const Eigen::Vector2d& sign) {
    const Eigen::Vector2d spread = (personal_best - global_best).cwiseAbs();
    Position next;
    for (int d = 0; d < 2; ++d)
        next[d] = personal_best[d] + sign[d] * beta * spread[d] * std::log(1.0 / u[d]);
    return next;
}

Position quantum_update(const Position& personal_best, const Position& global_best, double beta,
                        Rng& rng) {
    Eigen::Vector2d u, sign;
    for (int d = 0; d < 2; ++d) {
        u[d] = rng.uniform_open();
        sign[d] = rng.coin() ? 1.0 : -1.0;
    }
    return quantum_jump(personal_best, global_best, beta, u, sign);
}

Position repair(Position position, const FeasibleRegion& region, Rng& rng) {
    if (std::isfinite(position[0]) && std::isfinite(position[1])) {
        if (region.contains(position[0], position[1])) return position;
        // Clamp the outer diameter first so the inner interval is never empty,
        // then pull the inner diameter into its open interval.
        const double outer_lo = region.inner_min_mm + region.min_gap_mm + 2.0 * kClampEpsilonMm;
        double d_out = std::min(std::max(position[1], outer_lo), region.outer_max_mm);
        double d_in = std::min(std::max(position[0], region.inner_min_mm + kClampEpsilonMm),
                               d_out - region.min_gap_mm - kClampEpsilonMm);
        if (region.contains(d_in, d_out)) return Position{d_in, d_out};
    }
    Position sample;
    do {
        sample[0] = rng.uniform(region.inner_min_mm, region.outer_max_mm);
        sample[1] = rng.uniform(region.inner_min_mm, region.outer_max_mm);
    } while (!region.contains(sample[0], sample[1]));
    return sample;
}

SwarmState init_swarm(const SwarmConfig& config) {
    config.validate();
    const FeasibleRegion region;

    SwarmState state;
    state.rng = Rng(config.seed);
    state.particles.resize(static_cast<std::size_t>(config.swarm_size));
    for (auto& p : state.particles) {
        Position raw{state.rng.uniform(config.bounds.lo[0], config.bounds.hi[0]),
                     state.rng.uniform(config.bounds.lo[1], config.bounds.hi[1])};
        p.position = repair(raw, region, state.rng);
        p.personal_best = p.position;
        p.personal_best_fitness = evaluate(config, p.position);
    }

    state.global_best = state.particles.front().personal_best;
    state.global_best_fitness = state.particles.front().personal_best_fitness;
    refresh_global_best(state);
    state.iteration = 0;
    state.trace.push_back(TracePoint{0, state.global_best_fitness, state.global_best});
    return state;
}

void step(SwarmState& state, const SwarmConfig& config) {
    const FeasibleRegion region;
    const double beta = beta_at(config, state.iteration);
    const Position attractor = state.global_best; // frozen for the whole sweep

    for (auto& p : state.particles) {
        const Position proposal =
            repair(quantum_update(p.personal_best, attractor, beta, state.rng), region,
                   state.rng);
        const double value = evaluate(config, proposal);
        p.position = proposal;
        if (value < p.personal_best_fitness) {
            p.personal_best = proposal;
            p.personal_best_fitness = value;
        }
    }

    refresh_global_best(state);
    ++state.iteration;
    state.trace.push_back(TracePoint{state.iteration, state.global_best_fitness,
                                     state.global_best});
}

RunResult run(const SwarmConfig& config) {
    SwarmState state = init_swarm(config);

    for (int t = 0; t < config.max_iterations; ++t) {
        step(state, config);

        // Thresholds at or above 1.0 can never discriminate (the objective
        // codomain is (0, 1]) and are treated as disabled.
        if (config.fitness_threshold && *config.fitness_threshold < 1.0 &&
            state.global_best_fitness <= *config.fitness_threshold)
            break;

        if (config.stagnation_epsilon > 0.0 &&
            state.iteration >= config.stagnation_window) {
            const std::size_t end = state.trace.size() - 1;
            const double improvement =
                state.trace[end - static_cast<std::size_t>(config.stagnation_window)]
                    .global_best_fitness -
                state.trace[end].global_best_fitness;
            if (improvement < config.stagnation_epsilon) break;
        }
    }

    return RunResult{state.global_best, state.global_best_fitness, state.trace, state.iteration};
}

std::string render_trace_csv(const std::vector<TracePoint>& trace) {
    std::string out = "iteration,global_best_fitness,d_inner_mm,d_outer_mm\n";
    for (const auto& t : trace) {
        out += std::to_string(t.iteration);
        out += ',';
        out += format_exact(t.global_best_fitness);
        out += ',';
        out += format_exact(t.global_best[0]);
        out += ',';
        out += format_exact(t.global_best[1]);
        out += '\n';
    }
    return out;
}

} // namespace miniant::qdpso
