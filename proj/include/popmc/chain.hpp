// Iterated roulette+splitting chain on a weight vector of unit total mass,
// used to measure how fast the control loop drives a population toward
// N_obj equal weights. A fixed source population can be attached; it is
// emitted once and never rouletted or split, only the census-like
// population evolves.

#ifndef POPMC_CHAIN_HPP
#define POPMC_CHAIN_HPP

#include <cstdint>
#include <vector>

#include "popmc/popcontrol.hpp"
#include "popmc/rng.hpp"

namespace popmc::chain {

struct ChainState {
  std::vector<double> ini_weights; // evolving population
  double ini_mass = 0.0;           // invariant: restored to 1 - S after each iteration
  pop::EmittedSet vol;             // frozen source particles (count 0 if S = 0)
  std::int64_t iteration = 0;

  std::int64_t particle_count() const {
    return static_cast<std::int64_t>(ini_weights.size()) + vol.count;
  }

  friend bool operator==(const ChainState&, const ChainState&) = default;
};

struct ExperimentConfig {
  std::int64_t n0 = 1;        // initial population size
  std::int64_t n_obj = 1;     // target population size
  double source = 0.0;        // S in [0, 1); initial mass is 1 - S
  pop::SplittingMode mode = pop::SplittingMode::non_conservative;
  std::int64_t iterations = 0;
  std::int64_t runs = 1;
  std::uint64_t seed = 0;
};

// N0 i.i.d. U(0,1) weights rescaled to total mass 1 - S; when S > 0 the
// source population is planned once with w_obj = 1 / N_obj.
ChainState init_chain(const ExperimentConfig& config, rng::StreamKey run_stream);

// l1 distance of the present weights to the uniform distribution with
// N_obj particles: sum_i |w_i - 1/N_obj| over census and source weights.
double distance_to_uniform(const ChainState& state, std::int64_t n_obj);

// One roulette+splitting+renormalization pass over the census population.
// w_obj is recomputed from the current census mass plus S; afterwards the
// census mass is restored to 1 - S so the global mass stays exactly 1.
void iterate_chain(ChainState& state, const ExperimentConfig& config,
                   rng::StreamKey run_stream);

struct TraceRow {
  std::int64_t run = 0;
  std::int64_t iteration = 0;
  std::int64_t particles = 0;
  double distance = 0.0;
};

using Trace = std::vector<TraceRow>;

// All runs of the experiment; rows ordered by (run, iteration) with
// iteration = 1..iterations. Runs are independent and may execute on
// several threads; the trace is identical for any thread count.
Trace run_experiment(const ExperimentConfig& config, unsigned n_threads = 1);

} // namespace popmc::chain

#endif // POPMC_CHAIN_HPP
