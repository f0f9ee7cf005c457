#include "popmc/chain.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "popmc/errors.hpp"

namespace popmc::chain {

namespace {

void validate(const ExperimentConfig& config) {
  if (config.n0 < 1) throw ConfigError("n0 must be >= 1");
  if (config.n_obj < 1) throw ConfigError("n_obj must be >= 1");
  if (config.source < 0.0 || config.source >= 1.0) {
    throw ConfigError("source must lie in [0, 1)");
  }
}

} // namespace

ChainState init_chain(const ExperimentConfig& config, rng::StreamKey run_stream) {
  validate(config);
  ChainState state;
  state.ini_mass = 1.0 - config.source;

  state.ini_weights.resize(static_cast<std::size_t>(config.n0));
  if (config.n0 == 1) {
    state.ini_weights[0] = state.ini_mass;
  } else {
    rng::Generator gen(run_stream.derive(rng::Purpose::init));
    double sum = 0.0;
    for (auto& w : state.ini_weights) {
      // Draws of exactly zero would violate the positivity hypothesis.
      do {
        w = gen.uniform01();
      } while (w == 0.0);
      sum += w;
    }
    const double scale = state.ini_mass / sum;
    for (auto& w : state.ini_weights) w *= scale;
  }

  if (config.source > 0.0) {
    const double w_obj = 1.0 / static_cast<double>(config.n_obj);
    state.vol = pop::plan_source_emission(config.source, w_obj);
  }
  return state;
}

double distance_to_uniform(const ChainState& state, std::int64_t n_obj) {
  const double w_ref = 1.0 / static_cast<double>(n_obj);
  double d = 0.0;
  for (double w : state.ini_weights) d += std::abs(w - w_ref);
  d += static_cast<double>(state.vol.count) * std::abs(state.vol.weight - w_ref);
  return d;
}

void iterate_chain(ChainState& state, const ExperimentConfig& config,
                   rng::StreamKey run_stream) {
  const double w_obj = (state.ini_mass + config.source) / static_cast<double>(config.n_obj);

  // Roulette/split each census particle with its own derived stream.
  const auto iter_key =
      run_stream.derive(static_cast<std::uint64_t>(state.iteration + 1))
          .derive(rng::Purpose::roulette);
  std::vector<double> survivors;
  survivors.reserve(state.ini_weights.size() + 8);
  for (std::size_t p = 0; p < state.ini_weights.size(); ++p) {
    rng::Generator gen(iter_key.derive(p));
    pop::roulette_split(state.ini_weights[p], w_obj, gen.uniform01(), config.mode,
                        survivors);
  }
  if (survivors.empty()) {
    // The census population never empties; matches the non-void rule.
    survivors.push_back(state.ini_mass);
  }

  auto [scaled, c] = pop::renormalize(survivors, state.ini_mass);
  (void)c;
  state.ini_weights = std::move(scaled);
  ++state.iteration;
}

Trace run_experiment(const ExperimentConfig& config, unsigned n_threads) {
  validate(config);
  if (config.iterations < 0) throw ConfigError("iterations must be >= 0");
  if (config.runs < 1) throw ConfigError("runs must be >= 1");

  const auto root = rng::StreamKey::root(config.seed);
  const auto iters = static_cast<std::size_t>(config.iterations);
  Trace trace(static_cast<std::size_t>(config.runs) * iters);

  auto run_one = [&](std::int64_t run) {
    const auto run_stream = root.derive(static_cast<std::uint64_t>(run));
    ChainState state = init_chain(config, run_stream);
    TraceRow* rows = trace.data() + static_cast<std::size_t>(run) * iters;
    for (std::size_t l = 0; l < iters; ++l) {
      iterate_chain(state, config, run_stream);
      rows[l] = {run, state.iteration, state.particle_count(),
                 distance_to_uniform(state, config.n_obj)};
    }
  };

  if (n_threads <= 1 || config.runs == 1) {
    for (std::int64_t run = 0; run < config.runs; ++run) run_one(run);
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> workers;
    const unsigned count = std::min<unsigned>(n_threads, static_cast<unsigned>(config.runs));
    workers.reserve(count);
    for (unsigned t = 0; t < count; ++t) {
      workers.emplace_back([&] {
        for (std::int64_t run = next.fetch_add(1); run < config.runs;
             run = next.fetch_add(1)) {
          run_one(run);
        }
      });
    }
    for (auto& w : workers) w.join();
  }
  return trace;
}

} // namespace popmc::chain
