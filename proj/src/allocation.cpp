#include "popmc/allocation.hpp"

#include <cmath>

#include "popmc/errors.hpp"

namespace popmc::alloc {

Share compute_share(const AllocationConfig& config) {
  if (config.n_cells < 1) {
    throw BudgetTooSmall("allocation requires at least one cell");
  }
  const std::int64_t margin = 2 * config.n_cells;
  switch (config.mode) {
  case AllocationConfig::Mode::total_count: {
    if (config.parameter <= margin) {
      throw BudgetTooSmall("total particle budget must exceed 2 per cell");
    }
    return {config.parameter, config.parameter - margin};
  }
  case AllocationConfig::Mode::per_cell_average: {
    if (config.parameter <= 2) {
      throw BudgetTooSmall("per-cell average must exceed 2");
    }
    return {config.parameter * config.n_cells, (config.parameter - 2) * config.n_cells};
  }
  }
  throw BudgetTooSmall("unknown allocation mode");
}

std::vector<std::int64_t> allocate_objectives(const std::vector<CellEnergy>& snapshot,
                                              std::int64_t n_share,
                                              rng::StreamKey stream) {
  double total = 0.0;
  for (const auto& cell : snapshot) {
    if (cell.census < 0.0 || cell.source < 0.0) {
      throw InvalidWeight("cell energies must be non-negative");
    }
    total += cell.census + cell.source;
  }
  if (!(total > 0.0)) {
    throw DegenerateDomain("all cells have zero energy");
  }

  const auto alloc_key = stream.derive(rng::Purpose::allocation);
  std::vector<std::int64_t> objectives(snapshot.size(), 0);
  for (std::size_t m = 0; m < snapshot.size(); ++m) {
    const double energy = snapshot[m].census + snapshot[m].source;
    if (!(energy > 0.0)) {
      continue; // skipped entirely: no particles, no draw
    }
    const double target = energy / total * static_cast<double>(n_share);
    const double base = std::floor(target);
    const double frac = target - base;
    rng::Generator gen(alloc_key.derive(m));
    const std::int64_t rounded =
        static_cast<std::int64_t>(base) + (gen.uniform01() < frac ? 1 : 0);
    const std::int64_t floor_count =
        (snapshot[m].census > 0.0 ? 1 : 0) + (snapshot[m].source > 0.0 ? 1 : 0);
    objectives[m] = std::max(rounded, floor_count);
  }
  return objectives;
}

} // namespace popmc::alloc
