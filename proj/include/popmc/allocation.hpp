// Energy-proportional distribution of a global particle budget across
// cells. Stochastic rounding keeps the per-cell expectation exactly
// proportional to cell energy while a two-per-cell margin reserved up
// front guarantees the realized total stays below the user budget even
// when every cell triggers the minimum-count fail-safe.

#ifndef POPMC_ALLOCATION_HPP
#define POPMC_ALLOCATION_HPP

#include <cstdint>
#include <vector>

#include "popmc/rng.hpp"

namespace popmc::alloc {

struct AllocationConfig {
  enum class Mode { total_count, per_cell_average };
  Mode mode = Mode::total_count;
  std::int64_t parameter = 0; // N_total (total_count) or N_obj_usr (per_cell_average)
  std::int64_t n_cells = 0;
};

struct Share {
  std::int64_t n_total = 0;
  std::int64_t n_share = 0;
};

// total_count:      N_share = N_total - 2 c_M          (requires N_total > 2 c_M)
// per_cell_average: N_share = (N_obj_usr - 2) c_M,
//                   N_total = N_obj_usr c_M            (requires N_obj_usr > 2)
// Throws BudgetTooSmall when the margin would be exhausted.
Share compute_share(const AllocationConfig& config);

struct CellEnergy {
  double census = 0.0; // E_r
  double source = 0.0; // S
};

// Per-cell objective counts for one iteration. Cells with zero energy get
// zero. Otherwise, with q = (E_r + S) / E_tot and t = q * N_share:
//   N_obj = max( floor(t) + Bernoulli(frac(t)),  (E_r > 0) + (S > 0) )
// The stochastic rounding makes E[N_obj] = q * N_share whenever the
// fail-safe (second argument of the max) does not bind. One uniform is
// drawn per energetic cell, from a stream derived by cell index.
// Throws DegenerateDomain when every cell has zero energy.
std::vector<std::int64_t> allocate_objectives(const std::vector<CellEnergy>& snapshot,
                                              std::int64_t n_share,
                                              rng::StreamKey stream);

} // namespace popmc::alloc

#endif // POPMC_ALLOCATION_HPP
