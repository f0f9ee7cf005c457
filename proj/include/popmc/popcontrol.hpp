// Cell-based population control: per-cell source emission sizing,
// Russian Roulette for light particles, splitting (conservative or not)
// for heavy ones, and a final renormalization that pins the total weight
// of the cell to its exact energy content.

#ifndef POPMC_POPCONTROL_HPP
#define POPMC_POPCONTROL_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "popmc/rng.hpp"

namespace popmc::pop {

enum class SplittingMode {
  // Clones share the parent's energy exactly: each gets w/N_split.
  conservative,
  // Every survivor is reset to the objective weight; the renormalization
  // step corrects the resulting energy mismatch.
  non_conservative,
};

struct CellControlInput {
  std::vector<double> initial_weights; // census particles, all > 0
  double source_energy = 0.0;          // energy to emit this step, >= 0
  std::int64_t objective_count = 1;    // target particle count, >= 1
  SplittingMode mode = SplittingMode::non_conservative;
};

// Particles emitted to carry one source term: `count` particles of equal
// weight `weight` (post-renormalization).
struct EmittedSet {
  std::int64_t count = 0;
  double weight = 0.0;

  double total() const { return static_cast<double>(count) * weight; }
};

// A census particle that survived roulette/splitting. `parent` indexes the
// input weight it descends from, so callers can clone opaque payloads.
struct KeptParticle {
  double weight = 0.0;
  std::size_t parent = 0;
};

struct ControlCounters {
  std::int64_t killed = 0;         // roulette losses
  std::int64_t survived_rr = 0;    // roulette survivors promoted to w_obj
  std::int64_t split_events = 0;   // particles that produced >= 2 copies
  std::int64_t clones_created = 0; // extra copies beyond the original
};

struct CellControlOutcome {
  std::vector<KeptParticle> kept; // post-control census particles
  EmittedSet emitted;             // source particles (count 0 if no source)
  double objective_weight = 0.0;  // w_obj used for this invocation
  double renorm_factor = 1.0;     // c applied to kept and emitted weights
  ControlCounters counters;

  double kept_total() const {
    double s = 0.0;
    for (const auto& p : kept) s += p.weight;
    return s;
  }
};

// Target weight (E_r + S) / N_obj.
// Throws DegenerateCell if E_r + S <= 0, InvalidObjective if N_obj < 1.
double compute_objective_weight(double census_energy, double source_energy,
                                std::int64_t objective_count);

// Number and weight of particles representing a positive source term:
// N_vol = max(1, floor(S / w_obj)), w_vol = S / N_vol.
// Returns {0, 0} when S <= 0 (caller skips emission).
EmittedSet plan_source_emission(double source_energy, double objective_weight);

// Roulette/split a single weight given one uniform draw. Appends the
// resulting weights to `out` and returns how many were appended:
//   I = floor(w/w_obj), R = w/w_obj - I
//   I == 0: killed if R < u, else promoted to w_obj
//   I >= 1: N_split = I + (u < R); conservative copies carry w/N_split,
//           non-conservative copies carry w_obj
// Throws InvalidWeight on non-positive w or w_obj.
std::size_t roulette_split(double weight, double objective_weight, double u,
                           SplittingMode mode, std::vector<double>& out);

// Scale `weights` so they sum to `target`; returns (scaled, c). When all
// weights are bit-identical the outputs are set to target/n directly,
// which keeps exactly-uniform populations exactly uniform.
std::pair<std::vector<double>, double> renormalize(std::span<const double> weights,
                                                   double target);

// Full per-cell control pass over census + one source term. One uniform
// is consumed per initial particle, from a stream derived per particle
// index, so the outcome is independent of traversal order.
CellControlOutcome apply_cell_control(const CellControlInput& input,
                                      rng::StreamKey cell_stream);

// Same control pass with several independent source terms (e.g. volumic
// emission plus a boundary source feeding the same cell). w_obj accounts
// for all of them and each source gets its own emitted set, planned with
// the common w_obj. `apply_cell_control` is the one-source special case.
struct MultiSourceOutcome {
  std::vector<KeptParticle> kept;
  std::vector<EmittedSet> emitted; // one entry per input source term
  double objective_weight = 0.0;
  double renorm_factor = 1.0;
  ControlCounters counters;
};

MultiSourceOutcome apply_cell_control_multi(std::span<const double> initial_weights,
                                            std::span<const double> source_energies,
                                            std::int64_t objective_count,
                                            SplittingMode mode,
                                            rng::StreamKey cell_stream);

} // namespace popmc::pop

#endif // POPMC_POPCONTROL_HPP
