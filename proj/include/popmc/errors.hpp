#ifndef POPMC_ERRORS_HPP
#define POPMC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace popmc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cell with no energy at all: population control has nothing to target.
struct DegenerateCell : Error {
  using Error::Error;
};

struct InvalidObjective : Error {
  using Error::Error;
};

struct InvalidWeight : Error {
  using Error::Error;
};

// Global particle budget below the 2-per-cell fail-safe margin.
struct BudgetTooSmall : Error {
  using Error::Error;
};

// Allocation over a snapshot whose total energy is zero.
struct DegenerateDomain : Error {
  using Error::Error;
};

struct NonPhysicalTemperature : Error {
  using Error::Error;
};

// Event-loop guard tripped while tracking a single particle.
struct TrackingOverflow : Error {
  using Error::Error;
};

struct InsufficientRuns : Error {
  using Error::Error;
};

struct DegenerateReference : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

} // namespace popmc

#endif // POPMC_ERRORS_HPP
