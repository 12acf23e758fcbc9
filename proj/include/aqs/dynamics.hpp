#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "aqs/propagator.hpp"
#include "aqs/schedule.hpp"
#include "aqs/spectral.hpp"

namespace aqs {

enum class Strategy {
  UniformSpeed,    // s = t/T, T set by the worst point of the sweep
  LocalAdiabatic,  // ds/dt = eps * gap^2 / M(s) at every s
};

std::string_view to_string(Strategy strategy);

struct Knot {
  double t = 0.0;
  double s = 0.0;
};

/// Monotone map s(t) on [0, T], piecewise linear between knots.
struct TimeParametrization {
  Strategy strategy = Strategy::LocalAdiabatic;
  double epsilon = 0.1;
  double total_time = 0.0;
  std::vector<Knot> knots;

  double s_at(double t) const;
  /// ds/dt on the knot interval containing s (the last interval for s = 1).
  double rate_at(double s) const;
  /// Same curve with every time multiplied by `factor` (> 0).
  TimeParametrization rescaled(double factor) const;
};

/// Throws DomainError unless the knots start at (0,0), end at (T,1) and are
/// strictly increasing in both t and s with finite positive T.
void validate(const TimeParametrization& parametrization);

/// Where M(s) drops below this floor the local-adiabatic speed is capped.
inline constexpr double kMatrixElementFloor = 1e-12;
inline constexpr double kDefaultEpsilon = 0.1;
inline constexpr std::size_t kDefaultResolution = 10000;
inline constexpr std::size_t kDefaultSteps = 100000;

/// M(s) / gap(s)^2 with the matrix-element floor applied.
double adiabatic_ratio(double n, const Schedule& schedule, double s);

/// `intervals` + 1 points in s from 0 to 1: half of them spaced uniformly,
/// half with density proportional to 1/gap(s), so a gap minimum of any
/// width is resolved. The located gap minimum is one of the points.
std::vector<double> graded_grid(double n, const Schedule& schedule, std::size_t intervals);

/// `resolution` is the number of s-intervals of the graded grid
/// (knots = resolution + 1).
///
/// UniformSpeed:   T = max_s M/(eps gap^2); the grid maximum is refined
///                 with Brent's method inside its neighbouring cells.
/// LocalAdiabatic: T = (1/eps) int_0^1 M/gap^2 ds, trapezoidal on the grid.
TimeParametrization build_parametrization(double n, const Schedule& schedule, double epsilon,
                                          Strategy strategy,
                                          std::size_t resolution = kDefaultResolution);

struct EvolutionResult {
  QuantumState final_state;
  double initial_fidelity = 0.0;     // |<m|psi(0)>|^2
  double fidelity = 0.0;             // |<m|psi(T)>|^2
  double norm_drift = 0.0;           // max | |psi|^2 - 1 | over steps
  double adiabaticity_margin = 0.0;  // max M (ds/dt) / gap^2 at step midpoints
  double g_time_integral = 0.0;      // int_0^T g(s(t)) dt, trapezoid on the step grid
  double max_ground_energy = 0.0;    // max instantaneous ground energy of the propagated H
  double min_gap = 0.0;
  double total_time = 0.0;
  std::size_t steps = 0;
};

/// Integrates i d/dt psi = H(s(t)) psi from |psi0> with `steps` uniform time
/// steps; each step applies the exact exponential of H at the step midpoint.
EvolutionResult evolve(double n, const Schedule& schedule,
                       const TimeParametrization& parametrization, std::size_t steps);

/// As evolve, with H(s) - E_-(s) I. Differs from evolve only by a global phase.
EvolutionResult evolve_energy_shifted(double n, const Schedule& schedule,
                                      const TimeParametrization& parametrization,
                                      std::size_t steps);

struct LowerBoundReport {
  double lhs = 0.0;  // int g dt
  double rhs = 0.0;  // k sqrt(N) / 4
  bool satisfied = false;
};

LowerBoundReport lower_bound_check(const EvolutionResult& result, double n, double k);

struct AuditPoint {
  double s = 0.0;
  double margin = 0.0;  // M (ds/dt) / gap^2
};

/// Margin at `points` uniform values of s, using the true M (no floor).
std::vector<AuditPoint> adiabaticity_audit(double n, const Schedule& schedule,
                                           const TimeParametrization& parametrization,
                                           std::size_t points);

}  // namespace aqs
