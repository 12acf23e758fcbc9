#include "aqs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "aqs/errors.hpp"

namespace aqs {

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::UniformSpeed:
      return "uniform";
    case Strategy::LocalAdiabatic:
      return "local";
  }
  return "unknown";
}

double TimeParametrization::s_at(double t) const {
  if (t <= knots.front().t) return knots.front().s;
  if (t >= knots.back().t) return knots.back().s;
  const auto hi = std::upper_bound(knots.begin(), knots.end(), t,
                                   [](double value, const Knot& k) { return value < k.t; });
  const auto lo = hi - 1;
  const double w = (t - lo->t) / (hi->t - lo->t);
  return std::min(1.0, lo->s + w * (hi->s - lo->s));
}

double TimeParametrization::rate_at(double s) const {
  auto hi = std::upper_bound(knots.begin(), knots.end(), s,
                             [](double value, const Knot& k) { return value < k.s; });
  if (hi == knots.begin()) ++hi;
  if (hi == knots.end()) --hi;
  const auto lo = hi - 1;
  return (hi->s - lo->s) / (hi->t - lo->t);
}

TimeParametrization TimeParametrization::rescaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw DomainError("time rescaling factor must be positive and finite");
  }
  TimeParametrization out = *this;
  out.total_time *= factor;
  for (Knot& k : out.knots) k.t *= factor;
  return out;
}

void validate(const TimeParametrization& p) {
  if (!(p.total_time > 0.0) || !std::isfinite(p.total_time)) {
    throw DomainError("parametrization total_time must be positive and finite");
  }
  if (p.knots.size() < 2) throw DomainError("parametrization needs at least two knots");
  const Knot& first = p.knots.front();
  const Knot& last = p.knots.back();
  if (first.t != 0.0 || first.s != 0.0) throw DomainError("parametrization must start at (0, 0)");
  if (std::abs(last.s - 1.0) > 1e-9 || std::abs(last.t - p.total_time) > 1e-9 * p.total_time) {
    throw DomainError("parametrization must end at (T, 1)");
  }
  for (std::size_t i = 1; i < p.knots.size(); ++i) {
    if (!(p.knots[i].t > p.knots[i - 1].t) || !(p.knots[i].s > p.knots[i - 1].s)) {
      throw DomainError("parametrization knots must be strictly increasing at index " +
                        std::to_string(i));
    }
  }
}

double adiabatic_ratio(double n, const Schedule& schedule, double s) {
  const SpectralPoint p = spectral_point(n, schedule, s);
  return std::max(p.matrix_element, kMatrixElementFloor) / (p.gap * p.gap);
}

namespace {

struct PilotCell {
  double lo, hi, inv_lo, inv_hi;  // 1/gap at both ends
};

// Bisect until 1/gap varies by less than 10% across a cell.
void refine(const std::function<double(double)>& inv_gap, double a, double fa, double b, double fb,
            int depth, std::vector<PilotCell>& cells) {
  const double m = 0.5 * (a + b);
  const double fm = inv_gap(m);
  const double top = std::max({fa, fm, fb});
  const double bottom = std::min({fa, fm, fb});
  if (depth < 60 && top > 1.1 * bottom && b - a > 1e-14) {
    refine(inv_gap, a, fa, m, fm, depth + 1, cells);
    refine(inv_gap, m, fm, b, fb, depth + 1, cells);
    return;
  }
  cells.push_back({a, b, fa, fb});
}

}  // namespace

std::vector<double> graded_grid(double n, const Schedule& schedule, std::size_t intervals) {
  if (intervals < 1) throw DomainError("grid needs at least one interval");
  const auto gap_at = [&](double s) { return spectral_point(n, schedule, s).gap; };
  // Below this width the knots would crowd closer than doubles near s = 1/2
  // can represent, so grading stops resolving the gap there.
  constexpr double kGapFloor = 1e-10;
  const std::function<double(double)> inv_gap = [&](double s) {
    return 1.0 / std::max(gap_at(s), kGapFloor);
  };

  // pilot mesh: uniform cells plus the located gap minimum
  constexpr int kPilot = 256;
  std::vector<double> pilot(kPilot + 1);
  for (int i = 0; i <= kPilot; ++i) pilot[i] = static_cast<double>(i) / kPilot;
  std::size_t arg = 0;
  for (std::size_t i = 1; i < pilot.size(); ++i) {
    if (gap_at(pilot[i]) < gap_at(pilot[arg])) arg = i;
  }
  const double lo = pilot[arg == 0 ? 0 : arg - 1];
  const double hi = pilot[std::min<std::size_t>(arg + 1, kPilot)];
  const double s_min =
      boost::math::tools::brent_find_minima(gap_at, lo, hi, std::numeric_limits<double>::digits / 2)
          .first;
  if (s_min > 0.0 && s_min < 1.0) {
    pilot.insert(std::upper_bound(pilot.begin(), pilot.end(), s_min), s_min);
    pilot.erase(std::unique(pilot.begin(), pilot.end()), pilot.end());
  }

  std::vector<PilotCell> cells;
  std::vector<double> values(pilot.size());
  for (std::size_t i = 0; i < pilot.size(); ++i) values[i] = inv_gap(pilot[i]);
  for (std::size_t i = 0; i + 1 < pilot.size(); ++i) {
    refine(inv_gap, pilot[i], values[i], pilot[i + 1], values[i + 1], 0, cells);
  }
  double total = 0.0;
  for (const PilotCell& c : cells) total += 0.5 * (c.hi - c.lo) * (c.inv_lo + c.inv_hi);

  // Invert F(s) = s + (1/total) int_0^s 1/gap, which runs from 0 to 2. The
  // density is linear inside each cell, so the spacing has no jumps.
  std::vector<double> grid(intervals + 1);
  grid.front() = 0.0;
  grid.back() = 1.0;
  std::size_t cell = 0;
  double below = 0.0;  // F at cells[cell].lo
  for (std::size_t j = 1; j < intervals; ++j) {
    const double target = 2.0 * static_cast<double>(j) / static_cast<double>(intervals);
    for (;;) {
      const PilotCell& c = cells[cell];
      const double len = c.hi - c.lo;
      const double rho_lo = 1.0 + c.inv_lo / total;
      const double rho_hi = 1.0 + c.inv_hi / total;
      const double width = 0.5 * len * (rho_lo + rho_hi);
      if (below + width >= target || cell + 1 == cells.size()) {
        // rho_lo x + (rho_hi - rho_lo) x^2 / (2 len) = d
        const double d = std::clamp(target - below, 0.0, width);
        const double slope = (rho_hi - rho_lo) / len;
        const double x = 2.0 * d / (rho_lo + std::sqrt(rho_lo * rho_lo + 2.0 * slope * d));
        grid[j] = c.lo + std::clamp(x, 0.0, len);
        break;
      }
      below += width;
      ++cell;
    }
  }
  // the gap minimum itself becomes a knot
  if (s_min > 0.0 && s_min < 1.0 && intervals >= 2) {
    const auto it = std::lower_bound(grid.begin() + 1, grid.end() - 1, s_min);
    std::size_t j = static_cast<std::size_t>(it - grid.begin());
    if (j > 1 && s_min - grid[j - 1] < grid[j] - s_min) --j;
    if (grid[j - 1] < s_min && s_min < grid[j + 1]) grid[j] = s_min;
  }
  for (std::size_t j = 1; j <= intervals; ++j) {
    if (!(grid[j] > grid[j - 1])) {
      throw NumericalError("graded grid is not strictly increasing at index " + std::to_string(j));
    }
  }
  return grid;
}

TimeParametrization build_parametrization(double n, const Schedule& schedule, double epsilon,
                                          Strategy strategy, std::size_t resolution) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw DomainError("epsilon must lie in (0, 1], got " + describe(epsilon));
  }
  if (resolution < 100) throw DomainError("resolution must be >= 100");

  const std::vector<double> grid = graded_grid(n, schedule, resolution);
  std::vector<double> ratio(resolution + 1);
  for (std::size_t i = 0; i <= resolution; ++i) ratio[i] = adiabatic_ratio(n, schedule, grid[i]);

  TimeParametrization out;
  out.strategy = strategy;
  out.epsilon = epsilon;
  out.knots.resize(resolution + 1);

  if (strategy == Strategy::UniformSpeed) {
    const auto peak = std::max_element(ratio.begin(), ratio.end());
    const std::size_t i = static_cast<std::size_t>(peak - ratio.begin());
    double worst = *peak;
    const double lo = grid[i == 0 ? 0 : i - 1];
    const double hi = grid[std::min(i + 1, resolution)];
    const auto neg_ratio = [&](double s) { return -adiabatic_ratio(n, schedule, s); };
    const auto [s_best, neg_best] = boost::math::tools::brent_find_minima(
        neg_ratio, lo, hi, std::numeric_limits<double>::digits / 2);
    (void)s_best;
    worst = std::max(worst, -neg_best);

    out.total_time = worst / epsilon;
    for (std::size_t k = 0; k <= resolution; ++k) {
      out.knots[k] = {grid[k] * out.total_time, grid[k]};
    }
    out.knots.back().t = out.total_time;
  } else {
    double t = 0.0;
    out.knots[0] = {0.0, 0.0};
    for (std::size_t k = 1; k <= resolution; ++k) {
      // dt = (M / (eps gap^2)) ds; the division by eps stays last so that
      // halving eps doubles every increment exactly.
      t += (0.5 * (grid[k] - grid[k - 1]) * (ratio[k - 1] + ratio[k])) / epsilon;
      out.knots[k] = {t, grid[k]};
    }
    out.total_time = t;
  }

  if (!std::isfinite(out.total_time) || !(out.total_time > 0.0)) {
    throw NumericalError("parametrization total time is not finite (n=" + describe(n) + ")");
  }
  for (std::size_t k = 1; k <= resolution; ++k) {
    if (!(out.knots[k].t > out.knots[k - 1].t)) {
      throw NumericalError("parametrization is not strictly monotone at knot " +
                           std::to_string(k));
    }
  }
  return out;
}

namespace {

EvolutionResult evolve_impl(double n, const Schedule& schedule, const TimeParametrization& param,
                            std::size_t steps, bool shift_ground_energy) {
  if (steps < 1) throw DomainError("steps must be >= 1");
  validate(param);

  const double dt = param.total_time / static_cast<double>(steps);

  QuantumState state{Complex(std::sqrt(1.0 / n), 0.0), Complex(std::sqrt(1.0 - 1.0 / n), 0.0)};
  // n is validated by the first spectral evaluation below
  const SpectralPoint start = spectral_point(n, schedule, 0.0);

  EvolutionResult result;
  result.total_time = param.total_time;
  result.steps = steps;
  result.initial_fidelity = std::norm(state.a_m);
  result.norm_drift = std::abs(state.norm_squared() - 1.0);
  result.min_gap = start.gap;
  result.max_ground_energy =
      shift_ground_energy ? start.e_minus - shifted_ground_energy(start) : start.e_minus;

  double g_prev = start.g;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t_mid = (static_cast<double>(k) + 0.5) * dt;
    const double s_mid = param.s_at(t_mid);
    const ScheduleSample mid_sample = schedule.eval(s_mid);
    const EffectiveHamiltonian h = effective_hamiltonian(n, mid_sample);
    const SpectralPoint mid = spectral_point(n, schedule, s_mid);

    const double shift = shift_ground_energy ? shifted_ground_energy(mid) : 0.0;
    apply_plane_propagator(h, shift, dt, state);

    if (!std::isfinite(state.a_m.real()) || !std::isfinite(state.a_m.imag()) ||
        !std::isfinite(state.a_perp.real()) || !std::isfinite(state.a_perp.imag())) {
      throw IntegrationError("non-finite amplitude", k);
    }
    result.norm_drift = std::max(result.norm_drift, std::abs(state.norm_squared() - 1.0));
    result.adiabaticity_margin =
        std::max(result.adiabaticity_margin,
                 mid.matrix_element * param.rate_at(s_mid) / (mid.gap * mid.gap));

    const double t_next = static_cast<double>(k + 1) * dt;
    const double s_next = (k + 1 == steps) ? 1.0 : param.s_at(t_next);
    const SpectralPoint next = spectral_point(n, schedule, s_next);
    result.g_time_integral += 0.5 * dt * (g_prev + next.g);
    g_prev = next.g;
    result.min_gap = std::min(result.min_gap, next.gap);
    const double ground =
        shift_ground_energy ? next.e_minus - shifted_ground_energy(next) : next.e_minus;
    result.max_ground_energy = std::max(result.max_ground_energy, ground);
  }

  result.final_state = state;
  result.fidelity = std::clamp(std::norm(state.a_m), 0.0, 1.0);
  return result;
}

}  // namespace

EvolutionResult evolve(double n, const Schedule& schedule, const TimeParametrization& param,
                       std::size_t steps) {
  return evolve_impl(n, schedule, param, steps, false);
}

EvolutionResult evolve_energy_shifted(double n, const Schedule& schedule,
                                      const TimeParametrization& param, std::size_t steps) {
  return evolve_impl(n, schedule, param, steps, true);
}

LowerBoundReport lower_bound_check(const EvolutionResult& result, double n, double k) {
  if (!(k > 0.0)) throw DomainError("k must be positive");
  LowerBoundReport report;
  report.lhs = result.g_time_integral;
  report.rhs = k * std::sqrt(n) / 4.0;
  report.satisfied = report.lhs >= report.rhs;
  return report;
}

std::vector<AuditPoint> adiabaticity_audit(double n, const Schedule& schedule,
                                           const TimeParametrization& param, std::size_t points) {
  if (points < 2) throw DomainError("audit needs at least 2 points");
  validate(param);
  std::vector<AuditPoint> out;
  out.reserve(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double s = (i + 1 == points) ? 1.0 : static_cast<double>(i) / last;
    const SpectralPoint p = spectral_point(n, schedule, s);
    out.push_back({s, p.matrix_element * param.rate_at(s) / (p.gap * p.gap)});
  }
  return out;
}

}  // namespace aqs
