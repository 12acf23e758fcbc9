#include "aqs/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "aqs/errors.hpp"
#include "aqs/propagator.hpp"

namespace aqs {
namespace {

void require_size(int n) {
  if (n < 2 || n > kEnsembleMaxN) {
    throw SizeError("ensemble size must lie in [2, " + std::to_string(kEnsembleMaxN) +
                    "], got " + std::to_string(n));
  }
}

// Unit vector along psi0 with the e_m component removed.
Eigen::VectorXcd orthogonal_partner(int n, int marked) {
  Eigen::VectorXcd u = Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  u(marked) = 0.0;
  u.normalize();
  return u;
}

// Overlap sum from the Gram matrix of the ensemble.
double overlap_sum(const Eigen::MatrixXcd& states) {
  const Eigen::MatrixXcd gram = states.adjoint() * states;
  const double n = static_cast<double>(states.cols());
  return n * n - gram.cwiseAbs2().sum();
}

Eigen::VectorXcd propagate_with_partner(int marked, double f, double g, double dt,
                                        const Eigen::VectorXcd& partner,
                                        const Eigen::VectorXcd& v) {
  const Eigen::Index n = v.size();
  Eigen::VectorXcd e_m = Eigen::VectorXcd::Zero(n);
  e_m(marked) = 1.0;

  // 2x2 block of H_m on (e_m, partner); real because both vectors are real.
  const Eigen::VectorXcd h_em = apply_search_hamiltonian(marked, f, g, e_m);
  const Eigen::VectorXcd h_partner = apply_search_hamiltonian(marked, f, g, partner);
  EffectiveHamiltonian block;
  block.h11 = e_m.dot(h_em).real();
  block.h12 = e_m.dot(h_partner).real();
  block.h22 = partner.dot(h_partner).real();

  Complex a = v(marked);
  Complex b = partner.dot(v);
  Eigen::VectorXcd rest = v - a * e_m - b * partner;

  apply_plane_propagator(block, 0.0, dt, a, b);
  return std::polar(1.0, -(f + g) * dt) * rest + a * e_m + b * partner;
}

}  // namespace

Eigen::VectorXcd apply_search_hamiltonian(int marked, double f, double g,
                                          const Eigen::VectorXcd& v) {
  const double n = static_cast<double>(v.size());
  const Complex psi0_overlap = v.sum() / std::sqrt(n);
  Eigen::VectorXcd out = (f + g) * v;
  out.array() -= f * psi0_overlap / std::sqrt(n);
  out(marked) -= g * v(marked);
  return out;
}

double distinguishability(const Eigen::MatrixXcd& states) {
  const Eigen::MatrixXcd gram = states.adjoint() * states;
  double k = std::numeric_limits<double>::infinity();
  for (Eigen::Index a = 0; a < gram.rows(); ++a) {
    for (Eigen::Index b = 0; b < gram.cols(); ++b) {
      if (a != b) k = std::min(k, 1.0 - std::norm(gram(a, b)));
    }
  }
  return k;
}

Eigen::VectorXcd propagate_search_state(int marked, double f, double g, double dt,
                                        const Eigen::VectorXcd& v) {
  const int n = static_cast<int>(v.size());
  require_size(n);
  if (marked < 0 || marked >= n) throw DomainError("marked index out of range");
  return propagate_with_partner(marked, f, g, dt, orthogonal_partner(n, marked), v);
}

EnsembleReport evolve_ensemble(int n, const Schedule& schedule, const TimeParametrization& param,
                               std::size_t steps, std::size_t samples) {
  require_size(n);
  if (samples < 10) throw DomainError("samples must be >= 10");
  if (steps < 1) throw DomainError("steps must be >= 1");
  validate(param);

  const std::size_t intervals = samples - 1;
  const std::size_t per_sample = (steps + intervals - 1) / intervals;
  const std::size_t total_steps = per_sample * intervals;
  const double dt = param.total_time / static_cast<double>(total_steps);

  std::vector<Eigen::VectorXcd> partners;
  partners.reserve(n);
  for (int m = 0; m < n; ++m) partners.push_back(orthogonal_partner(n, m));

  Eigen::MatrixXcd states =
      Eigen::MatrixXcd::Constant(n, n, 1.0 / std::sqrt(static_cast<double>(n)));

  EnsembleReport report;
  report.n = n;
  report.total_time = param.total_time;
  report.steps = total_steps;
  report.overlap_sum_trajectory.reserve(samples);
  report.overlap_sum_trajectory.push_back({0.0, overlap_sum(states)});

  const auto norm_drift = [&]() {
    return (states.colwise().squaredNorm().array() - 1.0).abs().maxCoeff();
  };
  report.max_norm_drift = norm_drift();

  double g_prev = schedule.eval(0.0).g;
  for (std::size_t k = 0; k < total_steps; ++k) {
    const double s_mid = param.s_at((static_cast<double>(k) + 0.5) * dt);
    const ScheduleSample mid = schedule.eval(s_mid);
    for (int m = 0; m < n; ++m) {
      states.col(m) = propagate_with_partner(m, mid.f, mid.g, dt, partners[m], states.col(m));
    }

    const double s_next = (k + 1 == total_steps) ? 1.0 : param.s_at((k + 1) * dt);
    const double g_next = schedule.eval(s_next).g;
    report.g_time_integral += 0.5 * dt * (g_prev + g_next);
    g_prev = g_next;

    if ((k + 1) % per_sample == 0) {
      if (!states.allFinite()) throw IntegrationError("non-finite ensemble amplitude", k);
      const double drift = norm_drift();
      report.max_norm_drift = std::max(report.max_norm_drift, drift);
      if (drift > 1e-6) throw IntegrationError("ensemble norm drift exceeds 1e-6", k);
      const double t = (k + 1 == total_steps) ? param.total_time : (k + 1) * dt;
      report.overlap_sum_trajectory.push_back({t, overlap_sum(states)});
    }
  }

  const auto& traj = report.overlap_sum_trajectory;
  const double bound_scale = 4.0 * std::pow(static_cast<double>(n), 1.5);
  for (std::size_t j = 1; j + 1 < traj.size(); ++j) {
    const double rate =
        (traj[j + 1].overlap_sum - traj[j - 1].overlap_sum) / (traj[j + 1].t - traj[j - 1].t);
    const double g = schedule.eval(param.s_at(traj[j].t)).g;
    report.rate_margins.push_back({traj[j].t, rate, bound_scale * g});
  }

  report.integrated_lhs = traj.back().overlap_sum - traj.front().overlap_sum;
  report.integrated_rhs = bound_scale * report.g_time_integral;

  report.k_measured = distinguishability(states);
  report.final_fidelities.resize(n);
  for (int m = 0; m < n; ++m) report.final_fidelities[m] = std::norm(states(m, m));
  report.final_states = std::move(states);
  return report;
}

std::size_t rate_violations(const EnsembleReport& report, double rel_tol) {
  return static_cast<std::size_t>(
      std::count_if(report.rate_margins.begin(), report.rate_margins.end(),
                    [&](const RateMargin& r) { return r.rate > r.bound * (1.0 + rel_tol); }));
}

IntegratedBoundCheck integrated_bound_check(const EnsembleReport& report) {
  IntegratedBoundCheck check;
  check.lhs = report.integrated_lhs;
  check.rhs = report.integrated_rhs;
  check.satisfied = check.lhs <= check.rhs * (1.0 + 1e-6);
  return check;
}

TheoremBound derive_theorem_bound(const EnsembleReport& report, int n) {
  TheoremBound out;
  out.k_measured = report.k_measured;
  out.g_time_integral = report.g_time_integral;
  if (report.n != n || report.final_fidelities.empty()) {
    out.reason = "report does not describe an ensemble of size " + std::to_string(n);
    return out;
  }
  const double worst =
      *std::min_element(report.final_fidelities.begin(), report.final_fidelities.end());
  if (worst < kHighFidelityThreshold) {
    out.reason = "final fidelity " + describe(worst) + " below " +
                 describe(kHighFidelityThreshold);
    return out;
  }
  const double dn = static_cast<double>(n);
  out.valid = true;
  out.implied_lower_bound = out.k_measured * std::sqrt(dn) * (1.0 - 1.0 / dn) / 4.0;
  out.implied_lower_bound_asymptotic = out.k_measured * std::sqrt(dn) / 4.0;
  out.closes = out.implied_lower_bound <= out.g_time_integral;
  return out;
}

}  // namespace aqs
