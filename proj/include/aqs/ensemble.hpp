#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "aqs/dynamics.hpp"
#include "aqs/schedule.hpp"

namespace aqs {

inline constexpr int kEnsembleMaxN = 64;
inline constexpr double kHighFidelityThreshold = 0.9;

/// H_m v = (f+g) v - f <psi0|v> psi0 - g v_m e_m, in O(n).
Eigen::VectorXcd apply_search_hamiltonian(int marked, double f, double g,
                                          const Eigen::VectorXcd& v);

/// Exact exp(-i H_m dt) v on the full n-dimensional space. H_m acts as
/// (f+g) I on the complement of span{psi0, e_m}, so only a 2x2 exponential is
/// needed; its entries are read off through apply_search_hamiltonian.
Eigen::VectorXcd propagate_search_state(int marked, double f, double g, double dt,
                                        const Eigen::VectorXcd& v);

/// min over m != m' of 1 - |<psi_m|psi_m'>|^2 for the columns of `states`.
double distinguishability(const Eigen::MatrixXcd& states);

struct OverlapSample {
  double t = 0.0;
  double overlap_sum = 0.0;  // S(t) = sum_{m,m'} 1 - |<psi_m|psi_m'>|^2
};

struct RateMargin {
  double t = 0.0;
  double rate = 0.0;   // dS/dt, central difference over sample times
  double bound = 0.0;  // 4 N^{3/2} g(s(t))
};

struct EnsembleReport {
  int n = 0;
  double total_time = 0.0;
  std::size_t steps = 0;  // actual steps, a multiple of samples - 1
  std::vector<OverlapSample> overlap_sum_trajectory;
  std::vector<RateMargin> rate_margins;  // interior sample times only
  double g_time_integral = 0.0;
  double integrated_lhs = 0.0;  // S(T) - S(0)
  double integrated_rhs = 0.0;  // 4 N^{3/2} int g dt
  double k_measured = 0.0;      // min_{m != m'} 1 - |<psi_m,T|psi_m',T>|^2
  double max_norm_drift = 0.0;
  std::vector<double> final_fidelities;  // |<m|psi_m,T>|^2
  Eigen::MatrixXcd final_states;         // column m is computer m
};

/// One computer per marked item, all started in the uniform superposition.
/// `steps` is rounded up to a multiple of samples - 1 so every sample time
/// falls on the step grid.
EnsembleReport evolve_ensemble(int n, const Schedule& schedule,
                               const TimeParametrization& parametrization, std::size_t steps,
                               std::size_t samples);

/// Number of rate margins with rate > bound (1 + rel_tol).
std::size_t rate_violations(const EnsembleReport& report, double rel_tol = 1e-6);

struct IntegratedBoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

IntegratedBoundCheck integrated_bound_check(const EnsembleReport& report);

struct TheoremBound {
  bool valid = false;
  std::string reason;  // set when !valid
  double k_measured = 0.0;
  double implied_lower_bound = 0.0;             // k sqrt(N) (1 - 1/N) / 4
  double implied_lower_bound_asymptotic = 0.0;  // k sqrt(N) / 4
  double g_time_integral = 0.0;
  bool closes = false;  // implied_lower_bound <= g_time_integral
};

/// Chains S(T) >= k N(N-1) with S(T) <= 4 N^{3/2} int g dt into a lower
/// bound on int g dt. Requires every computer to end with fidelity >= 0.9.
TheoremBound derive_theorem_bound(const EnsembleReport& report, int n);

}  // namespace aqs
