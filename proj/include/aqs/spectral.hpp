#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "aqs/schedule.hpp"

namespace aqs {

/// H(s) restricted to the invariant plane span{|m>, |m_perp>}, where |m_perp>
/// is the uniform superposition |psi0> orthonormalized against the marked
/// state. Uses <m|psi0> = 1/sqrt(N):
///
///   h11 = f (1 - 1/N)
///   h12 = -f (1/sqrt(N)) sqrt(1 - 1/N)
///   h22 = g + f/N
struct EffectiveHamiltonian {
  double n = 2.0;
  double f = 0.0;
  double g = 0.0;
  double h11 = 0.0;
  double h12 = 0.0;
  double h22 = 0.0;
};

/// A real unit vector in the (|m>, |m_perp>) basis.
struct PlaneVector {
  double m = 0.0;
  double perp = 0.0;
};

/// Eigen-decomposition of a 2x2 effective Hamiltonian. The ground vector has
/// a nonnegative |m> component (ties broken toward nonnegative |m_perp>);
/// the excited vector is the ground vector rotated by +90 degrees.
struct PlaneEigensystem {
  double e_minus = 0.0;
  double e_plus = 0.0;
  PlaneVector ground;
  PlaneVector excited;
};

struct SpectralPoint {
  double s = 0.0;
  double f = 0.0;
  double g = 0.0;
  double e_minus = 0.0;
  double e_plus = 0.0;
  double gap = 0.0;
  double matrix_element = 0.0;  // |<-| dH/ds |+>|
};

/// sqrt((f-g)^2 + 4fg/N), evaluated without squaring f and g separately.
double closed_form_gap(double n, double f, double g);

EffectiveHamiltonian effective_hamiltonian(double n, const ScheduleSample& sample);
EffectiveHamiltonian effective_hamiltonian(double n, const Schedule& schedule, double s);

/// dH/ds = f' H0 + g' H1 in the same 2x2 representation.
EffectiveHamiltonian effective_derivative(double n, const ScheduleSample& sample);

PlaneEigensystem eigensystem(const EffectiveHamiltonian& h);

SpectralPoint spectral_point(double n, const Schedule& schedule, double s);

/// `points` samples of s uniformly over [0,1] inclusive, ascending.
std::vector<SpectralPoint> gap_curve(double n, const Schedule& schedule, std::size_t points);

inline constexpr int kDenseOracleMaxN = 4096;

/// (f+g) I - f P0 - g Pm on the full space, marked index 0.
Eigen::MatrixXd dense_hamiltonian(int n, const Schedule& schedule, double s);

/// Energy to subtract from H(s) so the instantaneous ground energy is zero.
double shifted_ground_energy(const SpectralPoint& point);

}  // namespace aqs
