#include "aqs/spectral.hpp"

#include <cmath>
#include <string>

#include "aqs/errors.hpp"

namespace aqs {
namespace {

void require_n(double n) {
  if (!(n >= 2.0) || !std::isfinite(n)) {
    throw DomainError("n must be >= 2, got " + std::to_string(n));
  }
}

EffectiveHamiltonian restrict_to_plane(double n, double f, double g) {
  const double inv_n = 1.0 / n;
  EffectiveHamiltonian h;
  h.n = n;
  h.f = f;
  h.g = g;
  h.h11 = f * (1.0 - inv_n);
  h.h12 = -f * std::sqrt(inv_n) * std::sqrt(1.0 - inv_n);
  h.h22 = g + f * inv_n;
  return h;
}

}  // namespace

double closed_form_gap(double n, double f, double g) {
  const double fg = f * g;
  if (fg >= 0.0) {
    // (f-g)^2 + 4fg/N
    return std::hypot(f - g, 2.0 * std::sqrt(fg / n));
  }
  // Same quantity written as (f+g)^2 + 4|fg|(1 - 1/N), both terms nonnegative.
  return std::hypot(f + g, 2.0 * std::sqrt(-fg * (1.0 - 1.0 / n)));
}

EffectiveHamiltonian effective_hamiltonian(double n, const ScheduleSample& sample) {
  require_n(n);
  return restrict_to_plane(n, sample.f, sample.g);
}

EffectiveHamiltonian effective_hamiltonian(double n, const Schedule& schedule, double s) {
  require_n(n);
  const ScheduleSample sample = schedule.eval(s);
  return restrict_to_plane(n, sample.f, sample.g);
}

EffectiveHamiltonian effective_derivative(double n, const ScheduleSample& sample) {
  require_n(n);
  // H is linear in (f, g), so dH/ds is the same map applied to (f', g').
  return restrict_to_plane(n, sample.df, sample.dg);
}

PlaneEigensystem eigensystem(const EffectiveHamiltonian& h) {
  const double half_trace = 0.5 * (h.h11 + h.h22);
  const double x = 0.5 * (h.h11 - h.h22);
  const double y = h.h12;
  const double radius = std::hypot(x, y);

  PlaneEigensystem out;
  out.e_minus = half_trace - radius;
  out.e_plus = half_trace + radius;

  if (radius == 0.0) {
    out.ground = {1.0, 0.0};
  } else {
    // Traceless part is radius * (cos(theta) sz + sin(theta) sx); its -radius
    // eigenvector is (sin(theta/2), -cos(theta/2)). Half-angle values from
    // cos(theta) = x / radius without calling trig functions.
    // The larger half-angle factor comes from the square root, the smaller
    // from |sin(theta)| = 2 sin(theta/2) cos(theta/2), to avoid cancellation.
    const double cos_theta = x / radius;
    double sin_half = 0.0;
    double cos_half = 0.0;
    if (cos_theta >= 0.0) {
      cos_half = std::sqrt(0.5 * (1.0 + cos_theta));
      sin_half = std::abs(y) / (2.0 * radius * cos_half);
    } else {
      sin_half = std::sqrt(0.5 * (1.0 - cos_theta));
      cos_half = std::abs(y) / (2.0 * radius * sin_half);
    }
    // sign of sin(theta) fixes the relative sign of the two components
    out.ground = {sin_half, y >= 0.0 ? -cos_half : cos_half};
    if (out.ground.m == 0.0 && out.ground.perp < 0.0) out.ground.perp = -out.ground.perp;
  }
  out.excited = {-out.ground.perp, out.ground.m};
  return out;
}

SpectralPoint spectral_point(double n, const Schedule& schedule, double s) {
  require_n(n);
  const ScheduleSample sample = schedule.eval(s);
  const EffectiveHamiltonian h = restrict_to_plane(n, sample.f, sample.g);
  const EffectiveHamiltonian dh = restrict_to_plane(n, sample.df, sample.dg);
  const PlaneEigensystem eig = eigensystem(h);

  SpectralPoint p;
  p.s = s;
  p.f = sample.f;
  p.g = sample.g;
  p.gap = closed_form_gap(n, sample.f, sample.g);
  p.e_minus = 0.5 * (sample.f + sample.g - p.gap);
  p.e_plus = 0.5 * (sample.f + sample.g + p.gap);

  const PlaneVector& lo = eig.ground;
  const PlaneVector& hi = eig.excited;
  const double coupling = lo.m * (dh.h11 * hi.m + dh.h12 * hi.perp) +
                          lo.perp * (dh.h12 * hi.m + dh.h22 * hi.perp);
  p.matrix_element = std::abs(coupling);
  return p;
}

std::vector<SpectralPoint> gap_curve(double n, const Schedule& schedule, std::size_t points) {
  if (points < 2) throw DomainError("gap curve needs at least 2 points");
  require_n(n);
  std::vector<SpectralPoint> curve;
  curve.reserve(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    // exact endpoints; interior points from i/last
    const double s = (i + 1 == points) ? 1.0 : static_cast<double>(i) / last;
    curve.push_back(spectral_point(n, schedule, s));
  }
  return curve;
}

Eigen::MatrixXd dense_hamiltonian(int n, const Schedule& schedule, double s) {
  if (n < 2) throw DomainError("n must be >= 2, got " + std::to_string(n));
  if (n > kDenseOracleMaxN) {
    throw SizeError("dense oracle limited to n <= " + std::to_string(kDenseOracleMaxN) +
                    ", got " + std::to_string(n));
  }
  const ScheduleSample sample = schedule.eval(s);
  const double f = sample.f;
  const double g = sample.g;

  Eigen::MatrixXd h = Eigen::MatrixXd::Constant(n, n, -f / n);
  h.diagonal().array() += f + g;
  h(0, 0) -= g;
  return h;
}

double shifted_ground_energy(const SpectralPoint& point) { return point.e_minus; }

}  // namespace aqs
