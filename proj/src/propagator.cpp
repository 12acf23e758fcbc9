#include "aqs/propagator.hpp"

#include <cmath>

namespace aqs {

void apply_plane_propagator(const EffectiveHamiltonian& h, double shift, double dt,
                            Complex& first, Complex& second) {
  // H - shift = c I + (x sz + y sx), (x sz + y sx)^2 = r^2 I, so
  // exp(-i H dt) = exp(-i c dt) [cos(r dt) I - i sin(r dt)/r (x sz + y sx)].
  const double c = 0.5 * (h.h11 + h.h22) - shift;
  const double x = 0.5 * (h.h11 - h.h22);
  const double y = h.h12;
  const double r = std::hypot(x, y);

  const double cos_rdt = std::cos(r * dt);
  // sin(r dt)/r, finite as r -> 0
  const double sinc = r > 0.0 ? std::sin(r * dt) / r : dt;

  const Complex phase = std::polar(1.0, -c * dt);
  const Complex minus_i_sinc(0.0, -sinc);

  const Complex u11 = cos_rdt + minus_i_sinc * x;
  const Complex u22 = cos_rdt - minus_i_sinc * x;
  const Complex u12 = minus_i_sinc * y;

  const Complex a = first;
  const Complex b = second;
  first = phase * (u11 * a + u12 * b);
  second = phase * (u12 * a + u22 * b);
}

}  // namespace aqs
