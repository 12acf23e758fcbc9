#pragma once

#include <complex>

#include "aqs/spectral.hpp"

namespace aqs {

using Complex = std::complex<double>;

/// Amplitudes on (|m>, |m_perp>).
struct QuantumState {
  Complex a_m;
  Complex a_perp;

  double norm_squared() const { return std::norm(a_m) + std::norm(a_perp); }
};

/// Applies exp(-i (H - shift I) dt) exactly, for the real symmetric 2x2 H
/// given by (h11, h12, h22). Unitary up to rounding.
void apply_plane_propagator(const EffectiveHamiltonian& h, double shift, double dt,
                            Complex& first, Complex& second);

inline void apply_plane_propagator(const EffectiveHamiltonian& h, double shift, double dt,
                                   QuantumState& state) {
  apply_plane_propagator(h, shift, dt, state.a_m, state.a_perp);
}

}  // namespace aqs
