#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "isofield/wigner.hpp"

namespace isofield {

namespace detail {

inline void check_spin_ylm_args(int s, int ell, int m) {
  if (ell < std::abs(s))
    throw std::invalid_argument("spin_ylm: require ell >= |s|, got ell = " +
                                std::to_string(ell) + ", s = " +
                                std::to_string(s));
  if (std::abs(m) > ell)
    throw std::invalid_argument("spin_ylm: require |m| <= ell, got m = " +
                                std::to_string(m) + ", ell = " +
                                std::to_string(ell));
  check_ell_limit(ell);
}

}  // namespace detail

// Normalization common to all degrees: sqrt((2l+1)/(4pi)).
inline double harmonic_norm(int ell) {
  return std::sqrt((2 * ell + 1) / (4.0 * std::numbers::pi));
}

// Spin-weighted spherical harmonic, with the phase fixed by
//   sYlm(theta, phi) = (-1)^m sqrt((2l+1)/4pi) d^l_{-m,s}(theta) e^{i m phi}.
// For s = 0 this is the classical Y_lm with Condon-Shortley phase.
inline std::complex<double> spin_ylm(int s, int ell, int m, double theta,
                                     double phi) {
  detail::check_spin_ylm_args(s, ell, m);
  const auto seq = wigner_d_sequence(ell, -m, s, theta);
  double v = harmonic_norm(ell) * seq.back();
  if (m % 2 != 0) v = -v;
  return v * std::complex<double>(std::cos(m * phi), std::sin(m * phi));
}

// sYlm evaluated at the antipodal point -n, via the parity law
//   sYlm(-n) = (-1)^l (-s)Ylm(n).
inline std::complex<double> parity_transform(int s, int ell, int m,
                                             double theta, double phi) {
  detail::check_spin_ylm_args(s, ell, m);
  std::complex<double> v = spin_ylm(-s, ell, m, theta, phi);
  return (ell % 2 != 0) ? -v : v;
}

// Real spherical harmonic S^m_l: the three-branch combination of Y_{lm}
// and Y_{l,-m} that carries the orthogonal (rather than unitary)
// representation.
inline double real_ylm(int ell, int m, double theta, double phi) {
  detail::check_spin_ylm_args(0, ell, m);
  if (m == 0) return spin_ylm(0, ell, 0, theta, phi).real();
  const std::complex<double> yp = spin_ylm(0, ell, std::abs(m), theta, phi);
  // conjugation symmetry: Y_{l,-m} = (-1)^m conj(Y_{lm})
  if (m > 0) return std::numbers::sqrt2 * yp.real();
  // S^{-|m|} = sqrt(2) (-1)^m Im Y_{l|m|}
  return std::numbers::sqrt2 * yp.imag() * ((m % 2 != 0) ? -1.0 : 1.0);
}

}  // namespace isofield
