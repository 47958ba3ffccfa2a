#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "isofield/transform.hpp"

namespace isofield {

enum class eth_op { raise_spin, lower_spin };

// Per-degree factor of the spin raising/lowering operators:
//   eth  sYlm = sqrt((l-s)(l+s+1)) (s+1)Ylm   (0 when l = s >= 0)
//   eth* sYlm = sqrt((l+s)(l-s+1)) (s-1)Ylm   (0 when l = -s >= 0)
inline double ladder_factor(int ell, int s, eth_op op) {
  const long prod = (op == eth_op::raise_spin)
                        ? long(ell - s) * (ell + s + 1)
                        : long(ell + s) * (ell - s + 1);
  return prod <= 0 ? 0.0 : std::sqrt(double(prod));
}

struct ladder_coefficient {
  int ell;
  int s;
  double raise_factor;
  double lower_factor;
};

inline ladder_coefficient ladder_coefficients(int ell, int s) {
  return {ell, s, ladder_factor(ell, s, eth_op::raise_spin),
          ladder_factor(ell, s, eth_op::lower_spin)};
}

namespace detail {

inline harmonic_coefficients apply_ladder(const harmonic_coefficients& in,
                                          eth_op op) {
  const int s = in.spin();
  const int s_out = s + (op == eth_op::raise_spin ? 1 : -1);
  const int lmax = in.lmax();
  if (lmax < std::abs(s_out)) return harmonic_coefficients(s_out, std::abs(s_out));
  harmonic_coefficients out(s_out, lmax);
  for (int ell = std::max(in.min_ell(), std::abs(s_out)); ell <= lmax; ++ell) {
    const double f = ladder_factor(ell, s, op);
    if (f == 0.0) continue;
    for (int m = -ell; m <= ell; ++m) out.at(ell, m) = f * in.at(ell, m);
  }
  return out;
}

// Folds an operator string (applied right to left) into the per-degree
// multiplier, starting from spin-0 input.
inline double compose_ladder(int ell, const std::vector<eth_op>& ops) {
  double f = 1.0;
  int s = 0;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    f *= ladder_factor(ell, s, *it);
    s += (*it == eth_op::raise_spin) ? 1 : -1;
  }
  return f;
}

}  // namespace detail

inline harmonic_coefficients eth_raise(const harmonic_coefficients& coeffs) {
  return detail::apply_ladder(coeffs, eth_op::raise_spin);
}

inline harmonic_coefficients eth_lower(const harmonic_coefficients& coeffs) {
  return detail::apply_ladder(coeffs, eth_op::lower_spin);
}

// Spectral multipliers of the four distortion fields built from the
// lensing potential:
//   kappa = 1/4 (ee* + e*e) phi      (spin 0)
//   F     = -1/6 (e*ee + ee*e + eee*) phi   (spin 1)
//   gamma = 1/2 ee phi               (spin 2)
//   G     = -1/2 eee phi             (spin 3)
// The multipliers are composed from ladder factors at runtime rather
// than transcribed in closed form.
struct distortion_multipliers_t {
  int ell;
  double kappa;
  double flexion1;
  double shear;
  double flexion3;
};

inline distortion_multipliers_t distortion_multipliers(int ell) {
  if (ell < 0) throw std::invalid_argument("distortion_multipliers: ell < 0");
  using e = eth_op;
  const auto R = e::raise_spin, L = e::lower_spin;
  distortion_multipliers_t mult{};
  mult.ell = ell;
  mult.kappa = 0.25 * (detail::compose_ladder(ell, {R, L}) +
                       detail::compose_ladder(ell, {L, R}));
  mult.flexion1 = -(1.0 / 6.0) * (detail::compose_ladder(ell, {L, R, R}) +
                                  detail::compose_ladder(ell, {R, L, R}) +
                                  detail::compose_ladder(ell, {R, R, L}));
  mult.shear = 0.5 * detail::compose_ladder(ell, {R, R});
  mult.flexion3 = -0.5 * detail::compose_ladder(ell, {R, R, R});
  return mult;
}

struct distortion_fields_t {
  harmonic_coefficients kappa;     // spin 0
  harmonic_coefficients flexion1;  // spin 1
  harmonic_coefficients shear;     // spin 2
  harmonic_coefficients flexion3;  // spin 3
};

inline distortion_fields_t distortion_fields(
    const harmonic_coefficients& phi) {
  if (phi.spin() != 0)
    throw std::invalid_argument("distortion_fields: input must be spin 0");
  const int lmax = phi.lmax();
  distortion_fields_t out{harmonic_coefficients(0, lmax),
                          harmonic_coefficients(1, std::max(lmax, 1)),
                          harmonic_coefficients(2, std::max(lmax, 2)),
                          harmonic_coefficients(3, std::max(lmax, 3))};
  for (int ell = 0; ell <= lmax; ++ell) {
    const auto mult = distortion_multipliers(ell);
    for (int m = -ell; m <= ell; ++m) {
      const auto a = phi.at(ell, m);
      out.kappa.at(ell, m) = mult.kappa * a;
      if (ell >= 1) out.flexion1.at(ell, m) = mult.flexion1 * a;
      if (ell >= 2) out.shear.at(ell, m) = mult.shear * a;
      if (ell >= 3) out.flexion3.at(ell, m) = mult.flexion3 * a;
    }
  }
  return out;
}

}  // namespace isofield
