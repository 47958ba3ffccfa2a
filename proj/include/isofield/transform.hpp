#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "isofield/errors.hpp"
#include "isofield/harmonics.hpp"
#include "isofield/quadrature.hpp"
#include "isofield/wigner.hpp"

namespace isofield {

// Band-limited coefficient set a_{lm} for one spin weight. Entries with
// l < |spin| exist in storage but are kept at zero.
class harmonic_coefficients {
 public:
  harmonic_coefficients(int spin, int lmax) : spin_(spin), lmax_(lmax) {
    if (lmax < std::abs(spin))
      throw std::invalid_argument("harmonic_coefficients: lmax < |spin|");
    detail::check_ell_limit(lmax);
    a_.assign(std::size_t(lmax + 1) * (lmax + 1), {0.0, 0.0});
  }

  int spin() const { return spin_; }
  int lmax() const { return lmax_; }
  int min_ell() const { return std::abs(spin_); }

  std::complex<double>& at(int ell, int m) { return a_[index(ell, m)]; }
  const std::complex<double>& at(int ell, int m) const {
    return a_[index(ell, m)];
  }

  const std::vector<std::complex<double>>& data() const { return a_; }
  std::vector<std::complex<double>>& data() { return a_; }

 private:
  std::size_t index(int ell, int m) const {
    if (ell < 0 || ell > lmax_ || std::abs(m) > ell)
      throw std::invalid_argument("harmonic_coefficients: index out of range");
    return std::size_t(ell) * ell + ell + m;
  }
  int spin_, lmax_;
  std::vector<std::complex<double>> a_;
};

// Gauss-Legendre colatitude nodes plus equispaced longitudes. Quadrature
// is exact for integrands band-limited at 2*lmax_exact; total measure is
// 4*pi.
struct sphere_grid {
  int n_theta = 0;
  int n_phi = 0;
  int lmax_exact = 0;
  std::vector<double> theta_nodes;    // radians, ascending
  std::vector<double> theta_weights;  // for the sin(theta) d(theta) measure

  double phi(int k) const { return 2.0 * std::numbers::pi * k / n_phi; }
  double phi_weight() const { return 2.0 * std::numbers::pi / n_phi; }
};

struct sphere_map {
  sphere_grid grid;
  int spin = 0;
  // row-major: values[i * grid.n_phi + k] at (theta_i, phi_k)
  std::vector<std::complex<double>> values;

  std::complex<double>& at(int i, int k) {
    return values[std::size_t(i) * grid.n_phi + k];
  }
  const std::complex<double>& at(int i, int k) const {
    return values[std::size_t(i) * grid.n_phi + k];
  }
};

inline sphere_grid make_grid(int lmax) {
  if (lmax < 0) throw std::invalid_argument("make_grid: lmax must be >= 0");
  detail::check_ell_limit(lmax);
  sphere_grid grid;
  grid.lmax_exact = lmax;
  grid.n_theta = lmax + 1;
  grid.n_phi = 2 * lmax + 1;
  const quadrature_rule rule = gauss_legendre(lmax + 1);
  grid.theta_nodes.resize(grid.n_theta);
  grid.theta_weights.resize(grid.n_theta);
  for (int i = 0; i < grid.n_theta; ++i) {
    // descending in cos(theta) <-> ascending in theta
    grid.theta_nodes[i] = std::acos(rule.nodes[grid.n_theta - 1 - i]);
    grid.theta_weights[i] = rule.weights[grid.n_theta - 1 - i];
  }
  return grid;
}

namespace detail {

inline void check_band_limit(int lmax, const sphere_grid& grid) {
  if (lmax > grid.lmax_exact)
    throw band_limit_error("band limit " + std::to_string(lmax) +
                           " exceeds grid lmax_exact = " +
                           std::to_string(grid.lmax_exact));
}

template <typename Fn>
inline void parallel_rows(int n_rows, int n_threads, Fn&& fn) {
  if (n_threads <= 1) {
    for (int i = 0; i < n_rows; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < n_threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < n_rows; i += n_threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

// Synthesis: values(theta, phi) = sum_{l,m} a_{lm} sYlm(theta, phi).
// Rows are independent, so any thread count gives bit-identical output.
inline sphere_map synthesize(const harmonic_coefficients& coeffs,
                             const sphere_grid& grid, int n_threads = 1) {
  detail::check_band_limit(coeffs.lmax(), grid);
  const int lmax = coeffs.lmax();
  const int s = coeffs.spin();
  sphere_map map;
  map.grid = grid;
  map.spin = s;
  map.values.assign(std::size_t(grid.n_theta) * grid.n_phi, {0.0, 0.0});

  detail::parallel_rows(grid.n_theta, n_threads, [&](int i) {
    const auto dcol = wigner_d_column(lmax, s, grid.theta_nodes[i]);
    std::vector<std::complex<double>> fm(2 * lmax + 1, {0.0, 0.0});
    for (int m = -lmax; m <= lmax; ++m) {
      const int ell0 = std::max(std::abs(m), std::abs(s));
      const auto& d = dcol[-m + lmax];  // d^l_{-m, s}
      std::complex<double> acc = 0.0;
      for (int ell = ell0; ell <= lmax; ++ell)
        acc += coeffs.at(ell, m) * (harmonic_norm(ell) * d[ell - ell0]);
      if (m % 2 != 0) acc = -acc;
      fm[m + lmax] = acc;
    }
    for (int k = 0; k < grid.n_phi; ++k) {
      const double phi = map.grid.phi(k);
      std::complex<double> v = 0.0;
      for (int m = -lmax; m <= lmax; ++m)
        v += fm[m + lmax] *
             std::complex<double>(std::cos(m * phi), std::sin(m * phi));
      map.at(i, k) = v;
    }
  });
  return map;
}

// Analysis: a_{lm} = sum_nodes w * X * conj(sYlm). Exact for maps that
// are band-limited at the grid's lmax_exact. Per-row partial results are
// reduced in fixed row order, so output is thread-count independent.
inline harmonic_coefficients analyze(const sphere_map& map, int lmax,
                                     int n_threads = 1) {
  detail::check_band_limit(lmax, map.grid);
  const int s = map.spin;
  if (lmax < std::abs(s))
    throw std::invalid_argument("analyze: lmax < |spin|");
  const sphere_grid& grid = map.grid;
  harmonic_coefficients coeffs(s, lmax);

  const std::size_t stride = std::size_t(lmax + 1) * (lmax + 1);
  std::vector<std::complex<double>> partial(stride * grid.n_theta,
                                            {0.0, 0.0});
  detail::parallel_rows(grid.n_theta, n_threads, [&](int i) {
    const auto dcol = wigner_d_column(lmax, s, grid.theta_nodes[i]);
    const double wphi = grid.phi_weight();
    std::vector<std::complex<double>> gm(2 * lmax + 1);
    for (int m = -lmax; m <= lmax; ++m) {
      std::complex<double> acc = 0.0;
      for (int k = 0; k < grid.n_phi; ++k) {
        const double phi = grid.phi(k);
        acc += map.at(i, k) *
               std::complex<double>(std::cos(m * phi), -std::sin(m * phi));
      }
      gm[m + lmax] = acc * wphi;
    }
    std::complex<double>* out = partial.data() + stride * i;
    const double w = grid.theta_weights[i];
    for (int m = -lmax; m <= lmax; ++m) {
      const int ell0 = std::max(std::abs(m), std::abs(s));
      const auto& d = dcol[-m + lmax];
      const double ms = (m % 2 != 0) ? -1.0 : 1.0;
      for (int ell = ell0; ell <= lmax; ++ell)
        out[std::size_t(ell) * ell + ell + m] =
            gm[m + lmax] * (ms * w * harmonic_norm(ell) * d[ell - ell0]);
    }
  });
  for (int i = 0; i < grid.n_theta; ++i) {
    const std::complex<double>* in = partial.data() + stride * i;
    for (std::size_t j = 0; j < stride; ++j) coeffs.data()[j] += in[j];
  }
  // entries below |s| never receive contributions; enforce exact zeros
  for (int ell = 0; ell < std::abs(s); ++ell)
    for (int m = -ell; m <= ell; ++m) coeffs.at(ell, m) = 0.0;
  return coeffs;
}

}  // namespace isofield
