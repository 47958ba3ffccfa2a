#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isofield/errors.hpp"
#include "isofield/rng.hpp"
#include "isofield/transform.hpp"

namespace isofield {

struct component_spec {
  std::string name;
  int spin = 0;          // bundle spin of the component (0 or 2 here)
  bool parity_odd = false;  // pseudo-scalar behavior (V, B)

  int min_ell() const { return std::abs(spin); }
  bool operator==(const component_spec&) const = default;
};

inline std::vector<component_spec> scalar_component(
    const std::string& name = "T") {
  return {{name, 0, false}};
}

// The Stokes fiber I + V + (Q,U): scalar, pseudo-scalar and the
// symmetric trace-free pair parameterized by E/B coefficients.
inline std::vector<component_spec> stokes_components() {
  return {{"I", 0, false}, {"V", 0, true}, {"E", 2, false}, {"B", 2, true}};
}

// Per-degree covariance matrices C_l over the named components.
class power_spectrum_set {
 public:
  power_spectrum_set(std::vector<component_spec> components, int lmax)
      : components_(std::move(components)), lmax_(lmax) {
    if (lmax < 0) throw std::invalid_argument("power_spectrum_set: lmax < 0");
    if (components_.empty())
      throw std::invalid_argument("power_spectrum_set: no components");
    matrices_.assign(lmax + 1, Eigen::MatrixXd::Zero(n_components(),
                                                     n_components()));
  }

  int lmax() const { return lmax_; }
  int n_components() const { return int(components_.size()); }
  const std::vector<component_spec>& components() const { return components_; }

  int component_index(const std::string& name) const {
    for (int i = 0; i < n_components(); ++i)
      if (components_[i].name == name) return i;
    throw std::invalid_argument("power_spectrum_set: unknown component '" +
                                name + "'");
  }

  Eigen::MatrixXd& matrix(int ell) { return matrices_.at(ell); }
  const Eigen::MatrixXd& matrix(int ell) const { return matrices_.at(ell); }

  double& entry(int ell, int i, int j) { return matrices_.at(ell)(i, j); }

  // Truncated summability proxy: sum_l (2l+1) trace C_l.
  double summability_proxy() const {
    double acc = 0.0;
    for (int ell = 0; ell <= lmax_; ++ell)
      acc += (2 * ell + 1) * matrices_[ell].trace();
    return acc;
  }

  // Symmetry, PSD, component support, and (unless overridden) the
  // parity-admissibility rule: scalar/pseudo-scalar cross spectra are
  // rejected.
  void validate(bool allow_parity_violation = false) const {
    const double tol = 1e-12;
    for (int ell = 0; ell <= lmax_; ++ell) {
      const Eigen::MatrixXd& c = matrices_[ell];
      if (!c.isApprox(c.transpose(), 1e-12))
        throw spectrum_error("spectrum matrix at ell = " +
                             std::to_string(ell) + " is not symmetric");
      const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
      if (es.eigenvalues().minCoeff() < -tol * scale)
        throw spectrum_error("spectrum matrix at ell = " +
                             std::to_string(ell) + " is not PSD");
      for (int i = 0; i < n_components(); ++i) {
        if (ell < components_[i].min_ell() && c.row(i).cwiseAbs().sum() > 0.0)
          throw spectrum_error("component '" + components_[i].name +
                               "' has support below ell = " +
                               std::to_string(components_[i].min_ell()) +
                               " (at ell = " + std::to_string(ell) + ")");
        if (!allow_parity_violation)
          for (int j = 0; j < n_components(); ++j)
            if (components_[i].parity_odd != components_[j].parity_odd &&
                c(i, j) != 0.0)
              throw spectrum_error(
                  "parity-violating cross spectrum " + components_[i].name +
                  "-" + components_[j].name + " at ell = " +
                  std::to_string(ell) + " (pass the override to allow it)");
      }
    }
  }

 private:
  std::vector<component_spec> components_;
  int lmax_;
  std::vector<Eigen::MatrixXd> matrices_;
};

namespace detail {

// Real factor A with C = A A^T. Plain Cholesky when positive definite,
// eigenvalue square root for the semidefinite case.
inline Eigen::MatrixXd covariance_factor(const Eigen::MatrixXd& c, int ell) {
  Eigen::LLT<Eigen::MatrixXd> llt(c);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  Eigen::VectorXd lam = es.eigenvalues();
  for (int i = 0; i < lam.size(); ++i) {
    if (lam[i] < -1e-12 * scale)
      throw spectrum_error("spectrum matrix at ell = " + std::to_string(ell) +
                           " is not PSD");
    lam[i] = std::sqrt(std::max(lam[i], 0.0));
  }
  return es.eigenvectors() * lam.asDiagonal();
}

}  // namespace detail

struct coefficient_sample {
  std::vector<harmonic_coefficients> components;
  std::uint64_t seed = 0;
  bool reality_constrained = false;
};

// Jointly Gaussian coefficients with per-degree covariance C_l across
// components, independent across (l, m). Streams are keyed by
// (seed, l, m, component), so any evaluation order gives the same draw.
inline coefficient_sample sample_coefficients(const power_spectrum_set& spec,
                                              std::uint64_t seed,
                                              bool reality_constrained = true,
                                              bool allow_parity_violation =
                                                  false) {
  spec.validate(allow_parity_violation);
  const int lmax = spec.lmax();
  const int nc = spec.n_components();

  coefficient_sample sample;
  sample.seed = seed;
  sample.reality_constrained = reality_constrained;
  for (int c = 0; c < nc; ++c)
    sample.components.emplace_back(0, lmax);

  Eigen::VectorXcd z(nc), a(nc);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (int ell = 0; ell <= lmax; ++ell) {
    const Eigen::MatrixXd factor =
        detail::covariance_factor(spec.matrix(ell), ell);
    for (int m = 0; m <= ell; ++m) {
      for (int c = 0; c < nc; ++c) {
        const rng::stream st(seed, std::uint64_t(ell),
                             std::uint64_t(lmax + m), std::uint64_t(c));
        const auto [g1, g2] = st.normal_pair(0);
        if (reality_constrained && m == 0)
          z[c] = g1;  // real, unit variance
        else
          z[c] = std::complex<double>(g1 * inv_sqrt2, g2 * inv_sqrt2);
      }
      a = factor * z;
      for (int c = 0; c < nc; ++c) {
        sample.components[c].at(ell, m) = a[c];
        if (m > 0) {
          std::complex<double> neg;
          if (reality_constrained) {
            neg = std::conj(a[c]);
            if (m % 2 != 0) neg = -neg;
          } else {
            const rng::stream st(seed, std::uint64_t(ell),
                                 std::uint64_t(lmax - m), std::uint64_t(c));
            // independent draw for -m in the unconstrained case
            const auto [g1, g2] = st.normal_pair(0);
            z[c] = std::complex<double>(g1 * inv_sqrt2, g2 * inv_sqrt2);
            neg = 0.0;  // filled after the matrix product below
          }
          sample.components[c].at(ell, -m) = neg;
        }
      }
      if (!reality_constrained && m > 0) {
        a = factor * z;
        for (int c = 0; c < nc; ++c) sample.components[c].at(ell, -m) = a[c];
      }
    }
  }
  return sample;
}

// Scalar field sample: synthesize(sample_coefficients). With the reality
// flag the synthesized map's imaginary part vanishes.
inline sphere_map sample_scalar_field(const power_spectrum_set& spec,
                                      const sphere_grid& grid,
                                      std::uint64_t seed, bool real = true) {
  if (spec.n_components() != 1 || spec.components()[0].spin != 0)
    throw std::invalid_argument(
        "sample_scalar_field: expected a single spin-0 component");
  const coefficient_sample sample = sample_coefficients(spec, seed, real);
  return synthesize(sample.components[0], grid);
}

namespace detail {

inline void check_eb_support(const harmonic_coefficients& c,
                             const char* what) {
  for (int ell = 0; ell < std::min(2, c.lmax() + 1); ++ell)
    for (int m = -ell; m <= ell; ++m)
      if (c.at(ell, m) != std::complex<double>(0.0, 0.0))
        throw std::invalid_argument(std::string(what) +
                                    ": support below ell = 2");
}

}  // namespace detail

// a^{(+-2)}_{lm} = e_{lm} +- i b_{lm}. Synthesizing the results at spin
// +-2 gives Q + iU and Q - iU.
inline std::pair<harmonic_coefficients, harmonic_coefficients> eb_to_qu(
    const harmonic_coefficients& e, const harmonic_coefficients& b) {
  if (e.lmax() != b.lmax())
    throw std::invalid_argument("eb_to_qu: mismatched lmax");
  detail::check_eb_support(e, "eb_to_qu(e)");
  detail::check_eb_support(b, "eb_to_qu(b)");
  const int lmax = std::max(e.lmax(), 2);
  harmonic_coefficients aplus(2, lmax), aminus(-2, lmax);
  const std::complex<double> iu(0.0, 1.0);
  for (int ell = 2; ell <= e.lmax(); ++ell)
    for (int m = -ell; m <= ell; ++m) {
      aplus.at(ell, m) = e.at(ell, m) + iu * b.at(ell, m);
      aminus.at(ell, m) = e.at(ell, m) - iu * b.at(ell, m);
    }
  return {std::move(aplus), std::move(aminus)};
}

// Inverse: e = (a+ + a-)/2, b = (a+ - a-)/(2i).
inline std::pair<harmonic_coefficients, harmonic_coefficients> qu_to_eb(
    const harmonic_coefficients& aplus, const harmonic_coefficients& aminus) {
  if (aplus.lmax() != aminus.lmax())
    throw std::invalid_argument("qu_to_eb: mismatched lmax");
  const int lmax = aplus.lmax();
  harmonic_coefficients e(0, lmax), b(0, lmax);
  const std::complex<double> half_i(0.0, 0.5);
  for (int ell = 2; ell <= lmax; ++ell)
    for (int m = -ell; m <= ell; ++m) {
      e.at(ell, m) = 0.5 * (aplus.at(ell, m) + aminus.at(ell, m));
      b.at(ell, m) = -half_i * (aplus.at(ell, m) - aminus.at(ell, m));
    }
  return {std::move(e), std::move(b)};
}

struct stokes_sample {
  sphere_map intensity;             // I, real scalar
  sphere_map circular;              // V, real pseudo-scalar
  sphere_map q;                     // real
  sphere_map u;                     // real
  coefficient_sample coefficients;  // I, V, E, B streams
};

// Sample of the reducible Stokes bundle: I and V are real scalar maps,
// (Q, U) come from the E/B coefficients via spin +-2 synthesis. The
// trace-free matrix field [[Q, U], [U, -Q]] is recoverable from q and u.
inline stokes_sample sample_stokes_bundle(const power_spectrum_set& spec,
                                          const sphere_grid& grid,
                                          std::uint64_t seed,
                                          bool allow_parity_violation =
                                              false) {
  const auto expected = stokes_components();
  if (spec.components() != expected)
    throw std::invalid_argument(
        "sample_stokes_bundle: expected components I, V, E, B");
  coefficient_sample sample =
      sample_coefficients(spec, seed, true, allow_parity_violation);
  const auto& e = sample.components[2];
  const auto& b = sample.components[3];
  auto [aplus, aminus] = eb_to_qu(e, b);

  stokes_sample out{synthesize(sample.components[0], grid),
                    synthesize(sample.components[1], grid),
                    sphere_map{},
                    sphere_map{},
                    std::move(sample)};
  const sphere_map p_plus = synthesize(aplus, grid);    // Q + iU
  const sphere_map p_minus = synthesize(aminus, grid);  // Q - iU
  out.q = p_plus;
  out.u = p_plus;
  for (std::size_t i = 0; i < p_plus.values.size(); ++i) {
    out.q.values[i] = 0.5 * (p_plus.values[i] + p_minus.values[i]);
    out.u.values[i] = std::complex<double>(0.0, -0.5) *
                      (p_plus.values[i] - p_minus.values[i]);
  }
  out.q.spin = 0;
  out.u.spin = 0;
  return out;
}

// Unbiased estimator: C_l[i][j] = (2l+1)^{-1} sum_m a^i_{lm} conj(a^j_{lm}),
// symmetrized to a real matrix.
inline power_spectrum_set estimate_power_spectrum(
    const std::vector<harmonic_coefficients>& coeffs,
    const std::vector<component_spec>& components) {
  if (coeffs.empty() || coeffs.size() != components.size())
    throw std::invalid_argument(
        "estimate_power_spectrum: component/coefficient count mismatch");
  const int lmax = coeffs[0].lmax();
  for (const auto& c : coeffs)
    if (c.lmax() != lmax)
      throw std::invalid_argument("estimate_power_spectrum: mixed lmax");
  power_spectrum_set spec(components, lmax);
  const int nc = int(coeffs.size());
  for (int ell = 0; ell <= lmax; ++ell)
    for (int i = 0; i < nc; ++i)
      for (int j = 0; j < nc; ++j) {
        std::complex<double> acc = 0.0;
        for (int m = -ell; m <= ell; ++m)
          acc += coeffs[i].at(ell, m) * std::conj(coeffs[j].at(ell, m));
        spec.entry(ell, i, j) = acc.real() / (2 * ell + 1);
      }
  // exact symmetrization
  for (int ell = 0; ell <= lmax; ++ell) {
    Eigen::MatrixXd& c = spec.matrix(ell);
    c = ((c + c.transpose()) * 0.5).eval();
  }
  return spec;
}

inline power_spectrum_set estimate_power_spectrum(
    const harmonic_coefficients& coeffs, const std::string& name = "T") {
  return estimate_power_spectrum(std::vector<harmonic_coefficients>{coeffs},
                                 {{name, coeffs.spin(), false}});
}

}  // namespace isofield
