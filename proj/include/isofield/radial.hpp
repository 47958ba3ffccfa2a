#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "isofield/errors.hpp"
#include "isofield/quadrature.hpp"
#include "isofield/rng.hpp"
#include "isofield/transform.hpp"

namespace isofield {

// Quadrature grid for the measure r^2 dr on (0, R]. Weights include the
// r^2 factor, so sum(weights) ~ R^3/3.
struct radial_grid {
  double R = 0.0;
  std::vector<double> nodes;    // ascending, in (0, R]
  std::vector<double> weights;  // for integrals against r^2 dr

  int size() const { return int(nodes.size()); }
  double plain_weight(int i) const {  // weight for dr without the r^2 factor
    return weights[i] / (nodes[i] * nodes[i]);
  }
};

inline radial_grid make_radial_grid(double R, int n) {
  if (R <= 0.0) throw std::invalid_argument("make_radial_grid: R <= 0");
  if (n < 1) throw std::invalid_argument("make_radial_grid: n < 1");
  const quadrature_rule rule = gauss_legendre(n, 0.0, R);
  radial_grid grid;
  grid.R = R;
  grid.nodes = rule.nodes;
  grid.weights.resize(n);
  for (int i = 0; i < n; ++i)
    grid.weights[i] = rule.weights[i] * rule.nodes[i] * rule.nodes[i];
  return grid;
}

// Lensing potential from the Newtonian potential sampled on the grid:
//   phi(r) = (2/c^2) int_0^r Phi(r') (r - r') / (r r') dr'
// Composite trapezoid over the grid nodes below r; the [0, r_1) segment
// carries zero weight (empty range at r = 0).
inline std::vector<double> lensing_potential(const std::vector<double>& Phi,
                                             const radial_grid& grid,
                                             double c) {
  if (int(Phi.size()) != grid.size())
    throw std::invalid_argument("lensing_potential: sample/grid mismatch");
  if (c <= 0.0) throw std::invalid_argument("lensing_potential: c <= 0");
  const int n = grid.size();
  std::vector<double> phi(n, 0.0);
  const double pref = 2.0 / (c * c);
  for (int t = 0; t < n; ++t) {
    const double r = grid.nodes[t];
    auto integrand = [&](int i) {
      return Phi[i] * (r - grid.nodes[i]) / (r * grid.nodes[i]);
    };
    double acc = 0.0;
    for (int i = 0; i + 1 <= t; ++i)
      acc += 0.5 * (integrand(i) + integrand(i + 1)) *
             (grid.nodes[i + 1] - grid.nodes[i]);
    phi[t] = pref * acc;
  }
  return phi;
}

// Spherical Bessel j_l(x). Upward recurrence where it is stable
// (x > l), Miller-style downward recurrence otherwise.
inline double spherical_bessel_j(int ell, double x) {
  if (ell < 0) throw std::invalid_argument("spherical_bessel_j: ell < 0");
  if (x < 0.0) throw std::invalid_argument("spherical_bessel_j: x < 0");
  if (x == 0.0) return ell == 0 ? 1.0 : 0.0;
  const double j0 = std::sin(x) / x;
  if (ell == 0) return j0;
  const double j1 = j0 / x - std::cos(x) / x;
  if (ell == 1) return j1;
  if (x > ell) {
    // upward: j_{n+1} = (2n+1)/x j_n - j_{n-1}
    double jm = j0, jc = j1;
    for (int n = 1; n < ell; ++n) {
      const double jp = (2 * n + 1) / x * jc - jm;
      jm = jc;
      jc = jp;
    }
    return jc;
  }
  // downward from a start order well above ell, normalized by j0
  const int start = ell + int(std::sqrt(40.0 * ell)) + 20;
  double jp = 0.0, jc = 1e-30, target = 0.0;
  for (int n = start; n >= 1; --n) {
    const double jm = (2 * n + 1) / x * jc - jp;
    jp = jc;
    jc = jm;
    if (n - 1 == ell) target = jc;
    // rescale to avoid overflow
    if (std::abs(jc) > 1e200) {
      jc *= 1e-200;
      jp *= 1e-200;
      target *= 1e-200;
    }
  }
  return target * (j0 / jc);
}

// q-th positive zero of j_l (q >= 1), by scan plus bisection.
inline double bessel_zero(int ell, int q) {
  if (q < 1) throw std::invalid_argument("bessel_zero: q < 1");
  const double step = 0.1;
  double x = ell > 0 ? ell + 0.5 : step;  // zeros lie beyond the turning point
  double prev = spherical_bessel_j(ell, x);
  int found = 0;
  for (int iter = 0; iter < 2000000; ++iter) {
    const double x2 = x + step;
    const double cur = spherical_bessel_j(ell, x2);
    if ((prev < 0.0) != (cur < 0.0)) {
      ++found;
      if (found == q) {
        double lo = x, hi = x2;
        for (int i = 0; i < 100; ++i) {
          const double mid = 0.5 * (lo + hi);
          const double v = spherical_bessel_j(ell, mid);
          if ((spherical_bessel_j(ell, lo) < 0.0) != (v < 0.0))
            hi = mid;
          else
            lo = mid;
        }
        return 0.5 * (lo + hi);
      }
    }
    prev = cur;
    x = x2;
  }
  throw std::logic_error("bessel_zero: search failed");
}

// Wavenumber grid for the Fourier-Bessel pair on [0, R]: nodes at
// k_q = z_q / R with z_q the zeros of j_l, weights from the discrete
// orthogonality of the Bessel series.
struct wavenumber_grid {
  std::vector<double> nodes;
  std::vector<double> weights;  // for integrals against k^2 dk
  int size() const { return int(nodes.size()); }
};

inline wavenumber_grid make_wavenumber_grid(int ell, double R, int n) {
  wavenumber_grid grid;
  grid.nodes.resize(n);
  grid.weights.resize(n);
  for (int q = 1; q <= n; ++q) {
    const double z = bessel_zero(ell, q);
    const double k = z / R;
    const double jn = spherical_bessel_j(ell + 1, z);
    grid.nodes[q - 1] = k;
    grid.weights[q - 1] = std::numbers::pi / (R * R * R * jn * jn * k * k);
  }
  return grid;
}

// Forward transform a(r) -> atilde(k) = sqrt(2/pi) int j_l(kr) a(r) r^2 dr,
// truncated to [0, R] by the grid quadrature.
inline std::vector<double> fourier_bessel_forward(
    const std::vector<double>& a, int ell, const radial_grid& grid,
    const std::vector<double>& k_nodes) {
  if (int(a.size()) != grid.size())
    throw std::invalid_argument("fourier_bessel_forward: sample/grid mismatch");
  const double pref = std::sqrt(2.0 / std::numbers::pi);
  std::vector<double> atilde(k_nodes.size(), 0.0);
  for (std::size_t q = 0; q < k_nodes.size(); ++q) {
    double acc = 0.0;
    for (int i = 0; i < grid.size(); ++i)
      acc += grid.weights[i] *
             spherical_bessel_j(ell, k_nodes[q] * grid.nodes[i]) * a[i];
    atilde[q] = pref * acc;
  }
  return atilde;
}

// Inverse transform on the wavenumber grid's quadrature.
inline std::vector<double> fourier_bessel_inverse(
    const std::vector<double>& atilde, int ell, const wavenumber_grid& kgrid,
    const std::vector<double>& r_nodes) {
  if (atilde.size() != kgrid.nodes.size())
    throw std::invalid_argument(
        "fourier_bessel_inverse: sample/grid mismatch");
  const double pref = std::sqrt(2.0 / std::numbers::pi);
  std::vector<double> a(r_nodes.size(), 0.0);
  for (std::size_t i = 0; i < r_nodes.size(); ++i) {
    double acc = 0.0;
    for (int q = 0; q < kgrid.size(); ++q)
      acc += kgrid.weights[q] * kgrid.nodes[q] * kgrid.nodes[q] *
             spherical_bessel_j(ell, kgrid.nodes[q] * r_nodes[i]) *
             atilde[q];
    a[i] = pref * acc;
  }
  return a;
}

// Per-degree covariance C_l(r_i, r_j) of the radial processes.
struct radial_covariance {
  int spin = 0;
  radial_grid grid;
  std::vector<Eigen::MatrixXd> matrices;  // index l - |spin| .. or full; by l

  int lmax() const { return int(matrices.size()) - 1; }

  double trace_condition() const {
    double acc = 0.0;
    for (int ell = 0; ell <= lmax(); ++ell)
      acc += (2 * ell + 1) * matrices[ell].trace();
    return acc;
  }
};

// Per-degree family of radial functions f_{lj} sampled on the grid,
// satisfying sum_j f_{lj}(r_i) f_{lj}(r_k) = C_l(r_i, r_k).
struct radial_frame {
  int spin = 0;
  radial_grid grid;
  // functions[l] is an n x J_l matrix, one frame function per column
  std::vector<Eigen::MatrixXd> functions;

  int lmax() const { return int(functions.size()) - 1; }
  int count(int ell) const { return int(functions.at(ell).cols()); }
};

// Mercer construction: eigendecompose W^{1/2} C W^{1/2} and map the
// retained eigenpairs back, f_j = sqrt(lambda_j) W^{-1/2} u_j. Pointwise
// covariance reconstruction is exact up to the truncation threshold.
inline radial_frame build_frame(const radial_covariance& cov,
                                double rel_threshold = 1e-12) {
  const int n = cov.grid.size();
  Eigen::VectorXd wsqrt(n), winv(n);
  for (int i = 0; i < n; ++i) {
    wsqrt[i] = std::sqrt(cov.grid.weights[i]);
    winv[i] = 1.0 / wsqrt[i];
  }
  radial_frame frame;
  frame.spin = cov.spin;
  frame.grid = cov.grid;
  frame.functions.reserve(cov.matrices.size());
  for (int ell = 0; ell <= cov.lmax(); ++ell) {
    const Eigen::MatrixXd& c = cov.matrices[ell];
    if (c.rows() != n || c.cols() != n)
      throw std::invalid_argument("build_frame: covariance/grid mismatch");
    const Eigen::MatrixXd b =
        wsqrt.asDiagonal() * ((c + c.transpose()) * 0.5) * wsqrt.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
    const double lmax_eig = es.eigenvalues().size()
                                ? es.eigenvalues().maxCoeff()
                                : 0.0;
    const double scale = std::max(1.0, lmax_eig);
    if (es.eigenvalues().minCoeff() < -1e-10 * scale)
      throw covariance_error("radial covariance at ell = " +
                             std::to_string(ell) + " is not PSD");
    const double cut = rel_threshold * std::max(lmax_eig, 0.0);
    std::vector<int> keep;
    for (int j = n - 1; j >= 0; --j)  // descending eigenvalues
      if (es.eigenvalues()[j] > cut) keep.push_back(j);
    Eigen::MatrixXd f(n, int(keep.size()));
    for (std::size_t col = 0; col < keep.size(); ++col) {
      const int j = keep[col];
      Eigen::VectorXd fj = std::sqrt(es.eigenvalues()[j]) *
                           (winv.asDiagonal() * es.eigenvectors().col(j));
      // fix the sign: first entry above roundoff is positive
      for (int i = 0; i < n; ++i)
        if (std::abs(fj[i]) > 1e-12 * fj.cwiseAbs().maxCoeff()) {
          if (fj[i] < 0.0) fj = -fj;
          break;
        }
      f.col(col) = fj;
    }
    frame.functions.push_back(std::move(f));
  }
  return frame;
}

// Scaling of a user-supplied orthonormal radial basis so that
// {c_j f_j} reproduces the covariance in the basis-projected sense.
struct basis_expansion {
  std::vector<double> scalars;     // |c_j|
  double projected_residual = 0.0;  // off-diagonal mass of the projection
  double pointwise_residual = 0.0;  // ||C - sum c_j^2 f_j f_j^T||_F / ||C||_F
  bool rank_deficient = false;
};

inline basis_expansion expand_in_basis(const Eigen::MatrixXd& covariance,
                                       const Eigen::MatrixXd& basis,
                                       const radial_grid& grid) {
  const int n = grid.size();
  if (covariance.rows() != n || basis.rows() != n)
    throw std::invalid_argument("expand_in_basis: grid size mismatch");
  const int J = int(basis.cols());
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(grid.weights.data(), n);
  const Eigen::MatrixXd gram = basis.transpose() * w.asDiagonal() * basis;
  if (!gram.isApprox(Eigen::MatrixXd::Identity(J, J), 1e-8))
    throw std::invalid_argument(
        "expand_in_basis: basis is not orthonormal under the grid measure");
  // project: M_{jk} = <f_j, C f_k>
  const Eigen::MatrixXd m =
      basis.transpose() * w.asDiagonal() * covariance * w.asDiagonal() * basis;
  basis_expansion out;
  out.scalars.resize(J);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  Eigen::MatrixXd reconstructed = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < J; ++j) {
    const double mjj = m(j, j);
    if (mjj < -1e-10 * scale)
      throw covariance_error(
          "expand_in_basis: negative diagonal projection at j = " +
          std::to_string(j));
    if (mjj <= 1e-14 * scale) out.rank_deficient = true;
    out.scalars[j] = std::sqrt(std::max(mjj, 0.0));
    reconstructed +=
        out.scalars[j] * out.scalars[j] * basis.col(j) * basis.col(j).transpose();
  }
  const Eigen::MatrixXd diag_only = m.diagonal().asDiagonal();
  const double mnorm = m.norm();
  out.projected_residual = mnorm > 0.0 ? (m - diag_only).norm() / mnorm : 0.0;
  const double cnorm = covariance.norm();
  out.pointwise_residual =
      cnorm > 0.0 ? (covariance - reconstructed).norm() / cnorm : 0.0;
  return out;
}

// a_{lm}(r_i) = sum_j f_{lj}(r_i) X_{lmj}, X keyed by (seed, l, m, j).
// One coefficient set per radial node.
inline std::vector<harmonic_coefficients> sample_ball_coefficients(
    const radial_frame& frame, int lmax, std::uint64_t seed) {
  const int s = frame.spin;
  if (lmax < std::abs(s))
    throw std::invalid_argument("sample_ball_coefficients: lmax < |spin|");
  const int n = frame.grid.size();
  std::vector<harmonic_coefficients> per_node(
      n, harmonic_coefficients(s, lmax));
  const int top = std::min(lmax, frame.lmax());
  for (int ell = std::abs(s); ell <= top; ++ell) {
    const Eigen::MatrixXd& f = frame.functions[ell];
    for (int m = -ell; m <= ell; ++m)
      for (int j = 0; j < f.cols(); ++j) {
        const rng::stream st(seed, std::uint64_t(ell),
                             std::uint64_t(lmax + m), std::uint64_t(j),
                             0x6261ll);  // tag distinct from sphere sampling
        const double x = st.normal(0);
        for (int i = 0; i < n; ++i)
          per_node[i].at(ell, m) += f(i, j) * x;
      }
  }
  return per_node;
}

// Full ball field: one synthesized shell map per radial node.
inline std::vector<sphere_map> sample_ball_field(const radial_frame& frame,
                                                 const sphere_grid& grid,
                                                 int lmax, std::uint64_t seed,
                                                 int n_threads = 1) {
  const auto coeffs = sample_ball_coefficients(frame, lmax, seed);
  std::vector<sphere_map> shells;
  shells.reserve(coeffs.size());
  for (const auto& c : coeffs) shells.push_back(synthesize(c, grid, n_threads));
  return shells;
}

}  // namespace isofield
