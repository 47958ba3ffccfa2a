#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace isofield {

// Largest degree the library evaluates; requests above it are rejected
// instead of silently degrading.
inline int& max_supported_ell() {
  static int value = 512;
  return value;
}

namespace detail {

inline void check_ell_limit(int ell) {
  if (ell > max_supported_ell())
    throw std::invalid_argument("ell = " + std::to_string(ell) +
                                " exceeds supported maximum " +
                                std::to_string(max_supported_ell()));
}

// d^j_{mn}(theta) at the lowest admissible degree j = max(|m|,|n|).
// Closed corner forms in half angles; factorial ratios in log space.
inline double wigner_seed(int j, int m, int n, double theta) {
  if (j == 0) return 1.0;
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  int p, q, a;  // exponents of c and s; a enters the binomial
  double sign = 1.0;
  if (m == j) {
    p = j + n;
    q = j - n;
    a = n;
    if ((j - n) % 2 != 0) sign = -1.0;
  } else if (m == -j) {
    p = j - n;
    q = j + n;
    a = n;
  } else if (n == j) {
    p = j + m;
    q = j - m;
    a = m;
  } else {  // n == -j
    p = j - m;
    q = j + m;
    a = m;
    if ((j + m) % 2 != 0) sign = -1.0;
  }
  double lv = 0.5 * (std::lgamma(2 * j + 1.0) - std::lgamma(j + a + 1.0) -
                     std::lgamma(j - a + 1.0));
  if (p > 0) {
    if (c == 0.0) return 0.0;
    lv += p * std::log(c);
  }
  if (q > 0) {
    if (s == 0.0) return 0.0;
    lv += q * std::log(s);
  }
  return sign * std::exp(lv);
}

}  // namespace detail

// d^ell_{mn}(theta) for ell = max(|m|,|n|) .. lmax, by the three-term
// recurrence in ell. Returned vector is indexed from ell0 = max(|m|,|n|).
inline std::vector<double> wigner_d_sequence(int lmax, int m, int n,
                                             double theta) {
  detail::check_ell_limit(lmax);
  const int ell0 = std::max(std::abs(m), std::abs(n));
  if (lmax < ell0) return {};
  const double x = std::cos(theta);
  std::vector<double> d(lmax - ell0 + 1);
  d[0] = detail::wigner_seed(ell0, m, n, theta);
  if (lmax == ell0) return d;
  double prev = 0.0, cur = d[0];
  for (int ell = ell0; ell < lmax; ++ell) {
    double next;
    if (ell == 0) {
      next = x * cur;  // m = n = 0 only; the general step degenerates
    } else {
      const double lp1 = ell + 1.0;
      const double cnum =
          (2 * ell + 1.0) * (ell * lp1 * x - double(m) * n) * cur -
          lp1 * std::sqrt(double(ell * ell - m * m) *
                          double(ell * ell - n * n)) *
              prev;
      const double cden = ell * std::sqrt((lp1 * lp1 - m * m) *
                                          (lp1 * lp1 - n * n));
      next = cnum / cden;
    }
    prev = cur;
    cur = next;
    d[ell + 1 - ell0] = next;
  }
  return d;
}

// Full Wigner (2l+1)x(2l+1) matrix d^l_{mn}(theta).
class wigner_d_table {
 public:
  wigner_d_table(int ell, double theta) : ell_(ell), theta_(theta) {
    if (ell < 0) throw std::invalid_argument("wigner_d: ell must be >= 0");
    if (theta < 0.0 || theta > std::numbers::pi)
      throw std::invalid_argument("wigner_d: theta must lie in [0, pi]");
    detail::check_ell_limit(ell);
    const int dim = 2 * ell + 1;
    entries_.resize(std::size_t(dim) * dim);
    for (int m = -ell; m <= ell; ++m)
      for (int n = -ell; n <= ell; ++n) {
        const auto seq = wigner_d_sequence(ell, m, n, theta);
        entries_[index(m, n)] = seq.back();
      }
  }

  int ell() const { return ell_; }
  double theta() const { return theta_; }
  int dim() const { return 2 * ell_ + 1; }

  double operator()(int m, int n) const { return entries_[index(m, n)]; }

 private:
  std::size_t index(int m, int n) const {
    return std::size_t(m + ell_) * dim() + (n + ell_);
  }
  int ell_;
  double theta_;
  std::vector<double> entries_;
};

inline wigner_d_table wigner_d(int ell, double theta) {
  return wigner_d_table(ell, theta);
}

// Column n of all tables up to lmax at once: result[m + lmax][ell - ell0]
// holds d^ell_{m,n}(theta), ell0 = max(|m|,|n|). This is the access
// pattern of the spherical harmonic transforms.
inline std::vector<std::vector<double>> wigner_d_column(int lmax, int n,
                                                        double theta) {
  detail::check_ell_limit(lmax);
  std::vector<std::vector<double>> cols(2 * lmax + 1);
  for (int m = -lmax; m <= lmax; ++m)
    cols[m + lmax] = wigner_d_sequence(lmax, m, n, theta);
  return cols;
}

}  // namespace isofield
