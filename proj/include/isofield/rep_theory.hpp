#pragma once

#include <cmath>
#include <complex>
#include <compare>
#include <cstdlib>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace isofield::rep {

enum class group_id { so2, o2, so3, o3 };

inline std::string to_string(group_id g) {
  switch (g) {
    case group_id::so2: return "SO2";
    case group_id::o2: return "O2";
    case group_id::so3: return "SO3";
    default: return "O3";
  }
}

enum class field_id { real, complex_ };

// Symbolic label of an irreducible representation:
//   SO2: index = m (character e^{i m phi} over C; rotation block over R)
//   O2 : index = 0 with sign = +/-1 (E^{0+-}), or index = m >= 1 (E^m)
//   SO3: index = ell >= 0
//   O3 : index = ell >= 0, sign = +/-1 (V^{ell +-})
struct irrep_label {
  group_id group;
  int index = 0;
  int sign = 0;

  auto operator<=>(const irrep_label&) const = default;
};

inline irrep_label so2_irrep(int m) { return {group_id::so2, m, 0}; }
inline irrep_label o2_irrep(int m, int sign = 0) {
  if (m < 0 || (m == 0 && sign != 1 && sign != -1) || (m > 0 && sign != 0))
    throw std::invalid_argument("o2_irrep: invalid label");
  return {group_id::o2, m, sign};
}
inline irrep_label so3_irrep(int ell) {
  if (ell < 0) throw std::invalid_argument("so3_irrep: ell < 0");
  return {group_id::so3, ell, 0};
}
inline irrep_label o3_irrep(int ell, int sign) {
  if (ell < 0 || (sign != 1 && sign != -1))
    throw std::invalid_argument("o3_irrep: invalid label");
  return {group_id::o3, ell, sign};
}

inline int dimension(const irrep_label& v, field_id field) {
  switch (v.group) {
    case group_id::so2:
      return (field == field_id::complex_ || v.index == 0) ? 1 : 2;
    case group_id::o2:
      return v.index == 0 ? 1 : 2;
    default:
      return 2 * v.index + 1;
  }
}

inline std::string to_string(const irrep_label& v) {
  std::ostringstream os;
  switch (v.group) {
    case group_id::so2:
      os << "chi(" << v.index << ")";
      break;
    case group_id::o2:
      os << "E" << v.index;
      if (v.index == 0) os << (v.sign > 0 ? "+" : "-");
      break;
    case group_id::so3:
      os << "V(l=" << v.index << ")";
      break;
    case group_id::o3:
      os << "V(l=" << v.index << ",parity=" << (v.sign > 0 ? "+" : "-") << ")";
      break;
  }
  return os.str();
}

// Formal multiset of irreps with multiplicities.
class rep_decomposition {
 public:
  rep_decomposition() = default;

  void add(const irrep_label& v, int mult = 1) {
    if (mult < 0) throw std::invalid_argument("rep_decomposition: mult < 0");
    if (mult == 0) return;
    terms_[v] += mult;
  }
  void add(const rep_decomposition& other, int mult = 1) {
    for (const auto& [v, n] : other.terms_) add(v, n * mult);
  }

  int multiplicity(const irrep_label& v) const {
    auto it = terms_.find(v);
    return it == terms_.end() ? 0 : it->second;
  }

  int total_dimension(field_id field) const {
    int dim = 0;
    for (const auto& [v, n] : terms_) dim += n * dimension(v, field);
    return dim;
  }

  const std::map<irrep_label, int>& terms() const { return terms_; }
  bool operator==(const rep_decomposition&) const = default;

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, n] : terms_)
      for (int i = 0; i < n; ++i) {
        if (!first) os << " + ";
        os << to_string(v);
        first = false;
      }
    if (first) os << "0";
    return os.str();
  }

 private:
  std::map<irrep_label, int> terms_;
};

// res^{SO3}_{SO2} V^ell = sum of characters e^{i m phi}, -ell <= m <= ell.
inline rep_decomposition restrict_so3_to_so2(int ell) {
  if (ell < 0) throw std::invalid_argument("restrict_so3_to_so2: ell < 0");
  rep_decomposition dec;
  for (int m = -ell; m <= ell; ++m) dec.add(so2_irrep(m));
  return dec;
}

// Branching of O(3) irreps to O(2):
//   V^{2l +-}     -> E^{0+-} + E^1 + ... + E^{2l}
//   V^{(2l+1) +-} -> E^{0-+} + E^1 + ... + E^{2l+1}
inline rep_decomposition restrict_o3_to_o2(const irrep_label& v) {
  if (v.group != group_id::o3)
    throw std::invalid_argument("restrict_o3_to_o2: expected an O3 label");
  const int ell = v.index;
  const int zero_sign = (ell % 2 == 0) ? v.sign : -v.sign;
  rep_decomposition dec;
  dec.add(o2_irrep(0, zero_sign));
  for (int m = 1; m <= ell; ++m) dec.add(o2_irrep(m));
  return dec;
}

// Tensor products of O(2) irreps, resolved by character arithmetic:
//   E^{0s} x E^{0t} = E^{0 st},  E^{0s} x E^m = E^m,
//   E^m x E^n = E^{|m-n|(sign...)} + E^{m+n}, with E^m x E^m
//   = E^{0+} + E^{0-} + E^{2m}.
inline rep_decomposition tensor_o2(const irrep_label& a,
                                   const irrep_label& b) {
  if (a.group != group_id::o2 || b.group != group_id::o2)
    throw std::invalid_argument("tensor_o2: expected O2 labels");
  rep_decomposition dec;
  if (a.index == 0 && b.index == 0) {
    dec.add(o2_irrep(0, a.sign * b.sign));
  } else if (a.index == 0 || b.index == 0) {
    dec.add(o2_irrep(std::max(a.index, b.index)));
  } else if (a.index == b.index) {
    dec.add(o2_irrep(0, +1));
    dec.add(o2_irrep(0, -1));
    dec.add(o2_irrep(2 * a.index));
  } else {
    dec.add(o2_irrep(std::abs(a.index - b.index)));
    dec.add(o2_irrep(a.index + b.index));
  }
  return dec;
}

inline rep_decomposition tensor_o2(const rep_decomposition& a,
                                   const rep_decomposition& b) {
  rep_decomposition dec;
  for (const auto& [va, na] : a.terms())
    for (const auto& [vb, nb] : b.terms())
      dec.add(tensor_o2(va, vb), na * nb);
  return dec;
}

// A conjugacy-class parameter: rotation angle plus the non-identity-
// component flag (reflection for O2, central inversion for O3).
struct group_element {
  double angle = 0.0;
  bool flip = false;  // reflection / inversion
};

// Character (trace of the representing matrix). Real for all groups in
// scope except SO2 over C, whose character is e^{i m phi}.
inline std::complex<double> character(const irrep_label& v,
                                      const group_element& g) {
  switch (v.group) {
    case group_id::so2:
      return {std::cos(v.index * g.angle), std::sin(v.index * g.angle)};
    case group_id::o2:
      if (v.index == 0) return g.flip ? double(v.sign) : 1.0;
      return g.flip ? 0.0 : 2.0 * std::cos(v.index * g.angle);
    case group_id::so3:
    case group_id::o3: {
      // Weyl character: sum_{m=-l..l} e^{i m angle}
      double chi = 1.0;
      for (int m = 1; m <= v.index; ++m) chi += 2.0 * std::cos(m * g.angle);
      if (v.group == group_id::o3 && g.flip && v.sign < 0) chi = -chi;
      return chi;
    }
  }
  return 0.0;
}

inline std::complex<double> character(const rep_decomposition& dec,
                                      const group_element& g) {
  std::complex<double> chi = 0.0;
  for (const auto& [v, n] : dec.terms()) chi += double(n) * character(v, g);
  return chi;
}

// Exact rational with a small integer range; keeps non-integral
// multiplicities visible instead of rounding them away.
struct rational {
  long long num = 0;
  long long den = 1;

  rational() = default;
  rational(long long n, long long d = 1) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    const long long g = std::gcd(std::abs(num), den);
    if (g > 1) { num /= g; den /= g; }
  }
  bool is_integral() const { return den == 1; }
  bool operator==(const rational&) const = default;
};

namespace detail {

// <chi, chi>_G by exact trigonometric quadrature over conjugacy classes.
// Characters in scope are trig polynomials, so a uniform grid with more
// than 2*(degree)+1 points integrates them exactly.
inline double character_self_product(const irrep_label& v, field_id field) {
  const int npts = 8 * (v.index + 2);
  const auto avg_rotation = [&](bool flip, auto&& weight) {
    double acc = 0.0;
    for (int i = 0; i < npts; ++i) {
      const double phi = 2.0 * std::numbers::pi * i / npts;
      std::complex<double> chi;
      if (v.group == group_id::so2 && field == field_id::real) {
        // complexification of the real rotation block: 2 cos(m phi)
        chi = (v.index == 0) ? 1.0 : 2.0 * std::cos(v.index * phi);
      } else {
        chi = character(v, {phi, flip});
      }
      acc += std::norm(chi) * weight(phi);
    }
    return acc / npts;
  };
  const auto unit = [](double) { return 1.0; };
  // Weyl measure on SO(3) classes: 2 sin^2(phi/2) d phi / (2 pi)
  const auto weyl = [](double phi) {
    const double s = std::sin(0.5 * phi);
    return 2.0 * s * s;
  };
  switch (v.group) {
    case group_id::so2:
      return avg_rotation(false, unit);
    case group_id::o2:
      return 0.5 * (avg_rotation(false, unit) + avg_rotation(true, unit));
    case group_id::so3:
      return avg_rotation(false, weyl);
    case group_id::o3:
      return 0.5 * (avg_rotation(false, weyl) + avg_rotation(true, weyl));
  }
  return 0.0;
}

}  // namespace detail

enum class division_algebra { R, C, H };

inline int dimension(division_algebra d) {
  switch (d) {
    case division_algebra::R: return 1;
    case division_algebra::C: return 2;
    default: return 4;
  }
}

// Type of the self-intertwiner algebra D(V). Over C it is always C.
// Over R, complexify and count irreducible components via <chi,chi>:
// 1 component -> R, two inequivalent -> C (<chi,chi> = 2), two
// equivalent -> H (<chi,chi> = 4).
inline division_algebra division_algebra_type(const irrep_label& v,
                                              field_id field) {
  if (field == field_id::complex_) return division_algebra::C;
  const double ip = detail::character_self_product(v, field);
  const long rounded = std::lround(ip);
  if (std::abs(ip - double(rounded)) > 1e-9)
    throw std::logic_error("division_algebra_type: non-integral <chi,chi>");
  switch (rounded) {
    case 1: return division_algebra::R;
    case 2: return division_algebra::C;
    case 4: return division_algebra::H;
    default:
      throw std::logic_error("division_algebra_type: unexpected <chi,chi> = " +
                             std::to_string(rounded));
  }
}

// Frobenius reciprocity for the induced representation: the multiplicity
// of the G-irrep V in the space of L2 sections of the bundle with fiber
// E = sum_i n_i E_i is
//   n(V, H) = sum_i n_i n(E_i, res^G_K V) / dim_K D(V).
inline rational induced_multiplicity(const irrep_label& v,
                                     const rep_decomposition& fiber,
                                     field_id field) {
  rep_decomposition res;
  if (v.group == group_id::so3)
    res = restrict_so3_to_so2(v.index);
  else if (v.group == group_id::o3)
    res = restrict_o3_to_o2(v);
  else
    throw std::invalid_argument(
        "induced_multiplicity: supported pairs are (SO3,SO2) and (O3,O2)");
  long long total = 0;
  for (const auto& [e, n] : fiber.terms()) total += n * res.multiplicity(e);
  // dim_K D(V): over C the self-intertwiners are C itself, dimension 1; over
  // R it is the real dimension of the division algebra.
  const long long dim_d =
      (field == field_id::complex_)
          ? 1
          : dimension(division_algebra_type(v, field));
  return rational(total, dim_d);
}

}  // namespace isofield::rep
