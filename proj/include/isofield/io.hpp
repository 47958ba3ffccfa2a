#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "isofield/errors.hpp"
#include "isofield/radial.hpp"
#include "isofield/random_field.hpp"
#include "isofield/transform.hpp"

namespace isofield::io {

inline constexpr int schema_version = 1;

// 17 significant digits round-trip doubles exactly.
inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open '" + path + "' for reading");
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw format_error("cannot open '" + path + "' for writing");
  return out;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

inline double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw format_error(where + ": bad number '" + s + "'");
  }
}

inline long parse_int(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw format_error(where + ": bad integer '" + s + "'");
  }
}

}  // namespace detail

// ---- map file: JSON ------------------------------------------------------

inline void write_map(const sphere_map& map, const std::string& path) {
  nlohmann::ordered_json j;
  j["schema_version"] = schema_version;
  j["spin"] = map.spin;
  j["n_theta"] = map.grid.n_theta;
  j["n_phi"] = map.grid.n_phi;
  j["grid"] = "gauss-legendre";
  j["lmax_exact"] = map.grid.lmax_exact;
  auto values = nlohmann::json::array();
  for (const auto& v : map.values)
    values.push_back({v.real(), v.imag()});
  j["values"] = std::move(values);
  detail::open_out(path) << j.dump() << "\n";
}

inline sphere_map read_map(const std::string& path) {
  nlohmann::json j;
  try {
    detail::open_in(path) >> j;
  } catch (const nlohmann::json::exception& e) {
    throw format_error(std::string("map file: ") + e.what());
  }
  try {
    if (j.at("schema_version").get<int>() != schema_version)
      throw format_error("map file: unsupported schema_version");
    if (j.at("grid").get<std::string>() != "gauss-legendre")
      throw format_error("map file: unsupported grid type");
    sphere_map map;
    map.spin = j.at("spin").get<int>();
    const int lmax = j.at("lmax_exact").get<int>();
    map.grid = make_grid(lmax);
    if (map.grid.n_theta != j.at("n_theta").get<int>() ||
        map.grid.n_phi != j.at("n_phi").get<int>())
      throw format_error("map file: grid shape does not match lmax_exact");
    const auto& values = j.at("values");
    if (int(values.size()) != map.grid.n_theta * map.grid.n_phi)
      throw format_error("map file: wrong number of values");
    map.values.reserve(values.size());
    for (const auto& v : values)
      map.values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    return map;
  } catch (const nlohmann::json::exception& e) {
    throw format_error(std::string("map file: ") + e.what());
  }
}

// ---- coefficient file: CSV -----------------------------------------------

inline void write_coefficients(const harmonic_coefficients& coeffs,
                               const std::string& path) {
  auto out = detail::open_out(path);
  out << "spin,lmax\n" << coeffs.spin() << "," << coeffs.lmax() << "\n";
  out << "ell,m,re,im\n";
  for (int ell = coeffs.min_ell(); ell <= coeffs.lmax(); ++ell)
    for (int m = -ell; m <= ell; ++m) {
      const auto a = coeffs.at(ell, m);
      out << ell << "," << m << "," << fmt(a.real()) << "," << fmt(a.imag())
          << "\n";
    }
}

inline harmonic_coefficients read_coefficients(const std::string& path) {
  auto in = detail::open_in(path);
  std::string line;
  if (!std::getline(in, line) || detail::split_csv(line) !=
                                     std::vector<std::string>{"spin", "lmax"})
    throw format_error("coefficient file: expected header 'spin,lmax'");
  if (!std::getline(in, line))
    throw format_error("coefficient file: missing spin/lmax row");
  const auto head = detail::split_csv(line);
  if (head.size() != 2)
    throw format_error("coefficient file: malformed spin/lmax row");
  const int spin = int(detail::parse_int(head[0], "coefficient file"));
  const int lmax = int(detail::parse_int(head[1], "coefficient file"));
  if (lmax < std::abs(spin))
    throw format_error("coefficient file: lmax < |spin|");
  harmonic_coefficients coeffs(spin, lmax);
  if (!std::getline(in, line) ||
      detail::split_csv(line) !=
          std::vector<std::string>{"ell", "m", "re", "im"})
    throw format_error("coefficient file: expected header 'ell,m,re,im'");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv(line);
    if (f.size() != 4) throw format_error("coefficient file: malformed row");
    const int ell = int(detail::parse_int(f[0], "coefficient file"));
    const int m = int(detail::parse_int(f[1], "coefficient file"));
    if (ell < std::abs(spin) || ell > lmax || std::abs(m) > ell)
      throw format_error("coefficient file: (ell,m) out of range");
    coeffs.at(ell, m) = {detail::parse_double(f[2], "coefficient file"),
                         detail::parse_double(f[3], "coefficient file")};
  }
  return coeffs;
}

// ---- spectrum file: CSV "ell,comp_i,comp_j,value" --------------------------

inline void write_spectrum(const power_spectrum_set& spec,
                           const std::string& path) {
  auto out = detail::open_out(path);
  out << "ell,comp_i,comp_j,value\n";
  for (int ell = 0; ell <= spec.lmax(); ++ell)
    for (int i = 0; i < spec.n_components(); ++i)
      for (int j = i; j < spec.n_components(); ++j) {
        const double v = spec.matrix(ell)(i, j);
        if (v != 0.0)
          out << ell << "," << spec.components()[i].name << ","
              << spec.components()[j].name << "," << fmt(v) << "\n";
      }
}

// Component metadata inferred from the conventional names: E and B are
// the spin-2 streams, V and B are parity-odd. Anything else is a scalar.
inline component_spec component_from_name(const std::string& name) {
  if (name == "E") return {"E", 2, false};
  if (name == "B") return {"B", 2, true};
  if (name == "V") return {"V", 0, true};
  return {name, 0, false};
}

inline power_spectrum_set read_spectrum(const std::string& path,
                                        int lmax = -1) {
  auto in = detail::open_in(path);
  std::string line;
  if (!std::getline(in, line) ||
      detail::split_csv(line) !=
          std::vector<std::string>{"ell", "comp_i", "comp_j", "value"})
    throw format_error("spectrum file: expected header 'ell,comp_i,comp_j,value'");
  struct row_t {
    int ell;
    std::string ci, cj;
    double v;
  };
  std::vector<row_t> rows;
  std::vector<std::string> names;
  int max_ell = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv(line);
    if (f.size() != 4) throw format_error("spectrum file: malformed row");
    row_t row{int(detail::parse_int(f[0], "spectrum file")), f[1], f[2],
              detail::parse_double(f[3], "spectrum file")};
    if (row.ell < 0) throw format_error("spectrum file: negative ell");
    max_ell = std::max(max_ell, row.ell);
    for (const auto& name : {row.ci, row.cj})
      if (std::find(names.begin(), names.end(), name) == names.end())
        names.push_back(name);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw format_error("spectrum file: no data rows");
  if (lmax < 0) lmax = max_ell;
  std::vector<component_spec> components;
  for (const auto& name : names) components.push_back(component_from_name(name));
  power_spectrum_set spec(components, lmax);
  for (const auto& row : rows) {
    if (row.ell > lmax) continue;
    const int i = spec.component_index(row.ci);
    const int j = spec.component_index(row.cj);
    spec.entry(row.ell, i, j) = row.v;
    spec.entry(row.ell, j, i) = row.v;
  }
  return spec;
}

// ---- radial grid: JSON {R, nodes, weights} ---------------------------------

inline void write_radial_grid(const radial_grid& grid,
                              const std::string& path) {
  nlohmann::ordered_json j;
  j["schema_version"] = schema_version;
  j["R"] = grid.R;
  j["nodes"] = grid.nodes;
  j["weights"] = grid.weights;
  detail::open_out(path) << j.dump() << "\n";
}

inline radial_grid read_radial_grid(const std::string& path) {
  nlohmann::json j;
  try {
    detail::open_in(path) >> j;
    radial_grid grid;
    grid.R = j.at("R").get<double>();
    grid.nodes = j.at("nodes").get<std::vector<double>>();
    grid.weights = j.at("weights").get<std::vector<double>>();
    if (grid.nodes.size() != grid.weights.size() || grid.nodes.empty())
      throw format_error("radial grid file: node/weight mismatch");
    return grid;
  } catch (const nlohmann::json::exception& e) {
    throw format_error(std::string("radial grid file: ") + e.what());
  }
}

// ---- radial covariance: CSV "ell,i,j,value" --------------------------------

inline void write_radial_covariance(const radial_covariance& cov,
                                    const std::string& path) {
  auto out = detail::open_out(path);
  out << "ell,i,j,value\n";
  for (int ell = 0; ell <= cov.lmax(); ++ell)
    for (int i = 0; i < cov.matrices[ell].rows(); ++i)
      for (int j = 0; j < cov.matrices[ell].cols(); ++j)
        if (cov.matrices[ell](i, j) != 0.0)
          out << ell << "," << i << "," << j << ","
              << fmt(cov.matrices[ell](i, j)) << "\n";
}

inline radial_covariance read_radial_covariance(const std::string& path,
                                                const radial_grid& grid,
                                                int spin = 0) {
  auto in = detail::open_in(path);
  std::string line;
  if (!std::getline(in, line) ||
      detail::split_csv(line) !=
          std::vector<std::string>{"ell", "i", "j", "value"})
    throw format_error("covariance file: expected header 'ell,i,j,value'");
  struct row_t {
    int ell, i, j;
    double v;
  };
  std::vector<row_t> rows;
  int max_ell = 0;
  const int n = grid.size();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv(line);
    if (f.size() != 4) throw format_error("covariance file: malformed row");
    row_t row{int(detail::parse_int(f[0], "covariance file")),
              int(detail::parse_int(f[1], "covariance file")),
              int(detail::parse_int(f[2], "covariance file")),
              detail::parse_double(f[3], "covariance file")};
    if (row.ell < 0 || row.i < 0 || row.i >= n || row.j < 0 || row.j >= n)
      throw format_error("covariance file: index out of range");
    max_ell = std::max(max_ell, row.ell);
    rows.push_back(row);
  }
  if (rows.empty()) throw format_error("covariance file: no data rows");
  radial_covariance cov;
  cov.spin = spin;
  cov.grid = grid;
  cov.matrices.assign(max_ell + 1, Eigen::MatrixXd::Zero(n, n));
  for (const auto& row : rows) cov.matrices[row.ell](row.i, row.j) = row.v;
  return cov;
}

// ---- radial frame: CSV "ell,j,i,value" -------------------------------------

inline void write_frame(const radial_frame& frame, const std::string& path) {
  auto out = detail::open_out(path);
  out << "ell,j,i,value\n";
  for (int ell = 0; ell <= frame.lmax(); ++ell)
    for (int j = 0; j < frame.count(ell); ++j)
      for (int i = 0; i < frame.grid.size(); ++i)
        out << ell << "," << j << "," << i << ","
            << fmt(frame.functions[ell](i, j)) << "\n";
}

inline radial_frame read_frame(const std::string& path,
                               const radial_grid& grid, int spin = 0) {
  auto in = detail::open_in(path);
  std::string line;
  if (!std::getline(in, line) ||
      detail::split_csv(line) !=
          std::vector<std::string>{"ell", "j", "i", "value"})
    throw format_error("frame file: expected header 'ell,j,i,value'");
  const int n = grid.size();
  std::map<int, std::map<int, Eigen::VectorXd>> data;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv(line);
    if (f.size() != 4) throw format_error("frame file: malformed row");
    const int ell = int(detail::parse_int(f[0], "frame file"));
    const int j = int(detail::parse_int(f[1], "frame file"));
    const int i = int(detail::parse_int(f[2], "frame file"));
    if (ell < 0 || j < 0 || i < 0 || i >= n)
      throw format_error("frame file: index out of range");
    auto& fn = data[ell];
    if (!fn.count(j)) fn[j] = Eigen::VectorXd::Zero(n);
    fn[j][i] = detail::parse_double(f[3], "frame file");
  }
  if (data.empty()) throw format_error("frame file: no data rows");
  radial_frame frame;
  frame.spin = spin;
  frame.grid = grid;
  const int lmax = data.rbegin()->first;
  frame.functions.assign(lmax + 1, Eigen::MatrixXd::Zero(n, 0));
  for (auto& [ell, fns] : data) {
    Eigen::MatrixXd f(n, int(fns.size()));
    int col = 0;
    for (auto& [j, vec] : fns) f.col(col++) = vec;
    frame.functions[ell] = std::move(f);
  }
  return frame;
}

}  // namespace isofield::io
