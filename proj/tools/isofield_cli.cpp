// Command-line surface for the isofield library: simulation, analysis and
// representation queries over the file formats documented in the README.

#include <CLI11.hpp>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "isofield/isofield.hpp"

namespace {

using namespace isofield;

// ---- irrep label parsing ---------------------------------------------------

rep::irrep_label parse_o2_label(const std::string& text) {
  if (text.size() >= 2 && (text[0] == 'E' || text[0] == 'e')) {
    const std::string body = text.substr(1);
    if (body == "0+") return rep::o2_irrep(0, +1);
    if (body == "0-") return rep::o2_irrep(0, -1);
    try {
      return rep::o2_irrep(std::stoi(body));
    } catch (const std::exception&) {
    }
  }
  throw std::invalid_argument("cannot parse O2 irrep label '" + text +
                              "' (expected E0+, E0- or Em)");
}

rep::irrep_label parse_v_label(const std::string& text, rep::group_id group) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if ((text[0] != 'V' && text[0] != 'v') || open == std::string::npos ||
      close == std::string::npos || close < open)
    throw std::invalid_argument("cannot parse irrep label '" + text + "'");
  std::string body = text.substr(open + 1, close - open - 1);
  std::vector<std::string> parts;
  std::stringstream ss(body);
  std::string part;
  while (std::getline(ss, part, ',')) parts.push_back(part);
  auto strip_key = [](std::string s) {
    const auto eq = s.find('=');
    return eq == std::string::npos ? s : s.substr(eq + 1);
  };
  if (parts.empty()) throw std::invalid_argument("empty irrep label");
  const int ell = std::stoi(strip_key(parts[0]));
  if (group == rep::group_id::so3) {
    if (parts.size() != 1)
      throw std::invalid_argument("SO3 labels take a single degree: V(l)");
    return rep::so3_irrep(ell);
  }
  if (parts.size() != 2)
    throw std::invalid_argument("O3 labels need a parity: V(l,+) or V(l,-)");
  const std::string p = strip_key(parts[1]);
  if (p != "+" && p != "-")
    throw std::invalid_argument("parity must be + or -");
  return rep::o3_irrep(ell, p == "+" ? +1 : -1);
}

rep::rep_decomposition parse_fiber(const std::string& text,
                                   rep::group_id group) {
  rep::rep_decomposition fiber;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    if (group == rep::group_id::o3)
      fiber.add(parse_o2_label(token));
    else
      fiber.add(rep::so2_irrep(std::stoi(token)));
  }
  return fiber;
}

// ---- subcommand bodies -----------------------------------------------------

struct synth_options {
  int spin = 0;
  int lmax = -1;
  std::string spectrum_path;
  std::uint64_t seed = 0;
  bool real = false;
  bool allow_parity_violation = false;
  int threads = 1;
  std::string out_map;
  std::string out_coeffs;
};

int run_synth(const synth_options& opt) {
  power_spectrum_set spec =
      io::read_spectrum(opt.spectrum_path, opt.lmax >= 0 ? opt.lmax : -1);
  if (spec.n_components() != 1)
    throw std::invalid_argument(
        "synth expects a single-component spectrum file");
  const coefficient_sample sample = sample_coefficients(
      spec, opt.seed, opt.real, opt.allow_parity_violation);
  const harmonic_coefficients& raw = sample.components[0];
  harmonic_coefficients coeffs(opt.spin, raw.lmax());
  for (int ell = 0; ell <= raw.lmax(); ++ell)
    for (int m = -ell; m <= ell; ++m) {
      if (ell < std::abs(opt.spin)) {
        if (raw.at(ell, m) != std::complex<double>(0.0, 0.0))
          throw spectrum_error(
              "spectrum has support below ell = |spin|; zero it or lower "
              "--spin");
      } else {
        coeffs.at(ell, m) = raw.at(ell, m);
      }
    }
  if (!opt.out_coeffs.empty()) io::write_coefficients(coeffs, opt.out_coeffs);
  if (!opt.out_map.empty()) {
    const sphere_grid grid = make_grid(coeffs.lmax());
    io::write_map(synthesize(coeffs, grid, opt.threads), opt.out_map);
  }
  return 0;
}

int run_mult(const std::string& group_name, const std::string& restrict_label,
             const std::string& tensor_expr, const std::string& mult_label,
             const std::string& fiber_expr, const std::string& type_label,
             const std::string& field_name) {
  rep::group_id group;
  if (group_name == "SO3")
    group = rep::group_id::so3;
  else if (group_name == "O3")
    group = rep::group_id::o3;
  else
    throw std::invalid_argument("--group must be SO3 or O3");
  const rep::field_id field = field_name == "real" ? rep::field_id::real
                                                   : rep::field_id::complex_;

  if (!restrict_label.empty()) {
    const auto v = parse_v_label(restrict_label, group);
    if (group == rep::group_id::o3) {
      std::cout << rep::to_string(v)
                << " |_O2 = " << rep::restrict_o3_to_o2(v).str() << "\n";
    } else {
      std::cout << rep::to_string(v) << " |_SO2 = "
                << rep::restrict_so3_to_so2(v.index).str() << "\n";
    }
  }
  if (!tensor_expr.empty()) {
    const auto x = tensor_expr.find('x');
    if (x == std::string::npos)
      throw std::invalid_argument("--tensor expects 'EaxEb', e.g. E1xE3");
    const auto a = parse_o2_label(tensor_expr.substr(0, x));
    const auto b = parse_o2_label(tensor_expr.substr(x + 1));
    std::cout << rep::to_string(a) << " x " << rep::to_string(b) << " = "
              << rep::tensor_o2(a, b).str() << "\n";
  }
  if (!mult_label.empty()) {
    if (fiber_expr.empty())
      throw std::invalid_argument("--multiplicity requires --fiber");
    const auto v = parse_v_label(mult_label, group);
    const auto fiber = parse_fiber(fiber_expr, group);
    const auto n = rep::induced_multiplicity(v, fiber, field);
    std::cout << "n(" << rep::to_string(v) << ", H[" << fiber.str()
              << "]) = " << n.num;
    if (!n.is_integral()) std::cout << "/" << n.den;
    std::cout << "\n";
  }
  if (!type_label.empty()) {
    const auto v = parse_v_label(type_label, group);
    const auto d = rep::division_algebra_type(v, field);
    const char* name = d == rep::division_algebra::R   ? "R"
                       : d == rep::division_algebra::C ? "C"
                                                       : "H";
    std::cout << "D(" << rep::to_string(v) << ") = " << name
              << " (dim " << rep::dimension(d) << ")\n";
  }
  return 0;
}

std::string shell_path(const std::string& prefix, int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_shell_%03d.json", i);
  return prefix + buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isotropic Gaussian random sections on the sphere and ball"};
  app.set_version_flag("--version",
                       std::string("isofield 1.0.0 schema_version=") +
                           std::to_string(isofield::io::schema_version));
  app.require_subcommand(0, 1);

  // synth
  synth_options sopt;
  auto* synth = app.add_subcommand("synth", "sample a field from a spectrum");
  synth->add_option("--spin", sopt.spin, "spin weight of the output field");
  synth->add_option("--lmax", sopt.lmax, "band limit (default: from file)");
  synth->add_option("--spectrum", sopt.spectrum_path, "spectrum CSV")
      ->required();
  synth->add_option("--seed", sopt.seed, "RNG seed (required)")->required();
  synth->add_flag("--real", sopt.real, "apply the reality constraint");
  synth->add_flag("--allow-parity-violation", sopt.allow_parity_violation,
                  "permit scalar/pseudo-scalar cross spectra");
  synth->add_option("--threads", sopt.threads, "worker threads");
  synth->add_option("--out", sopt.out_map, "output map JSON");
  synth->add_option("--coeffs-out", sopt.out_coeffs,
                    "also write the sampled coefficients");

  // analyze
  std::string an_in, an_out;
  int an_lmax = -1, an_threads = 1;
  auto* analyze_cmd =
      app.add_subcommand("analyze", "map -> harmonic coefficients");
  analyze_cmd->add_option("--in", an_in, "input map JSON")->required();
  analyze_cmd->add_option("--lmax", an_lmax, "analysis band limit");
  analyze_cmd->add_option("--threads", an_threads, "worker threads");
  analyze_cmd->add_option("--out", an_out, "output coefficient CSV")
      ->required();

  // spectrum
  std::string sp_in, sp_in2, sp_out, sp_name = "T", sp_name2 = "U";
  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "estimate the power spectrum");
  spectrum_cmd->add_option("--in", sp_in, "coefficient CSV")->required();
  spectrum_cmd->add_option("--in2", sp_in2,
                           "second coefficient CSV for a cross spectrum");
  spectrum_cmd->add_option("--name", sp_name, "component name");
  spectrum_cmd->add_option("--name2", sp_name2, "second component name");
  spectrum_cmd->add_option("--out", sp_out, "output spectrum CSV")->required();

  // eb
  std::string eb_dir, eb_e, eb_b, eb_plus, eb_minus, eb_out_e, eb_out_b,
      eb_out_plus, eb_out_minus;
  auto* eb_cmd = app.add_subcommand("eb", "E/B <-> spin +-2 coefficients");
  eb_cmd->add_option("--direction", eb_dir, "eb2qu or qu2eb")->required();
  eb_cmd->add_option("--e", eb_e, "E coefficient CSV");
  eb_cmd->add_option("--b", eb_b, "B coefficient CSV");
  eb_cmd->add_option("--plus", eb_plus, "spin +2 coefficient CSV");
  eb_cmd->add_option("--minus", eb_minus, "spin -2 coefficient CSV");
  eb_cmd->add_option("--out-e", eb_out_e, "output E CSV");
  eb_cmd->add_option("--out-b", eb_out_b, "output B CSV");
  eb_cmd->add_option("--out-plus", eb_out_plus, "output spin +2 CSV");
  eb_cmd->add_option("--out-minus", eb_out_minus, "output spin -2 CSV");

  // lensing
  std::string lens_in, lens_prefix;
  auto* lensing_cmd = app.add_subcommand(
      "lensing", "distortion fields from a lensing potential");
  lensing_cmd->add_option("--in", lens_in, "phi coefficient CSV")->required();
  lensing_cmd->add_option("--out-prefix", lens_prefix, "output prefix")
      ->required();

  // mult
  std::string mg = "O3", mr, mt, mm, mf, mty, mfield = "real";
  auto* mult_cmd =
      app.add_subcommand("mult", "representation calculus queries");
  mult_cmd->add_option("--group", mg, "SO3 or O3");
  mult_cmd->add_option("--restrict", mr, "restrict an irrep, e.g. V(2,+)");
  mult_cmd->add_option("--tensor", mt, "O2 tensor product, e.g. E1xE3");
  mult_cmd->add_option("--multiplicity", mm,
                       "induced multiplicity of an irrep");
  mult_cmd->add_option("--fiber", mf, "fiber decomposition, e.g. E2 or E0+,E1");
  mult_cmd->add_option("--type", mty, "division algebra type of an irrep");
  mult_cmd->add_option("--field", mfield, "real or complex");

  // radial-grid
  double rg_R = 1.0;
  int rg_n = 16;
  std::string rg_out;
  auto* rgrid_cmd =
      app.add_subcommand("radial-grid", "write a radial quadrature grid");
  rgrid_cmd->add_option("--R", rg_R, "outer radius")->required();
  rgrid_cmd->add_option("--n", rg_n, "number of nodes")->required();
  rgrid_cmd->add_option("--out", rg_out, "grid JSON")->required();

  // frame
  std::string fr_cov, fr_grid, fr_out;
  int fr_spin = 0;
  double fr_threshold = 1e-12;
  auto* frame_cmd = app.add_subcommand(
      "frame", "build a Parseval frame from a radial covariance");
  frame_cmd->add_option("--cov", fr_cov, "covariance CSV")->required();
  frame_cmd->add_option("--grid", fr_grid, "radial grid JSON")->required();
  frame_cmd->add_option("--spin", fr_spin, "spin of the process");
  frame_cmd->add_option("--threshold", fr_threshold,
                        "relative eigenvalue cutoff");
  frame_cmd->add_option("--out", fr_out, "frame CSV")->required();

  // ball-synth
  std::string bs_frame, bs_grid, bs_prefix;
  int bs_lmax = 8, bs_spin = 0, bs_threads = 1;
  std::uint64_t bs_seed = 0;
  auto* ball_cmd =
      app.add_subcommand("ball-synth", "sample shell maps from a frame");
  ball_cmd->add_option("--frame", bs_frame, "frame CSV")->required();
  ball_cmd->add_option("--grid", bs_grid, "radial grid JSON")->required();
  ball_cmd->add_option("--lmax", bs_lmax, "angular band limit")->required();
  ball_cmd->add_option("--spin", bs_spin, "spin of the process");
  ball_cmd->add_option("--seed", bs_seed, "RNG seed (required)")->required();
  ball_cmd->add_option("--threads", bs_threads, "worker threads");
  ball_cmd->add_option("--out-prefix", bs_prefix, "shell map prefix")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth->parsed()) return run_synth(sopt);

    if (analyze_cmd->parsed()) {
      const sphere_map map = io::read_map(an_in);
      const int lmax = an_lmax >= 0 ? an_lmax : map.grid.lmax_exact;
      io::write_coefficients(isofield::analyze(map, lmax, an_threads), an_out);
      return 0;
    }

    if (spectrum_cmd->parsed()) {
      std::vector<harmonic_coefficients> coeffs{io::read_coefficients(sp_in)};
      std::vector<component_spec> comps{
          io::component_from_name(sp_name)};
      comps[0].spin = coeffs[0].spin();
      if (!sp_in2.empty()) {
        coeffs.push_back(io::read_coefficients(sp_in2));
        comps.push_back(io::component_from_name(sp_name2));
        comps[1].spin = coeffs[1].spin();
      }
      io::write_spectrum(estimate_power_spectrum(coeffs, comps), sp_out);
      return 0;
    }

    if (eb_cmd->parsed()) {
      if (eb_dir == "eb2qu") {
        if (eb_e.empty() || eb_b.empty() || eb_out_plus.empty() ||
            eb_out_minus.empty())
          throw std::invalid_argument(
              "eb2qu needs --e, --b, --out-plus, --out-minus");
        auto [aplus, aminus] =
            eb_to_qu(io::read_coefficients(eb_e), io::read_coefficients(eb_b));
        io::write_coefficients(aplus, eb_out_plus);
        io::write_coefficients(aminus, eb_out_minus);
      } else if (eb_dir == "qu2eb") {
        if (eb_plus.empty() || eb_minus.empty() || eb_out_e.empty() ||
            eb_out_b.empty())
          throw std::invalid_argument(
              "qu2eb needs --plus, --minus, --out-e, --out-b");
        auto [e, b] = qu_to_eb(io::read_coefficients(eb_plus),
                               io::read_coefficients(eb_minus));
        io::write_coefficients(e, eb_out_e);
        io::write_coefficients(b, eb_out_b);
      } else {
        throw std::invalid_argument("--direction must be eb2qu or qu2eb");
      }
      return 0;
    }

    if (lensing_cmd->parsed()) {
      const harmonic_coefficients phi = io::read_coefficients(lens_in);
      const distortion_fields_t fields = distortion_fields(phi);
      io::write_coefficients(fields.kappa, lens_prefix + "_kappa.csv");
      io::write_coefficients(fields.flexion1, lens_prefix + "_flexion1.csv");
      io::write_coefficients(fields.shear, lens_prefix + "_shear.csv");
      io::write_coefficients(fields.flexion3, lens_prefix + "_flexion3.csv");
      return 0;
    }

    if (mult_cmd->parsed()) return run_mult(mg, mr, mt, mm, mf, mty, mfield);

    if (rgrid_cmd->parsed()) {
      io::write_radial_grid(make_radial_grid(rg_R, rg_n), rg_out);
      return 0;
    }

    if (frame_cmd->parsed()) {
      const radial_grid grid = io::read_radial_grid(fr_grid);
      const radial_covariance cov =
          io::read_radial_covariance(fr_cov, grid, fr_spin);
      io::write_frame(build_frame(cov, fr_threshold), fr_out);
      return 0;
    }

    if (ball_cmd->parsed()) {
      const radial_grid rgrid = io::read_radial_grid(bs_grid);
      const radial_frame frame = io::read_frame(bs_frame, rgrid, bs_spin);
      const sphere_grid grid = make_grid(bs_lmax);
      const auto shells =
          sample_ball_field(frame, grid, bs_lmax, bs_seed, bs_threads);
      for (std::size_t i = 0; i < shells.size(); ++i)
        io::write_map(shells[i], shell_path(bs_prefix, int(i)));
      return 0;
    }

    std::cout << app.help();
    return 0;
  } catch (const isofield::format_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const isofield::numerical_contract_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
