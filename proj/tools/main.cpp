// densecomb command-line tool: cut-and-project schemes, model sets, dense
// Dirac comb sums, diffraction spectra, Poisson summation checks, and
// Fibonacci random tiling experiments.  Standard output (or --output) is
// machine-parseable; progress notes go to standard error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "densecomb/accum.hpp"
#include "densecomb/comb.hpp"
#include "densecomb/diffraction.hpp"
#include "densecomb/errors.hpp"
#include "densecomb/export.hpp"
#include "densecomb/model_set.hpp"
#include "densecomb/random_tiling.hpp"

using nlohmann::json;

namespace dc = densecomb;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitResourceCap = 3;
constexpr int kExitToleranceFail = 4;

Eigen::VectorXd vec_from_json(const json& j, int expected_dim, const char* what) {
  std::vector<double> v;
  if (j.is_number()) {
    v.push_back(j.get<double>());
  } else {
    v = j.get<std::vector<double>>();
  }
  if (expected_dim > 0 && static_cast<int>(v.size()) != expected_dim)
    throw dc::ValidationError(std::string(what) + ": dimension mismatch");
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

dc::Coords coords_from_json(const json& j) {
  const auto v = j.get<std::vector<std::int64_t>>();
  dc::Coords c(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) c[static_cast<Eigen::Index>(i)] = v[i];
  return c;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
  return out;
}

json default_center(const dc::CutProjectScheme& scheme) {
  return json::array_t(static_cast<std::size_t>(scheme.dim_direct()), 0.0);
}

// ---- command handlers; each consumes a normalized config ------------------

void run_scheme_info(const json& cfg, std::ostream& out) {
  const auto scheme = dc::parse_scheme_spec(cfg.at("scheme").get<std::string>());
  const auto dual = scheme.dual();
  const Eigen::MatrixXd gram = dual.basis().transpose() * scheme.basis();
  const double gram_defect =
      (gram - Eigen::MatrixXd::Identity(scheme.dim_total(), scheme.dim_total()))
          .cwiseAbs()
          .maxCoeff();

  json results = dc::scheme_to_json(scheme);
  results["covolume"] = scheme.covolume();
  results["dual_covolume"] = dual.covolume();
  results["gram_defect"] = gram_defect;

  if (cfg.at("format") == "json") {
    dc::write_json_document(out, cfg, results);
  } else {
    dc::write_csv_preamble(out, cfg);
    out << "key,value\n";
    out << "name," << scheme.name() << "\n";
    out << "dim_direct," << scheme.dim_direct() << "\n";
    out << "dim_internal," << scheme.dim_internal() << "\n";
    out << "certified," << (scheme.certified() ? 1 : 0) << "\n";
    out << "covolume," << dc::fmt_double(scheme.covolume()) << "\n";
    out << "dual_covolume," << dc::fmt_double(dual.covolume()) << "\n";
    out << "gram_defect," << dc::fmt_double(gram_defect) << "\n";
  }
}

void run_modelset(const json& cfg, std::ostream& out) {
  const auto scheme = dc::parse_scheme_spec(cfg.at("scheme").get<std::string>());
  const auto window = dc::parse_window_spec(cfg.at("window").get<std::string>());
  const double r = cfg.at("r").get<double>();
  const Eigen::VectorXd a = vec_from_json(cfg.at("a"), scheme.dim_direct(), "a");
  const auto pts = dc::model_set_points(scheme, window, r, a);
  std::cerr << "modelset: " << pts.size() << " points\n";

  if (cfg.at("format") == "json") {
    json results;
    results["count"] = pts.size();
    json rows = json::array();
    for (Eigen::Index i = 0; i < pts.coords.rows(); ++i) {
      json row;
      json coord = json::array();
      for (Eigen::Index c = 0; c < pts.coords.cols(); ++c) coord.push_back(pts.coords(i, c));
      row["coords"] = coord;
      row["direct"] = pts.direct(i, 0);
      row["star"] = pts.star(i, 0);
      rows.push_back(row);
    }
    results["points"] = rows;
    dc::write_json_document(out, cfg, results);
  } else {
    dc::write_point_list_csv(out, cfg, pts);
  }
}

void run_density(const json& cfg, std::ostream& out) {
  const auto scheme = dc::parse_scheme_spec(cfg.at("scheme").get<std::string>());
  auto window = dc::parse_window_spec(cfg.at("window").get<std::string>());
  if (cfg.contains("u")) {
    window = window.translated(vec_from_json(cfg.at("u"), scheme.dim_internal(), "u"));
  }
  const double r = cfg.at("r").get<double>();
  const Eigen::VectorXd a = vec_from_json(cfg.at("a"), scheme.dim_direct(), "a");

  const double empirical = dc::density_empirical(scheme, window, r, a);
  const double exact = dc::density_exact(scheme, window);
  json results;
  results["empirical"] = empirical;
  results["exact"] = exact;
  results["abs_error"] = std::abs(empirical - exact);

  if (cfg.at("format") == "json") {
    dc::write_json_document(out, cfg, results);
  } else {
    dc::write_csv_preamble(out, cfg);
    out << "empirical,exact,abs_error\n";
    out << dc::fmt_double(empirical) << "," << dc::fmt_double(exact) << ","
        << dc::fmt_double(std::abs(empirical - exact)) << "\n";
  }
}

void run_weyl(const json& cfg, std::ostream& out) {
  const auto scheme = dc::parse_scheme_spec(cfg.at("scheme").get<std::string>());
  const auto weight = dc::parse_weight_spec(cfg.at("weight").get<std::string>());
  const double r = cfg.at("r").get<double>();
  const Eigen::VectorXd a = vec_from_json(cfg.at("a"), scheme.dim_direct(), "a");

  json results;
  if (cfg.contains("window")) {
    const auto window = dc::parse_window_spec(cfg.at("window").get<std::string>());
    const auto value = dc::weyl_average(scheme, window, weight, r, a);
    results["value_re"] = value.real();
    results["value_im"] = value.imag();
    results["mode"] = "regular";
  } else {
    const dc::DenseComb comb(scheme, weight);
    const auto sum = dc::weyl_dense(comb, r, a);
    results["value_re"] = sum.value.real();
    results["value_im"] = sum.value.imag();
    results["truncation_bound"] = sum.truncation_bound;
    results["internal_radius"] = sum.internal_radius;
    results["points"] = sum.points;
    results["mode"] = "dense";
  }

  if (cfg.at("format") == "json") {
    dc::write_json_document(out, cfg, results);
  } else {
    dc::write_csv_preamble(out, cfg);
    out << "value_re,value_im\n";
    out << dc::fmt_double(results["value_re"].get<double>()) << ","
        << dc::fmt_double(results["value_im"].get<double>()) << "\n";
  }
}

void run_fourier_bohr(const json& cfg, std::ostream& out) {
  const auto scheme = dc::parse_scheme_spec(cfg.at("scheme").get<std::string>());
  const auto weight = dc::parse_weight_spec(cfg.at("weight").get<std::string>());
  const dc::DenseComb comb(scheme, weight);
  const double r = cfg.at("r").get<double>();
  const Eigen::VectorXd a = vec_from_json(cfg.at("a"), scheme.dim_direct(), "a");

  Eigen::VectorXd k(scheme.dim_direct());
  std::optional<dc::Coords> dual_coords;
  if (cfg.contains("k_dual")) {
    dual_coords = coords_from_json(cfg.at("k_dual"));
    k = comb.dual_scheme().direct(*dual_coords);
  } else {
    k = vec_from_json(cfg.at("k"), scheme.dim_direct(), "k");
  }

  const auto finite = dc::fourier_bohr_finite(comb, k, r, a);
  json results;
  results["c_r_re"] = finite.value.real();
  results["c_r_im"] = finite.value.imag();
  results["c_r_abs"] = std::abs(finite.value);
  results["truncation_bound"] = finite.truncation_bound;
  results["points"] = finite.points;
  if (dual_coords) {
    const auto limit = dc::fourier_bohr(comb, dual_coords);
    results["limit_re"] = limit.real();
    results["limit_im"] = limit.imag();
    results["k_star"] = comb.dual_scheme().star(*dual_coords)[0];
  }
  results["k"] = k[0];

  if (cfg.at("format") == "json") {
    dc::write_json_document(out, cfg, results);
  } else {
    dc::write_csv_preamble(out, cfg);
    out << "k,c_r_re,c_r_im,c_r_abs\n";
    out << dc::fmt_double(k[0]) << "," << dc::fmt_double(finite.value.real()) << ","
        << dc::fmt_double(finite.value.imag()) << "," << dc::fmt_double(std::abs(finite.value))
        << "\n";
  }
}

void run_autocorr(const json& cfg, std::ostream& out) {
  const auto scheme = dc::parse_scheme_spec(cfg.at("scheme").get<std::string>());
  const auto weight = dc::parse_weight_spec(cfg.at("weight").get<std::string>());
  const dc::DenseComb comb(scheme, weight);
  const double n = cfg.at("n").get<double>();

  json rows = json::array();
  for (const auto& zj : cfg.at("z")) {
    const dc::Coords z = coords_from_json(zj);
    const auto finite = dc::autocorr_finite(comb, z, n);
    const auto closed = dc::autocorr(comb, z);
    json row;
    row["z"] = zj;
    row["z_star"] = scheme.star(z)[0];
    row["eta_n_re"] = finite.value.real();
    row["eta_n_im"] = finite.value.imag();
    row["eta_re"] = closed.value.real();
    row["eta_im"] = closed.value.imag();
    row["truncation_bound"] = finite.truncation_bound;
    row["underflow_flushed"] = closed.underflow_flushed;
    rows.push_back(row);
  }

  if (cfg.at("format") == "json") {
    json results;
    results["entries"] = rows;
    dc::write_json_document(out, cfg, results);
  } else {
    dc::write_csv_preamble(out, cfg);
    out << "z_star,eta_n_re,eta_n_im,eta_re,eta_im\n";
    for (const auto& row : rows) {
      out << dc::fmt_double(row["z_star"].get<double>()) << ","
          << dc::fmt_double(row["eta_n_re"].get<double>()) << ","
          << dc::fmt_double(row["eta_n_im"].get<double>()) << ","
          << dc::fmt_double(row["eta_re"].get<double>()) << ","
          << dc::fmt_double(row["eta_im"].get<double>()) << "\n";
    }
  }
}

void run_diffract(const json& cfg, std::ostream& out) {
  const auto scheme = dc::parse_scheme_spec(cfg.at("scheme").get<std::string>());
  const auto weight = dc::parse_weight_spec(cfg.at("weight").get<std::string>());
  const double floor = cfg.at("floor").get<double>();
  const double kstar_radius = cfg.at("kstar_radius").get<double>();
  const double k_radius = cfg.at("k_radius").get<double>();

  dc::DiffractionSpectrum spec;
  if (cfg.contains("window")) {
    const auto window = dc::parse_window_spec(cfg.at("window").get<std::string>());
    spec = dc::spectrum_regular(scheme, window, weight, floor, kstar_radius, k_radius);
  } else {
    const dc::DenseComb comb(scheme, weight);
    spec = dc::spectrum(comb, floor, kstar_radius, k_radius);
  }
  std::cerr << "diffract: " << spec.peaks.size() << " peaks above the floor\n";

  if (cfg.at("format") == "json") {
    dc::write_json_document(out, cfg, dc::spectrum_to_json(spec));
  } else {
    dc::write_spectrum_csv(out, cfg, spec);
  }
}

int run_poisson(const json& cfg, std::ostream& out) {
  const auto scheme = dc::parse_scheme_spec(cfg.at("scheme").get<std::string>());
  const auto weight = dc::parse_weight_spec(cfg.at("weight").get<std::string>());
  const double sigma = cfg.at("sigma").get<double>();
  const double tol = cfg.at("tol").get<double>();
  const double scale = cfg.value("radius_scale", 1.0);

  dc::PoissonReport report;
  if (cfg.contains("window")) {
    const auto window = dc::parse_window_spec(cfg.at("window").get<std::string>());
    report = dc::poisson_check_regular(scheme, window, weight, sigma, tol, scale);
  } else {
    const dc::DenseComb comb(scheme, weight);
    report = dc::poisson_check(comb, sigma, tol, scale);
  }

  if (cfg.at("format") == "json") {
    dc::write_json_document(out, cfg, dc::poisson_to_json(report));
  } else {
    dc::write_csv_preamble(out, cfg);
    out << "lhs_re,lhs_im,rhs_re,rhs_im,defect,pass\n";
    out << dc::fmt_double(report.lhs.real()) << "," << dc::fmt_double(report.lhs.imag()) << ","
        << dc::fmt_double(report.rhs.real()) << "," << dc::fmt_double(report.rhs.imag()) << ","
        << dc::fmt_double(report.defect) << "," << (report.pass ? 1 : 0) << "\n";
  }
  return report.pass ? kExitOk : kExitToleranceFail;
}

void run_randomtile(const json& cfg, std::ostream& out) {
  const std::size_t samples = cfg.at("samples").get<std::size_t>();
  const std::size_t tiles = cfg.at("tiles").get<std::size_t>();
  const double p_u = cfg.at("p_u").get<double>();
  const std::size_t bins = cfg.at("bins").get<std::size_t>();
  const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();
  const auto sampler = cfg.value("sampler", std::string("bernoulli")) == "fixed-composition"
                           ? dc::TilingSampler::fixed_composition
                           : dc::TilingSampler::bernoulli;

  const auto h = dc::averaged_histogram(samples, tiles, p_u, bins, seed, sampler);
  const double l1 = dc::profile_distance(h, tiles);
  std::cerr << "randomtile: " << samples << " samples of " << tiles
            << " tiles, L1 distance to profile " << l1 << "\n";

  json summary = dc::histogram_summary_json(h, l1);
  if (cfg.contains("width_fit_n")) {
    std::vector<std::size_t> n_list;
    for (const auto& n : cfg.at("width_fit_n")) n_list.push_back(n.get<std::size_t>());
    const std::size_t fit_samples = std::min<std::size_t>(samples, 2000);
    summary["width_fit_exponent"] =
        dc::width_scaling_exponent(n_list, fit_samples, p_u, seed, sampler);
    summary["width_fit_samples"] = fit_samples;
  }

  if (cfg.at("format") == "json") {
    json results;
    results["summary"] = summary;
    json data = json::array();
    for (std::size_t i = 0; i < h.bins(); ++i) {
      json row;
      row["bin_center"] = h.bin_center(i);
      row["empirical_density"] = h.density[i];
      row["profile_value"] = dc::asymptotic_profile(h.bin_center(i) - h.empirical_mean,
                                                    static_cast<double>(tiles));
      data.push_back(row);
    }
    results["data"] = data;
    dc::write_json_document(out, cfg, results);
  } else {
    dc::write_histogram_csv(out, cfg, h, summary);
  }
}

int dispatch(const json& cfg, std::ostream& out) {
  const std::string command = cfg.at("command").get<std::string>();
  if (command == "scheme-info") {
    run_scheme_info(cfg, out);
  } else if (command == "modelset") {
    run_modelset(cfg, out);
  } else if (command == "density") {
    run_density(cfg, out);
  } else if (command == "weyl") {
    run_weyl(cfg, out);
  } else if (command == "fourier-bohr") {
    run_fourier_bohr(cfg, out);
  } else if (command == "autocorr") {
    run_autocorr(cfg, out);
  } else if (command == "diffract") {
    run_diffract(cfg, out);
  } else if (command == "poisson-check") {
    return run_poisson(cfg, out);
  } else if (command == "randomtile") {
    run_randomtile(cfg, out);
  } else {
    throw dc::ValidationError("unknown command '" + command + "'");
  }
  return kExitOk;
}

int dispatch_to_output(const json& cfg, const std::string& output) {
  if (output == "-" || output.empty()) return dispatch(cfg, std::cout);
  std::ofstream file(output, std::ios::binary);
  if (!file) throw dc::ValidationError("cannot open output file " + output);
  return dispatch(cfg, file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"densecomb: diffraction of weighted model sets and dense Dirac combs"};
  app.require_subcommand(0, 1);
  // global options may follow the subcommand name
  app.ignore_case();

  std::string output = "-";
  std::string format = "csv";
  std::string config_path;
  unsigned threads = 0;
  app.add_option("-o,--output", output, "output path ('-' for stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--config", config_path, "run from an emitted config (replay)");
  app.add_option("--threads", threads,
                 "worker cap (results are independent of this setting)");

  std::string scheme_spec = "fibonacci";
  std::string weight_spec = "gaussian";
  std::string window_spec;
  std::vector<double> a_center;
  std::vector<double> u_shift;
  double r = 1000.0;
  double n_radius = 1000.0;
  double floor = 1e-3;
  double kstar_radius = 1.0;
  double k_radius = 5.0;
  double sigma = 1.0;
  double tol = 1e-3;
  double radius_scale = 1.0;
  std::string k_dual_text;
  double k_real = 0.0;
  bool k_real_set = false;
  std::vector<std::string> z_list;
  std::size_t rt_samples = 1000;
  std::size_t rt_tiles = 1000;
  double rt_pu = 1.0 / ((1.0 + std::sqrt(5.0)) / 2.0);
  std::size_t rt_bins = 200;
  std::uint64_t rt_seed = 0;
  bool rt_fixed = false;
  bool rt_width_fit = false;
  std::vector<std::size_t> rt_nlist = {100, 1000, 10000};

  auto* c_info = app.add_subcommand("scheme-info", "describe a scheme and its dual");
  c_info->fallthrough();
  c_info->add_option("--scheme", scheme_spec);

  auto* c_modelset = app.add_subcommand("modelset", "emit model set points as CSV");
  c_modelset->fallthrough();
  c_modelset->add_option("--scheme", scheme_spec);
  c_modelset->add_option("--window", window_spec)->required();
  c_modelset->add_option("--r", r)->required();
  c_modelset->add_option("--a", a_center);

  auto* c_density = app.add_subcommand("density", "empirical vs exact model set density");
  c_density->fallthrough();
  c_density->add_option("--scheme", scheme_spec);
  c_density->add_option("--window", window_spec)->required();
  c_density->add_option("--r", r)->required();
  c_density->add_option("--a", a_center);
  c_density->add_option("--u", u_shift, "window translation");

  auto* c_weyl = app.add_subcommand("weyl", "Weyl average (dense comb, or regular with --window)");
  c_weyl->fallthrough();
  c_weyl->add_option("--scheme", scheme_spec);
  c_weyl->add_option("--weight", weight_spec);
  c_weyl->add_option("--window", window_spec);
  c_weyl->add_option("--r", r)->required();
  c_weyl->add_option("--a", a_center);

  auto* c_fb = app.add_subcommand("fourier-bohr", "finite-volume Fourier-Bohr coefficient");
  c_fb->fallthrough();
  c_fb->add_option("--scheme", scheme_spec);
  c_fb->add_option("--weight", weight_spec);
  c_fb->add_option("--r", r)->required();
  c_fb->add_option("--a", a_center);
  c_fb->add_option("--dual-coords", k_dual_text, "integer coordinates of k in the dual basis");
  c_fb->add_option("--k", k_real, "raw wave number (off-module probes)")
      ->each([&](const std::string&) { k_real_set = true; });

  auto* c_auto = app.add_subcommand("autocorr", "autocorrelation coefficients");
  c_auto->fallthrough();
  c_auto->add_option("--scheme", scheme_spec);
  c_auto->add_option("--weight", weight_spec);
  c_auto->add_option("--n", n_radius)->required();
  c_auto->add_option("--z", z_list, "difference vector coords, e.g. --z 1,0")->required();

  auto* c_diff = app.add_subcommand("diffract", "pure point diffraction spectrum");
  c_diff->fallthrough();
  c_diff->add_option("--scheme", scheme_spec);
  c_diff->add_option("--weight", weight_spec);
  c_diff->add_option("--window", window_spec, "regular model set variant");
  c_diff->add_option("--floor", floor);
  c_diff->add_option("--kstar-radius", kstar_radius);
  c_diff->add_option("--k-radius", k_radius);

  auto* c_poisson = app.add_subcommand("poisson-check", "generalized Poisson summation check");
  c_poisson->fallthrough();
  c_poisson->add_option("--scheme", scheme_spec);
  c_poisson->add_option("--weight", weight_spec);
  c_poisson->add_option("--window", window_spec, "regular model set variant");
  c_poisson->add_option("--sigma", sigma);
  c_poisson->add_option("--tol", tol);
  c_poisson->add_option("--radius-scale", radius_scale);

  auto* c_rt = app.add_subcommand("randomtile", "Fibonacci random tiling histogram");
  c_rt->fallthrough();
  c_rt->add_option("--samples", rt_samples);
  c_rt->add_option("--tiles", rt_tiles);
  c_rt->add_option("--p-u", rt_pu, "probability of the length-1 tile");
  c_rt->add_option("--bins", rt_bins);
  c_rt->add_option("--seed", rt_seed)->required();
  c_rt->add_flag("--fixed-composition", rt_fixed);
  c_rt->add_flag("--width-fit", rt_width_fit);
  c_rt->add_option("--width-fit-n", rt_nlist);

  try {
    app.parse(argc, argv);

    if (threads > 0) dc::set_max_threads(threads);

    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw dc::ValidationError("cannot open config file " + config_path);
      json doc;
      in >> doc;
      const json cfg = doc.contains("config") ? doc.at("config") : doc;
      return dispatch_to_output(cfg, output);
    }

    if (app.get_subcommands().empty()) {
      std::cerr << app.help() << "\n";
      return kExitValidation;
    }

    json cfg;
    cfg["format"] = format;
    auto scheme_dim_direct = [&]() {
      return dc::parse_scheme_spec(scheme_spec).dim_direct();
    };
    auto center_json = [&]() {
      if (a_center.empty())
        return json(json::array_t(static_cast<std::size_t>(scheme_dim_direct()), 0.0));
      return json(a_center);
    };

    if (c_info->parsed()) {
      cfg["command"] = "scheme-info";
      cfg["scheme"] = scheme_spec;
    } else if (c_modelset->parsed()) {
      cfg["command"] = "modelset";
      cfg["scheme"] = scheme_spec;
      cfg["window"] = window_spec;
      cfg["r"] = r;
      cfg["a"] = center_json();
    } else if (c_density->parsed()) {
      cfg["command"] = "density";
      cfg["scheme"] = scheme_spec;
      cfg["window"] = window_spec;
      cfg["r"] = r;
      cfg["a"] = center_json();
      if (!u_shift.empty()) cfg["u"] = u_shift;
    } else if (c_weyl->parsed()) {
      cfg["command"] = "weyl";
      cfg["scheme"] = scheme_spec;
      cfg["weight"] = weight_spec;
      if (!window_spec.empty()) cfg["window"] = window_spec;
      cfg["r"] = r;
      cfg["a"] = center_json();
    } else if (c_fb->parsed()) {
      cfg["command"] = "fourier-bohr";
      cfg["scheme"] = scheme_spec;
      cfg["weight"] = weight_spec;
      cfg["r"] = r;
      cfg["a"] = center_json();
      if (!k_dual_text.empty()) {
        cfg["k_dual"] = parse_int_list(k_dual_text);
      } else if (k_real_set) {
        cfg["k"] = k_real;
      } else {
        throw dc::ValidationError("fourier-bohr: need --dual-coords or --k");
      }
    } else if (c_auto->parsed()) {
      cfg["command"] = "autocorr";
      cfg["scheme"] = scheme_spec;
      cfg["weight"] = weight_spec;
      cfg["n"] = n_radius;
      json zs = json::array();
      for (const auto& z : z_list) zs.push_back(parse_int_list(z));
      cfg["z"] = zs;
    } else if (c_diff->parsed()) {
      cfg["command"] = "diffract";
      cfg["scheme"] = scheme_spec;
      cfg["weight"] = weight_spec;
      if (!window_spec.empty()) cfg["window"] = window_spec;
      cfg["floor"] = floor;
      cfg["kstar_radius"] = kstar_radius;
      cfg["k_radius"] = k_radius;
    } else if (c_poisson->parsed()) {
      cfg["command"] = "poisson-check";
      cfg["scheme"] = scheme_spec;
      cfg["weight"] = weight_spec;
      if (!window_spec.empty()) cfg["window"] = window_spec;
      cfg["sigma"] = sigma;
      cfg["tol"] = tol;
      cfg["radius_scale"] = radius_scale;
    } else if (c_rt->parsed()) {
      cfg["command"] = "randomtile";
      cfg["samples"] = rt_samples;
      cfg["tiles"] = rt_tiles;
      cfg["p_u"] = rt_pu;
      cfg["bins"] = rt_bins;
      cfg["seed"] = rt_seed;
      cfg["sampler"] = rt_fixed ? "fixed-composition" : "bernoulli";
      if (rt_width_fit) cfg["width_fit_n"] = rt_nlist;
    }

    return dispatch_to_output(cfg, output);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const dc::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const dc::ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const dc::ToleranceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
