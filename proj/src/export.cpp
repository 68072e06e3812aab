#include "densecomb/export.hpp"

#include <cstdio>
#include <fstream>

#include "densecomb/errors.hpp"

namespace densecomb {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json scheme_to_json(const CutProjectScheme& scheme) {
  nlohmann::json j;
  j["name"] = scheme.name();
  j["dim_direct"] = scheme.dim_direct();
  j["dim_internal"] = scheme.dim_internal();
  j["certified"] = scheme.certified();
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < scheme.dim_total(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < scheme.dim_total(); ++c) row.push_back(scheme.basis()(r, c));
    rows.push_back(row);
  }
  j["basis"] = rows;
  return j;
}

CutProjectScheme scheme_from_json(const nlohmann::json& j) {
  const int d = j.at("dim_direct").get<int>();
  const int m = j.at("dim_internal").get<int>();
  const auto rows = j.at("basis");
  Eigen::MatrixXd basis(d + m, d + m);
  if (static_cast<int>(rows.size()) != d + m)
    throw ValidationError("scheme file: basis row count mismatch");
  for (int r = 0; r < d + m; ++r) {
    if (static_cast<int>(rows[r].size()) != d + m)
      throw ValidationError("scheme file: basis column count mismatch");
    for (int c = 0; c < d + m; ++c) basis(r, c) = rows[r][c].get<double>();
  }
  return CutProjectScheme::from_basis(d, m, basis, j.value("name", std::string("custom")),
                                      j.value("certified", false));
}

CutProjectScheme load_scheme_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("scheme file: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return scheme_from_json(j);
}

CutProjectScheme parse_scheme_spec(const std::string& spec) {
  if (spec == "fibonacci") return CutProjectScheme::fibonacci();
  return load_scheme_file(spec);
}

void write_csv_preamble(std::ostream& out, const nlohmann::json& config) {
  out << "# " << kToolVersion << "\n";
  out << "# config: " << config.dump() << "\n";
}

void write_point_list_csv(std::ostream& out, const nlohmann::json& config,
                          const LatticePointList& points) {
  const int dim = static_cast<int>(points.coords.cols());
  const int d = static_cast<int>(points.direct.cols());
  const int m = static_cast<int>(points.star.cols());
  std::string cols;
  for (int i = 0; i < dim; ++i) cols += "coord" + std::to_string(i) + ",";
  for (int i = 0; i < d; ++i) cols += "direct" + std::to_string(i) + ",";
  for (int i = 0; i < m; ++i) cols += "star" + std::to_string(i) + (i + 1 < m ? "," : "");
  write_csv_preamble(out, config);
  out << cols << "\n";
  for (Eigen::Index r = 0; r < points.coords.rows(); ++r) {
    for (int i = 0; i < dim; ++i) out << points.coords(r, i) << ",";
    for (int i = 0; i < d; ++i) out << fmt_double(points.direct(r, i)) << ",";
    for (int i = 0; i < m; ++i) out << fmt_double(points.star(r, i)) << (i + 1 < m ? "," : "");
    out << "\n";
  }
}

void write_spectrum_csv(std::ostream& out, const nlohmann::json& config,
                        const DiffractionSpectrum& spectrum) {
  std::string cols;
  const int dim = spectrum.peaks.empty() ? 0 : static_cast<int>(spectrum.peaks[0].dual_coords.size());
  for (int i = 0; i < dim; ++i) cols += "dual_coord" + std::to_string(i) + ",";
  cols += "k,k_star,intensity";
  write_csv_preamble(out, config);
  out << cols << "\n";
  for (const auto& p : spectrum.peaks) {
    for (int i = 0; i < dim; ++i) out << p.dual_coords[i] << ",";
    for (Eigen::Index i = 0; i < p.k.size(); ++i) out << fmt_double(p.k[i]) << ",";
    for (Eigen::Index i = 0; i < p.k_star.size(); ++i) out << fmt_double(p.k_star[i]) << ",";
    out << fmt_double(p.intensity) << "\n";
  }
}

nlohmann::json spectrum_to_json(const DiffractionSpectrum& spectrum) {
  nlohmann::json j;
  j["intensity_floor"] = spectrum.intensity_floor;
  j["kstar_radius"] = spectrum.kstar_radius;
  j["k_radius"] = spectrum.k_radius;
  j["completeness_bound"] = spectrum.completeness_bound;
  j["weight"] = spectrum.weight_name;
  j["scheme"] = spectrum.scheme_name;
  nlohmann::json peaks = nlohmann::json::array();
  for (const auto& p : spectrum.peaks) {
    nlohmann::json e;
    nlohmann::json coords = nlohmann::json::array();
    for (Eigen::Index i = 0; i < p.dual_coords.size(); ++i) coords.push_back(p.dual_coords[i]);
    e["dual_coords"] = coords;
    e["k"] = p.k[0];
    e["k_star"] = p.k_star[0];
    e["intensity"] = p.intensity;
    peaks.push_back(e);
  }
  j["peaks"] = peaks;
  return j;
}

void write_histogram_csv(std::ostream& out, const nlohmann::json& config, const Histogram& h,
                         const nlohmann::json& summary) {
  write_csv_preamble(out, config);
  out << "# summary: " << summary.dump() << "\n";
  out << "bin_center,empirical_density,profile_value" << "\n";
  for (std::size_t i = 0; i < h.bins(); ++i) {
    const double center = h.bin_center(i);
    out << fmt_double(center) << "," << fmt_double(h.density[i]) << ","
        << fmt_double(asymptotic_profile(center - h.empirical_mean,
                                         static_cast<double>(h.n_tiles)))
        << "\n";
  }
}

nlohmann::json histogram_summary_json(const Histogram& h, double l1_distance) {
  nlohmann::json j;
  j["n_samples"] = h.n_samples;
  j["n_tiles"] = h.n_tiles;
  j["bins"] = h.bins();
  j["p_u"] = h.p_u;
  j["seed"] = h.seed;
  j["sampler"] = h.sampler == TilingSampler::bernoulli ? "bernoulli" : "fixed-composition";
  j["drift_per_tile_predicted"] = h.drift_per_tile;
  j["empirical_mean"] = h.empirical_mean;
  j["empirical_std"] = h.empirical_std;
  j["frequency_u"] = h.frequency_u;
  j["l1_distance_to_profile"] = l1_distance;
  return j;
}

nlohmann::json poisson_to_json(const PoissonReport& report) {
  nlohmann::json j;
  j["lhs_re"] = report.lhs.real();
  j["lhs_im"] = report.lhs.imag();
  j["rhs_re"] = report.rhs.real();
  j["rhs_im"] = report.rhs.imag();
  j["defect"] = report.defect;
  j["tol"] = report.tol;
  j["pass"] = report.pass;
  j["truncation_bound"] = report.truncation_bound;
  j["direct_radius"] = report.direct_radius;
  j["internal_radius"] = report.internal_radius;
  j["dual_direct_radius"] = report.dual_direct_radius;
  j["dual_internal_radius"] = report.dual_internal_radius;
  j["lhs_points"] = report.lhs_points;
  j["rhs_points"] = report.rhs_points;
  return j;
}

void write_json_document(std::ostream& out, const nlohmann::json& config,
                         const nlohmann::json& results) {
  nlohmann::json doc;
  doc["tool"] = kToolVersion;
  doc["config"] = config;
  doc["results"] = results;
  out << doc.dump(2) << "\n";
}

}  // namespace densecomb
