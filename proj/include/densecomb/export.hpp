#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "densecomb/cps.hpp"
#include "densecomb/diffraction.hpp"
#include "densecomb/random_tiling.hpp"

namespace densecomb {

inline constexpr const char* kToolVersion = "densecomb 0.1.0";

/// 17 significant digits, '.' decimal separator, no locale: the CSV number
/// format (round-trips every double exactly).
std::string fmt_double(double x);

nlohmann::json scheme_to_json(const CutProjectScheme& scheme);
CutProjectScheme scheme_from_json(const nlohmann::json& j);
CutProjectScheme load_scheme_file(const std::string& path);

/// Resolves "fibonacci" or a path to a scheme file.
CutProjectScheme parse_scheme_spec(const std::string& spec);

/// CSV metadata preamble: '#'-prefixed lines with the tool version and the
/// one-line config, so any output can be replayed with --config.  Callers
/// append further '# key: ...' lines and the column row themselves.
void write_csv_preamble(std::ostream& out, const nlohmann::json& config);

void write_point_list_csv(std::ostream& out, const nlohmann::json& config,
                          const LatticePointList& points);

void write_spectrum_csv(std::ostream& out, const nlohmann::json& config,
                        const DiffractionSpectrum& spectrum);
nlohmann::json spectrum_to_json(const DiffractionSpectrum& spectrum);

void write_histogram_csv(std::ostream& out, const nlohmann::json& config, const Histogram& h,
                         const nlohmann::json& summary);
nlohmann::json histogram_summary_json(const Histogram& h, double l1_distance);

nlohmann::json poisson_to_json(const PoissonReport& report);

/// {"tool": ..., "config": ..., "results": ...} with sorted keys.
void write_json_document(std::ostream& out, const nlohmann::json& config,
                         const nlohmann::json& results);

}  // namespace densecomb
