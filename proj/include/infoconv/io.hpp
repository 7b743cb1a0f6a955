#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "infoconv/convert.hpp"
#include "infoconv/infospec.hpp"
#include "infoconv/majorize.hpp"
#include "infoconv/model.hpp"
#include "infoconv/randgen.hpp"
#include "infoconv/spectrum.hpp"
#include "infoconv/verify.hpp"

namespace infoconv::io {

using nlohmann::json;

/// Fixed-width-free decimal rendering shared by every CSV writer.
std::string format_number(double value);

// Spectrum: {"atoms": [[p, mult], ...]} or one "p mult" pair per line.
json to_json(const Spectrum& s);
Spectrum spectrum_from_json(const json& j);
std::string to_text(const Spectrum& s);
Spectrum spectrum_from_text(std::string_view text);
/// Accepts either of the two spectrum formats.
Spectrum parse_spectrum(std::string_view text);

/// Nested arrays of [re, im] pairs, row-major.
json to_json(const Eigen::MatrixXcd& m);
AmplitudeMatrix amplitudes_from_json(const json& j);

/// Integer array of targets.
json to_json(const DeterministicMap& map);
/// Codomain size defaults to max target + 1.
DeterministicMap map_from_json(const json& j, std::uint32_t codomain_size = 0);

json to_json(const Eigen::MatrixXd& m);
json to_json(const BistochasticMatrix& m);
std::string to_csv(const BistochasticMatrix& m);

/// Display scaling for rates: 1 for nats, 1 / ln 2 for bits.
double unit_scale(std::string_view units);

json to_json(const RateCurve& curve, double scale = 1.0);
/// Header n,epsilon,underline_H,overline_H; rows sorted by n then epsilon.
std::string rates_csv(const std::vector<RateCurve>& curves, double scale = 1.0);

json to_json(const TailCurve& curve);
/// Header a,mass.
std::string to_csv(const TailCurve& curve);

json to_json(const MapSynthesisReport& report);
/// Header n,distance.
std::string convergence_csv(const std::vector<DistancePoint>& points);

json to_json(const ConversionReport& report);
json to_json(const RateVerdict& verdict, double scale = 1.0);
/// Header n,error,fidelity,nielsen_ok.
std::string experiment_csv(const std::vector<ErrorPoint>& series);
std::string experiment_csv(const std::vector<ConversionReport>& reports);

json to_json(const SuiteReport& report);

/// Model mini-grammar:
///   iid:0.9,0.1 | maxent:R=0.2 | mix:0.5*iid:0.9,0.1+0.5*iid:0.5,0.5 | file:path
/// A file holds either a spectrum (IID base) or {"explicit": [spectrum, ...]}.
SequenceModel parse_model(std::string_view spec);

std::string read_file(const std::string& path);

}  // namespace infoconv::io
