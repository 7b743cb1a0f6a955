#include "infoconv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace infoconv::io {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

json to_json(const Spectrum& s) {
  json atoms = json::array();
  for (const Atom& a : s.atoms()) {
    // Integral multiplicities print as integers while they are exact.
    if (a.multiplicity < 0x1p53) {
      atoms.push_back({a.probability, static_cast<std::uint64_t>(a.multiplicity)});
    } else {
      atoms.push_back({a.probability, a.multiplicity});
    }
  }
  return {{"atoms", atoms}};
}

Spectrum spectrum_from_json(const json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j.at("atoms").is_array()) {
    throw InvalidArgument("spectrum JSON must be an object with an \"atoms\" array");
  }
  std::vector<Atom> atoms;
  for (const json& pair : j.at("atoms")) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw InvalidArgument("spectrum atom must be a [probability, multiplicity] pair");
    }
    atoms.push_back({pair[0].get<double>(), pair[1].get<double>()});
  }
  return Spectrum(std::move(atoms));
}

std::string to_text(const Spectrum& s) {
  std::ostringstream os;
  os.precision(17);
  for (const Atom& a : s.atoms()) os << a.probability << ' ' << a.multiplicity << '\n';
  return os.str();
}

Spectrum spectrum_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Atom> atoms;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::istringstream fields(line);
    Atom a{};
    if (!(fields >> a.probability >> a.multiplicity)) {
      throw InvalidArgument("malformed spectrum line: '" + line + "'");
    }
    atoms.push_back(a);
  }
  return Spectrum(std::move(atoms));
}

Spectrum parse_spectrum(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    try {
      return spectrum_from_json(json::parse(text));
    } catch (const json::exception& e) {
      throw InvalidArgument(std::string("malformed spectrum JSON: ") + e.what());
    }
  }
  return spectrum_from_text(text);
}

json to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

AmplitudeMatrix amplitudes_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw InvalidArgument("amplitude matrix must be a nonempty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXcd c(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InvalidArgument("amplitude matrix rows must have equal length");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const json& entry = row[static_cast<std::size_t>(k)];
      if (entry.is_number()) {
        c(r, k) = {entry.get<double>(), 0.0};
      } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() &&
                 entry[1].is_number()) {
        c(r, k) = {entry[0].get<double>(), entry[1].get<double>()};
      } else {
        throw InvalidArgument("amplitude entries must be [re, im] pairs");
      }
    }
  }
  return AmplitudeMatrix(std::move(c));
}

json to_json(const DeterministicMap& map) { return map.targets(); }

DeterministicMap map_from_json(const json& j, std::uint32_t codomain_size) {
  if (!j.is_array()) throw InvalidArgument("deterministic map must be a JSON integer array");
  std::vector<std::uint32_t> targets;
  std::uint32_t largest = 0;
  for (const json& t : j) {
    if (!t.is_number_integer() || t.get<std::int64_t>() < 0 ||
        t.get<std::int64_t>() > std::numeric_limits<std::uint32_t>::max()) {
      throw InvalidArgument("map targets must be non-negative integers");
    }
    targets.push_back(t.get<std::uint32_t>());
    largest = std::max(largest, targets.back());
  }
  return DeterministicMap(std::move(targets), codomain_size ? codomain_size : largest + 1);
}

json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const BistochasticMatrix& m) { return to_json(m.entries()); }

std::string to_csv(const BistochasticMatrix& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    for (Eigen::Index j = 0; j < m.size(); ++j) {
      if (j) out += ',';
      out += format_number(m.entries()(i, j));
    }
    out += '\n';
  }
  return out;
}

double unit_scale(std::string_view units) {
  if (units == "nats") return 1.0;
  if (units == "bits") return 1.0 / std::numbers::ln2;
  throw InvalidArgument("units must be 'nats' or 'bits'");
}

json to_json(const RateCurve& curve, double scale) {
  json points = json::array();
  for (const RatePoint& p : curve.points) {
    points.push_back(
        {{"n", p.n}, {"underline_H", p.underline * scale}, {"overline_H", p.overline * scale}});
  }
  return {{"epsilon", curve.epsilon}, {"points", points}};
}

std::string rates_csv(const std::vector<RateCurve>& curves, double scale) {
  struct Row {
    std::uint32_t n;
    double eps;
    double under;
    double over;
  };
  std::vector<Row> rows;
  for (const RateCurve& c : curves) {
    for (const RatePoint& p : c.points) rows.push_back({p.n, c.epsilon, p.underline, p.overline});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.n != b.n ? a.n < b.n : a.eps < b.eps;
  });
  std::string out = "n,epsilon,underline_H,overline_H\n";
  for (const Row& r : rows) {
    out += std::to_string(r.n) + ',' + format_number(r.eps) + ',' +
           format_number(r.under * scale) + ',' + format_number(r.over * scale) + '\n';
  }
  return out;
}

json to_json(const TailCurve& curve) {
  json samples = json::array();
  for (const TailSample& s : curve.samples) samples.push_back({{"a", s.a}, {"mass", s.mass}});
  return {{"n", curve.n}, {"samples", samples}};
}

std::string to_csv(const TailCurve& curve) {
  std::string out = "a,mass\n";
  for (const TailSample& s : curve.samples) {
    out += format_number(s.a) + ',' + format_number(s.mass) + '\n';
  }
  return out;
}

namespace {

json codomain_json(const std::vector<CodomainGroup>& codomain) {
  json out = json::array();
  for (const CodomainGroup& g : codomain) {
    out.push_back({{"target", g.target}, {"assigned", g.assigned}, {"count", g.count}});
  }
  return out;
}

}  // namespace

json to_json(const MapSynthesisReport& report) {
  return {{"map", report.map ? to_json(*report.map) : json(nullptr)},
          {"achieved_distance", report.achieved_distance},
          {"target", to_json(report.target)},
          {"pushforward", to_json(report.pushforward)},
          {"codomain", codomain_json(report.codomain)}};
}

std::string convergence_csv(const std::vector<DistancePoint>& points) {
  std::string out = "n,distance\n";
  for (const DistancePoint& p : points) {
    out += std::to_string(p.n) + ',' + format_number(p.distance) + '\n';
  }
  return out;
}

json to_json(const ConversionReport& r) {
  return {{"n", r.n},
          {"source_spectrum", to_json(r.source)},
          {"target_spectrum", to_json(r.target)},
          {"intermediate_spectrum", to_json(r.intermediate)},
          {"nielsen_ok", r.nielsen_ok},
          {"fidelity", r.fidelity},
          {"trace_distance_lower", r.trace_distance_lower},
          {"trace_distance_upper", r.trace_distance_upper},
          {"variational_distance", r.variational_distance},
          {"certificate", r.certificate ? to_json(*r.certificate) : json(nullptr)}};
}

json to_json(const RateVerdict& v, double scale) {
  json series = json::array();
  for (const ErrorPoint& p : v.series) {
    series.push_back(
        {{"n", p.n}, {"error", p.error}, {"fidelity", p.fidelity}, {"nielsen_ok", p.nielsen_ok}});
  }
  return {{"task", to_string(v.task)}, {"rate", v.rate * scale}, {"epsilon_error_series", series}};
}

std::string experiment_csv(const std::vector<ErrorPoint>& series) {
  std::string out = "n,error,fidelity,nielsen_ok\n";
  for (const ErrorPoint& p : series) {
    out += std::to_string(p.n) + ',' + format_number(p.error) + ',' + format_number(p.fidelity) +
           ',' + (p.nielsen_ok ? "true" : "false") + '\n';
  }
  return out;
}

std::string experiment_csv(const std::vector<ConversionReport>& reports) {
  std::vector<ErrorPoint> series;
  for (const ConversionReport& r : reports) {
    series.push_back({r.n, r.trace_distance_upper, r.fidelity, r.nielsen_ok});
  }
  return experiment_csv(series);
}

json to_json(const SuiteReport& r) {
  return {{"suite", r.name},
          {"instances", r.instances},
          {"checks", r.checks},
          {"violations", r.violations},
          {"worst_slack", r.worst_slack},
          {"passed", r.ok()},
          {"violating_instances", r.violating},
          {"details", r.details}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

double parse_double(std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("expected a number, got '" + s + "'");
  }
  if (used != s.size()) throw InvalidArgument("expected a number, got '" + s + "'");
  return v;
}

SequenceModel parse_simple_model(std::string_view spec) {
  if (spec.starts_with("iid:")) {
    std::vector<double> probs;
    std::string_view rest = spec.substr(4);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      probs.push_back(parse_double(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return SequenceModel::iid(Spectrum::from_probabilities(probs));
  }
  if (spec.starts_with("maxent:")) {
    std::string_view rest = spec.substr(7);
    if (rest.starts_with("R=")) rest = rest.substr(2);
    return SequenceModel::maxent(parse_double(rest));
  }
  if (spec.starts_with("file:")) {
    const std::string text = read_file(std::string(spec.substr(5)));
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      json j;
      try {
        j = json::parse(text);
      } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed model file: ") + e.what());
      }
      if (j.contains("explicit")) {
        std::vector<Spectrum> spectra;
        for (const json& s : j.at("explicit")) spectra.push_back(spectrum_from_json(s));
        return SequenceModel::explicit_list(std::move(spectra));
      }
      return SequenceModel::iid(spectrum_from_json(j));
    }
    return SequenceModel::iid(spectrum_from_text(text));
  }
  throw InvalidArgument("unknown model '" + std::string(spec) +
                        "' (expected iid:, maxent:, mix: or file:)");
}

}  // namespace

SequenceModel parse_model(std::string_view spec) {
  if (!spec.starts_with("mix:")) return parse_simple_model(spec);
  // Split on '+', re-attaching pieces without a weight (exponents such as 1e+3).
  std::vector<std::string> terms;
  std::string_view rest = spec.substr(4);
  while (true) {
    const auto plus = rest.find('+');
    const std::string piece(rest.substr(0, plus));
    if (!terms.empty() && piece.find('*') == std::string::npos) {
      terms.back() += '+' + piece;
    } else {
      terms.push_back(piece);
    }
    if (plus == std::string_view::npos) break;
    rest = rest.substr(plus + 1);
  }
  std::vector<std::pair<double, SequenceModel>> components;
  for (const std::string& term : terms) {
    const auto star = term.find('*');
    if (star == std::string::npos) {
      throw InvalidArgument("mixture term '" + term + "' needs the form weight*model");
    }
    components.emplace_back(parse_double(std::string_view(term).substr(0, star)),
                            parse_simple_model(std::string_view(term).substr(star + 1)));
  }
  return SequenceModel::mixture(std::move(components));
}

}  // namespace infoconv::io
