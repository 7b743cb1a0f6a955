#include "infoconv/infospec.hpp"

#include <limits>

namespace infoconv {

namespace {

constexpr double kMassTolerance = 1e-12;

double atom_rate(const Atom& atom, std::uint32_t n) {
  return -std::log(atom.probability) / static_cast<double>(n);
}

}  // namespace

double cdf_selfinfo(const Spectrum& s, std::uint32_t n, double a, Boundary boundary) {
  if (n == 0) throw InvalidArgument("n must be >= 1");
  if (std::isnan(a)) throw InvalidArgument("threshold is NaN");
  double mass = 0.0;
  // Atoms are sorted by probability descending, so rates ascend.
  for (const Atom& atom : s.atoms()) {
    const double rate = atom_rate(atom, n);
    const bool inside = boundary == Boundary::nonstrict ? rate <= a : rate < a;
    if (!inside) break;
    mass += atom.probability * atom.multiplicity;
  }
  return std::min(mass, 1.0);
}

EntropyProxies entropy_proxies(const Spectrum& s, std::uint32_t n, double epsilon) {
  if (n == 0) throw InvalidArgument("n must be >= 1");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw InvalidArgument("epsilon must lie in [0, 1]");
  const auto& atoms = s.atoms();

  // underline: rate of the first atom at which the cumulative mass exceeds epsilon.
  // overline: rate of the first atom at which it reaches 1 - epsilon.
  EntropyProxies out{atom_rate(atoms.back(), n), atom_rate(atoms.back(), n)};
  bool under_found = false;
  bool over_found = false;
  double cumulative = 0.0;
  for (const Atom& atom : atoms) {
    cumulative += atom.probability * atom.multiplicity;
    if (!under_found && cumulative > epsilon + kMassTolerance) {
      out.underline = atom_rate(atom, n);
      under_found = true;
    }
    if (!over_found && cumulative >= 1.0 - epsilon - kMassTolerance) {
      out.overline = atom_rate(atom, n);
      over_found = true;
    }
    if (under_found && over_found) break;
  }
  return out;
}

RateCurve rate_curve(const SequenceModel& model, const RateQuery& query, const Budgets& budgets) {
  if (!(query.epsilon >= 0.0 && query.epsilon <= 1.0)) {
    throw InvalidArgument("epsilon must lie in [0, 1]");
  }
  for (std::size_t i = 0; i < query.n_grid.size(); ++i) {
    if (query.n_grid[i] == 0 || (i > 0 && query.n_grid[i] <= query.n_grid[i - 1])) {
      throw InvalidArgument("n grid must be positive and strictly increasing");
    }
  }
  RateCurve curve{query.epsilon, {}};
  for (std::uint32_t n : query.n_grid) {
    const EntropyProxies p = entropy_proxies(model.generate(n, budgets), n, query.epsilon);
    curve.points.push_back({n, p.underline, p.overline});
  }
  return curve;
}

TailCurve tail_curve(const Spectrum& s, std::uint32_t n, const std::vector<double>& thresholds,
                     Boundary boundary) {
  TailCurve curve{n, {}};
  curve.samples.reserve(thresholds.size());
  for (double a : thresholds) curve.samples.push_back({a, cdf_selfinfo(s, n, a, boundary)});
  return curve;
}

}  // namespace infoconv
