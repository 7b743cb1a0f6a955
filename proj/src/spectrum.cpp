#include "infoconv/spectrum.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <sstream>

namespace infoconv {

namespace {

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

constexpr double kExactIntegerLimit = 9007199254740992.0;  // 2^53

}  // namespace

BudgetExceeded::BudgetExceeded(const std::string& budget, double requested, double limit)
    : Error("budget '" + budget + "' exceeded: requested " + format_number(requested) +
            ", limit " + format_number(limit)),
      budget_(budget) {}

Spectrum::Spectrum() : atoms_{{1.0, 1.0}}, total_dim_(1.0) {}

Spectrum::Spectrum(std::vector<Atom> atoms, double mass_tolerance) {
  std::vector<Atom> kept;
  kept.reserve(atoms.size());
  for (const Atom& atom : atoms) {
    if (!std::isfinite(atom.probability) || !std::isfinite(atom.multiplicity)) {
      throw InvalidArgument("spectrum atom is not finite");
    }
    if (atom.probability < 0.0) {
      throw InvalidArgument("spectrum atom has negative probability " +
                            format_number(atom.probability));
    }
    if (atom.multiplicity < 1.0 ||
        (atom.multiplicity < kExactIntegerLimit &&
         atom.multiplicity != std::floor(atom.multiplicity))) {
      throw InvalidArgument("spectrum multiplicity must be a positive integer, got " +
                            format_number(atom.multiplicity));
    }
    if (atom.probability > 0.0) kept.push_back(atom);
  }
  if (kept.empty()) throw InvalidArgument("spectrum has no positive atom");

  std::sort(kept.begin(), kept.end(),
            [](const Atom& a, const Atom& b) { return a.probability > b.probability; });

  // Runs whose values agree with the run head to a relative tolerance become one
  // atom carrying the run's mass.
  atoms_.clear();
  std::size_t i = 0;
  while (i < kept.size()) {
    const double head = kept[i].probability;
    double mass = 0.0;
    double count = 0.0;
    std::size_t j = i;
    while (j < kept.size() && head - kept[j].probability <= kMergeTolerance * head) {
      mass += kept[j].probability * kept[j].multiplicity;
      count += kept[j].multiplicity;
      ++j;
    }
    atoms_.push_back({j - i == 1 ? head : mass / count, count});
    i = j;
  }

  total_dim_ = 0.0;
  for (const Atom& atom : atoms_) total_dim_ += atom.multiplicity;

  const double m = mass();
  if (std::abs(m - 1.0) > mass_tolerance) {
    throw InvalidArgument("spectrum mass " + format_number(m) + " differs from 1 by more than " +
                          format_number(mass_tolerance));
  }
}

Spectrum Spectrum::from_probabilities(std::span<const double> probabilities,
                                      double mass_tolerance) {
  std::vector<Atom> atoms;
  atoms.reserve(probabilities.size());
  for (double p : probabilities) atoms.push_back({p, 1.0});
  return Spectrum(std::move(atoms), mass_tolerance);
}

double Spectrum::mass() const noexcept {
  double m = 0.0;
  for (const Atom& atom : atoms_) m += atom.probability * atom.multiplicity;
  return m;
}

Eigen::VectorXd Spectrum::expand(double max_dim) const {
  if (total_dim_ > max_dim) throw BudgetExceeded("max_expanded_dim", total_dim_, max_dim);
  Eigen::VectorXd out(static_cast<Eigen::Index>(total_dim_));
  Eigen::Index k = 0;
  for (const Atom& atom : atoms_) {
    const auto count = static_cast<Eigen::Index>(atom.multiplicity);
    out.segment(k, count).setConstant(atom.probability);
    k += count;
  }
  return out;
}

bool approx_equal(const Spectrum& a, const Spectrum& b, double tolerance) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Atom& x = a.atoms()[i];
    const Atom& y = b.atoms()[i];
    if (x.multiplicity != y.multiplicity) return false;
    if (std::abs(x.probability - y.probability) > tolerance) return false;
  }
  return true;
}

AmplitudeMatrix::AmplitudeMatrix(Eigen::MatrixXcd coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.rows() == 0 || coefficients_.cols() == 0) {
    throw InvalidArgument("amplitude matrix has a zero dimension");
  }
  const double norm2 = coefficients_.squaredNorm();
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kNormTolerance) {
    throw InvalidArgument("amplitude matrix is not normalized: sum |C_ij|^2 = " +
                          format_number(norm2));
  }
}

Spectrum schmidt_from_amplitudes(const AmplitudeMatrix& amplitudes) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(amplitudes.coefficients());
  const Eigen::VectorXd& sv = svd.singularValues();
  const double largest = sv.size() > 0 ? sv(0) * sv(0) : 0.0;
  std::vector<double> probabilities;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double p = sv(i) * sv(i);
    // Squared singular values this far below the leading one are rounding noise.
    if (p > 1e-14 * largest) probabilities.push_back(p);
  }
  return Spectrum::from_probabilities(probabilities, AmplitudeMatrix::kNormTolerance);
}

namespace {

// Exact multinomial n! / prod c_i! via a chain of binomials.
double exact_multinomial(const std::vector<std::uint32_t>& counts) {
  unsigned __int128 result = 1;
  std::uint32_t running = 0;
  for (std::uint32_t c : counts) {
    unsigned __int128 binom = 1;
    for (std::uint32_t j = 1; j <= c; ++j) {
      binom = binom * (running + j) / j;
    }
    running += c;
    result *= binom;
  }
  return static_cast<double>(result);
}

struct TypeClassEnumerator {
  const std::vector<Atom>& base;
  std::vector<double> log_prob;
  std::vector<double> log_mult;
  std::uint32_t n;
  std::vector<std::uint32_t> counts;
  std::vector<Atom> out;
  double dropped_mass = 0.0;

  void emit() {
    double lp = 0.0;
    double lm = std::lgamma(static_cast<double>(n) + 1.0);
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] == 0) continue;
      lp += counts[i] * log_prob[i];
      lm += counts[i] * log_mult[i] - std::lgamma(static_cast<double>(counts[i]) + 1.0);
    }
    if (lp < std::log(DBL_MIN)) {
      dropped_mass += std::exp(lm + lp);
      return;
    }
    double p = 1.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] > 0) p *= std::pow(base[i].probability, static_cast<double>(counts[i]));
    }
    double mult;
    // Intermediate products stay below result * n, so 128 bits are exact
    // while the multinomial is under 2^90.
    if (lm < 90.0 * std::log(2.0)) {
      mult = exact_multinomial(counts);
      for (std::size_t i = 0; i < counts.size(); ++i) {
        for (std::uint32_t j = 0; j < counts[i]; ++j) mult *= base[i].multiplicity;
      }
    } else {
      mult = std::exp(lm);
    }
    if (!std::isfinite(mult)) {
      throw BudgetExceeded("representable_dimension", lm / std::log(10.0), std::log10(DBL_MAX));
    }
    out.push_back({p, mult});
  }

  void recurse(std::size_t index, std::uint32_t remaining) {
    if (index + 1 == counts.size()) {
      counts[index] = remaining;
      emit();
      return;
    }
    for (std::uint32_t c = 0; c <= remaining; ++c) {
      counts[index] = c;
      recurse(index + 1, remaining - c);
    }
  }
};

}  // namespace

Spectrum iid_spectrum(const Spectrum& base, std::uint32_t n, const Budgets& budgets) {
  if (n == 0) throw InvalidArgument("iid_spectrum requires n >= 1");
  const std::size_t k = base.size();
  // C(n + k - 1, k - 1) compositions of n into k parts.
  const double classes = std::exp(std::lgamma(n + k) - std::lgamma(static_cast<double>(k)) -
                                  std::lgamma(n + 1.0));
  if (classes > budgets.max_type_classes * (1.0 + 1e-9)) {
    throw BudgetExceeded("max_type_classes", std::round(classes), budgets.max_type_classes);
  }

  TypeClassEnumerator e{base.atoms(), {}, {}, n, std::vector<std::uint32_t>(k, 0), {}};
  for (const Atom& atom : base.atoms()) {
    e.log_prob.push_back(std::log(atom.probability));
    e.log_mult.push_back(std::log(atom.multiplicity));
  }
  e.out.reserve(static_cast<std::size_t>(classes) + 1);
  e.recurse(0, n);
  if (e.dropped_mass > 1e-12) {
    throw InvalidArgument("tensor power has mass " + format_number(e.dropped_mass) +
                          " below double precision range");
  }
  return Spectrum(std::move(e.out));
}

Spectrum maxent_spectrum(double rank) {
  if (!(rank >= 1.0) || !std::isfinite(rank) ||
      (rank < kExactIntegerLimit && rank != std::floor(rank))) {
    throw InvalidArgument("maximally entangled rank must be a positive integer, got " +
                          format_number(rank));
  }
  return Spectrum({{1.0 / rank, rank}});
}

double maxent_rank(double rate, std::uint32_t n) {
  if (!std::isfinite(rate) || rate < 0.0) {
    throw InvalidArgument("entanglement rate must be finite and non-negative");
  }
  const double raw = std::exp(static_cast<double>(n) * rate);
  if (!std::isfinite(raw)) throw BudgetExceeded("representable_dimension", raw, DBL_MAX);
  const double rounded = std::round(raw);
  if (std::abs(raw - rounded) <= 1e-12 * raw) return std::max(1.0, rounded);
  return std::max(1.0, std::ceil(raw));
}

double entropy(const Spectrum& spectrum) {
  double h = 0.0;
  for (const Atom& atom : spectrum.atoms()) {
    h -= atom.multiplicity * atom.probability * std::log(atom.probability);
  }
  return h;
}

}  // namespace infoconv
