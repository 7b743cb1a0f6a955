#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "infoconv/hermitian.hpp"
#include "infoconv/random.hpp"
#include "infoconv/spectrum.hpp"

namespace infoconv {

/// A numerical check of lhs <= rhs (+ tolerance).
struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 1e-9;

  bool holds() const noexcept { return lhs <= rhs + tolerance; }
  double slack() const noexcept { return rhs - lhs; }
};

/// An identity |lhs - rhs| <= tolerance.
struct EqualityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 1e-9;

  bool holds() const noexcept { return std::abs(lhs - rhs) <= tolerance; }
  /// Minus the deviation, so that 0 is exact agreement.
  double slack() const noexcept { return -std::abs(lhs - rhs); }
};

using ComplexOperator = Eigen::MatrixXcd;
using ComplexMap = TPMap<std::complex<double>>;

struct LemmaNpReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  /// min over sampled T of Tr A_+ - Tr A T.
  double worst_slack = 0.0;
  /// Tr A {A > 0} against Tr A_+.
  EqualityCheck attainment;
  std::optional<ComplexOperator> violating_contraction;

  bool ok() const noexcept { return violations == 0 && attainment.holds(); }
};

/// Tr A T <= Tr A_+ for `trials` random contractions T, with equality at T = {A > 0}.
LemmaNpReport verify_lemma_np(const HermitianOperator& a, std::size_t trials, Rng& rng);

/// Tr F(A)_+ <= Tr A_+.
InequalityCheck verify_lemma_bdm(const ComplexMap& map, const HermitianOperator& a);

struct SandwichReport {
  /// Tr(rho - e^{na} sigma)_+ <= Tr rho {rho - e^{na} sigma > 0}
  InequalityCheck upper;
  /// Tr rho {rho - e^{nb} sigma > 0} - e^{n(a-b)} <= Tr(rho - e^{na} sigma)_+, b = a + gamma
  InequalityCheck lower;

  bool ok() const noexcept { return upper.holds() && lower.holds(); }
};

SandwichReport verify_bd_sandwich(const HermitianOperator& rho, const HermitianOperator& sigma,
                                  std::uint32_t n, double a, double gamma);

struct ContinuityReport {
  /// Tr(rho - c sigma)_+ <= Tr(rho' - c sigma)_+ + ||rho - rho'||_1 / 2
  InequalityCheck forward;
  /// The same with rho and rho' exchanged.
  InequalityCheck backward;

  bool ok() const noexcept { return forward.holds() && backward.holds(); }
};

ContinuityReport verify_continuity(const HermitianOperator& rho, const HermitianOperator& rho_prime,
                                   const HermitianOperator& sigma, std::uint32_t n, double a);

struct ProductTailReport {
  /// sum over pairs with rate(k) + rate(l) <= a of lA lB  <=  sum over k with rate(k) <= a of lA
  InequalityCheck check;
  /// The pair sum recomputed on expanded vectors, when small enough.
  std::optional<double> expanded_lhs;

  bool ok() const noexcept {
    return check.holds() && (!expanded_lhs || std::abs(*expanded_lhs - check.lhs) <= 1e-12);
  }
};

/// Expanded cross-check runs when total_dim(A) * total_dim(B) <= 2^14.
ProductTailReport verify_product_tails(const Spectrum& a_spectrum, const Spectrum& b_spectrum,
                                       std::uint32_t n, double a);

/// Tr(F(rho) - e^{na} F(sigma))_+ <= Tr(rho - e^{na} sigma)_+.
InequalityCheck verify_tail_monotonicity(const HermitianOperator& rho, const HermitianOperator& sigma,
                                         const ComplexMap& map, std::uint32_t n, double a);

/// Tr B {A - B > 0} <= Tr A {A - B > 0}.
InequalityCheck verify_projection_dominance(const HermitianOperator& a, const HermitianOperator& b);

/// Tr (A - B){A - B > 0} = Tr A {A - B > 0} - Tr B {A - B > 0} = Tr (A - B)_+.
EqualityCheck verify_projection_split(const HermitianOperator& a, const HermitianOperator& b);

/// For traceless A: Tr |A| = 2 Tr A_+ (and = 2 Tr A_-).
EqualityCheck verify_traceless_norm(const HermitianOperator& a);

struct SuiteConfig {
  std::uint64_t seed = 7;
  /// Instances per suite; 0 selects each suite's default.
  std::size_t trials = 0;
  Eigen::Index max_dim = 8;
};

struct SuiteReport {
  std::string name;
  std::size_t instances = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  /// Smallest slack observed over all checks (negative means a violation).
  double worst_slack = 0.0;
  /// Violating instances serialized in full.
  std::vector<nlohmann::json> violating;
  /// Suite-specific extras (e.g. the greedy/optimum gap histogram).
  nlohmann::json details = nlohmann::json::object();

  bool ok() const noexcept { return violations == 0; }
};

/// Suite names in canonical order.
const std::vector<std::string>& suite_names();

bool is_suite(std::string_view name);

/// Throws InvalidArgument for an unknown name.
SuiteReport run_suite(std::string_view name, const SuiteConfig& config);

}  // namespace infoconv
