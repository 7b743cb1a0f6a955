#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "infoconv/error.hpp"

namespace infoconv {

/// One distinct probability value of a spectrum and how many times it occurs.
///
/// Multiplicities are integer valued but carried as doubles: type-class counts
/// such as C(400, 200) do not fit any fixed-width integer. They are exact up
/// to 2^53.
struct Atom {
  double probability;
  double multiplicity;
};

/// Schmidt spectrum of a bipartite pure state in compressed form.
///
/// Atoms are kept sorted by probability (descending), strictly positive, with
/// values that agree to a relative 1e-12 merged into one atom.
class Spectrum {
public:
  static constexpr double kMassTolerance = 1e-9;
  static constexpr double kMergeTolerance = 1e-12;

  /// The deterministic spectrum {(1, x1)}.
  Spectrum();

  /// Validates, drops zero atoms, sorts and merges. Throws InvalidArgument on
  /// negative or non-finite values or when the total mass is off by more than
  /// `mass_tolerance`.
  explicit Spectrum(std::vector<Atom> atoms, double mass_tolerance = kMassTolerance);

  /// Builds a spectrum from an expanded probability list (any order).
  static Spectrum from_probabilities(std::span<const double> probabilities,
                                     double mass_tolerance = kMassTolerance);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  /// Sum of multiplicities (number of nonzero Schmidt coefficients).
  double total_dim() const noexcept { return total_dim_; }

  /// Sum of probability * multiplicity.
  double mass() const noexcept;

  /// True when all atoms share one probability value.
  bool is_flat() const noexcept { return atoms_.size() == 1; }

  /// Expanded descending probability vector. Throws BudgetExceeded when
  /// total_dim() exceeds `max_dim`.
  Eigen::VectorXd expand(double max_dim = 1.0e7) const;

private:
  std::vector<Atom> atoms_;
  double total_dim_ = 1.0;
};

/// Element-wise comparison of two compressed spectra.
bool approx_equal(const Spectrum& a, const Spectrum& b, double tolerance);

/// Coefficients C_ij of |psi> = sum C_ij |i>|j>. Construction rejects empty or
/// non-normalized input.
class AmplitudeMatrix {
public:
  static constexpr double kNormTolerance = 1e-10;

  explicit AmplitudeMatrix(Eigen::MatrixXcd coefficients);

  const Eigen::MatrixXcd& coefficients() const noexcept { return coefficients_; }

private:
  Eigen::MatrixXcd coefficients_;
};

/// Squared singular values of the amplitude matrix.
Spectrum schmidt_from_amplitudes(const AmplitudeMatrix& amplitudes);

/// Spectrum of the n-fold tensor power of `base`, enumerated by type class.
Spectrum iid_spectrum(const Spectrum& base, std::uint32_t n, const Budgets& budgets = {});

/// Flat spectrum of a maximally entangled state of Schmidt rank `rank`.
Spectrum maxent_spectrum(double rank);

/// ceil(e^{n * rate}), forgiving a relative 1e-12 of rounding in the exponential
/// so that e.g. rate = ln 2 gives exactly 2^n.
double maxent_rank(double rate, std::uint32_t n);

/// Shannon entropy in nats.
double entropy(const Spectrum& spectrum);

}  // namespace infoconv
