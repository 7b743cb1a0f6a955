#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "infoconv/spectrum.hpp"

namespace infoconv {

/// Total function {0..domain_size-1} -> {0..codomain_size-1}.
class DeterministicMap {
public:
  DeterministicMap(std::vector<std::uint32_t> targets, std::uint32_t codomain_size);

  /// Identity on {0..size-1}.
  static DeterministicMap identity(std::uint32_t size);

  std::uint32_t domain_size() const noexcept { return static_cast<std::uint32_t>(targets_.size()); }
  std::uint32_t codomain_size() const noexcept { return codomain_size_; }
  const std::vector<std::uint32_t>& targets() const noexcept { return targets_; }
  std::uint32_t operator()(std::uint32_t x) const { return targets_.at(x); }

  friend bool operator==(const DeterministicMap&, const DeterministicMap&) = default;

private:
  std::vector<std::uint32_t> targets_;
  std::uint32_t codomain_size_;
};

/// Square nonnegative matrix whose rows and columns sum to 1.
class BistochasticMatrix {
public:
  static constexpr double kEntryTolerance = 1e-12;
  static constexpr double kSumTolerance = 1e-10;

  explicit BistochasticMatrix(Eigen::MatrixXd entries);

  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  Eigen::Index size() const noexcept { return entries_.rows(); }

  /// Largest deviation of a row or column sum from 1.
  static double sum_defect(const Eigen::MatrixXd& m);

private:
  Eigen::MatrixXd entries_;
};

/// p is majorized by q (p ≺ q): every descending prefix sum of p is at most
/// the matching prefix sum of q, after zero padding, within 1e-10. Works on
/// compressed atoms without expanding them.
bool majorizes(const Spectrum& p, const Spectrum& q);

/// Index k (1-based prefix length) of the first violated prefix inequality
/// for expanded vectors, if any.
std::optional<Eigen::Index> first_majorization_violation(const Eigen::VectorXd& p,
                                                         const Eigen::VectorXd& q,
                                                         double tolerance = 1e-10);

/// q(y) = sum of p(x) over the fiber of y. Vector form keeps codomain labels.
Eigen::VectorXd pushforward(const Eigen::VectorXd& p, const DeterministicMap& phi);

/// Spectrum form: p is expanded in descending order; empty fibers are dropped.
Spectrum pushforward(const Spectrum& p, const DeterministicMap& phi);

/// Block-diagonal doubly stochastic certificate for p ≺ pushforward(p, phi).
struct KhCertificate {
  BistochasticMatrix matrix;
  /// ⊕_y (q(y), 0, ..., 0), fibers ordered by codomain index.
  Eigen::VectorXd beta;
  /// ⊕_y (p(x_{y,1}), ..., p(x_{y,n(y)})), the same ordering applied to p.
  Eigen::VectorXd alpha;
  /// order[i] is the domain index placed at position i of alpha.
  std::vector<std::uint32_t> order;
};

/// Builds ⊕_y D_y with D_y = sum_j p(x_{y,j}) / q(y) U_{n(y),j}, where U_{n,j}
/// swaps the first and j-th coordinates. Fibers with q(y) = 0 get an identity
/// block.
KhCertificate kh_certificate(const Eigen::VectorXd& p, const DeterministicMap& phi);

/// Doubly stochastic D with D q↓ = p↓ for p ≺ q, built from at most m - 1
/// T-transforms where m is the zero-padded common length. Throws
/// InvalidArgument naming the first failing prefix when p is not majorized by q.
BistochasticMatrix transfer_matrix(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

BistochasticMatrix transfer_matrix(const Spectrum& p, const Spectrum& q,
                                   const Budgets& budgets = {});

/// Descending copy of v zero-padded to `length`.
Eigen::VectorXd sorted_padded(const Eigen::VectorXd& v, Eigen::Index length);

}  // namespace infoconv
