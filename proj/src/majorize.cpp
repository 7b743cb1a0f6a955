#include "infoconv/majorize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace infoconv {

namespace {

constexpr double kPrefixTolerance = 1e-10;

// Prefix-sum walker over a compressed spectrum, scaled to unit mass. Positions
// are real because multiplicities can exceed 2^53.
class PrefixWalker {
public:
  explicit PrefixWalker(const Spectrum& s) : atoms_(s.atoms()), scale_(1.0 / s.mass()) {}

  // Prefix sum of the first k largest entries; k must not decrease between calls.
  double at(double k) {
    while (index_ < atoms_.size() && end_of_current() <= k) {
      start_ += atoms_[index_].multiplicity;
      sum_ += atoms_[index_].multiplicity * atoms_[index_].probability * scale_;
      ++index_;
    }
    if (index_ == atoms_.size()) return sum_;
    return sum_ + (k - start_) * atoms_[index_].probability * scale_;
  }

  std::vector<double> breakpoints() const {
    std::vector<double> out;
    double pos = 0.0;
    for (const Atom& a : atoms_) {
      pos += a.multiplicity;
      out.push_back(pos);
    }
    return out;
  }

private:
  double end_of_current() const { return start_ + atoms_[index_].multiplicity; }

  const std::vector<Atom>& atoms_;
  double scale_;
  std::size_t index_ = 0;
  double start_ = 0.0;
  double sum_ = 0.0;
};

}  // namespace

DeterministicMap::DeterministicMap(std::vector<std::uint32_t> targets, std::uint32_t codomain_size)
    : targets_(std::move(targets)), codomain_size_(codomain_size) {
  if (targets_.empty()) throw InvalidArgument("deterministic map has an empty domain");
  if (codomain_size_ == 0) throw InvalidArgument("deterministic map has an empty codomain");
  for (std::uint32_t t : targets_) {
    if (t >= codomain_size_) {
      throw InvalidArgument("map target " + std::to_string(t) + " outside codomain of size " +
                            std::to_string(codomain_size_));
    }
  }
}

DeterministicMap DeterministicMap::identity(std::uint32_t size) {
  std::vector<std::uint32_t> t(size);
  for (std::uint32_t i = 0; i < size; ++i) t[i] = i;
  return DeterministicMap(std::move(t), size);
}

BistochasticMatrix::BistochasticMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw InvalidArgument("bistochastic matrix must be square and nonempty");
  }
  if (entries_.minCoeff() < -kEntryTolerance) {
    throw InvalidArgument("bistochastic matrix has a negative entry");
  }
  if (sum_defect(entries_) > kSumTolerance) {
    throw InvalidArgument("bistochastic matrix row or column sums differ from 1");
  }
}

double BistochasticMatrix::sum_defect(const Eigen::MatrixXd& m) {
  const double rows = (m.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double cols = (m.colwise().sum().array() - 1.0).abs().maxCoeff();
  return std::max(rows, cols);
}

bool majorizes(const Spectrum& p, const Spectrum& q) {
  PrefixWalker wp(p);
  PrefixWalker wq(q);
  std::vector<double> points = wp.breakpoints();
  const std::vector<double> qpoints = wq.breakpoints();
  points.insert(points.end(), qpoints.begin(), qpoints.end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  // Both prefix curves are linear between consecutive breakpoints, so checking
  // the breakpoints covers every k.
  for (double k : points) {
    if (wp.at(k) > wq.at(k) + kPrefixTolerance) return false;
  }
  return true;
}

Eigen::VectorXd sorted_padded(const Eigen::VectorXd& v, Eigen::Index length) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(std::max(length, v.size()));
  out.head(v.size()) = v;
  std::sort(out.data(), out.data() + out.size(), std::greater<double>());
  return out;
}

std::optional<Eigen::Index> first_majorization_violation(const Eigen::VectorXd& p,
                                                         const Eigen::VectorXd& q,
                                                         double tolerance) {
  const Eigen::Index m = std::max(p.size(), q.size());
  const Eigen::VectorXd ps = sorted_padded(p, m);
  const Eigen::VectorXd qs = sorted_padded(q, m);
  double sp = 0.0;
  double sq = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    sp += ps(k);
    sq += qs(k);
    if (sp > sq + tolerance) return k + 1;
  }
  if (std::abs(sp - sq) > tolerance) return m;
  return std::nullopt;
}

Eigen::VectorXd pushforward(const Eigen::VectorXd& p, const DeterministicMap& phi) {
  if (p.size() != static_cast<Eigen::Index>(phi.domain_size())) {
    throw InvalidArgument("pushforward: distribution has " + std::to_string(p.size()) +
                          " entries but map domain has " + std::to_string(phi.domain_size()));
  }
  Eigen::VectorXd q = Eigen::VectorXd::Zero(phi.codomain_size());
  for (std::uint32_t x = 0; x < phi.domain_size(); ++x) q(phi(x)) += p(x);
  return q;
}

Spectrum pushforward(const Spectrum& p, const DeterministicMap& phi) {
  const Eigen::VectorXd q = pushforward(p.expand(), phi);
  return Spectrum::from_probabilities(std::span<const double>(q.data(), q.size()));
}

KhCertificate kh_certificate(const Eigen::VectorXd& p, const DeterministicMap& phi) {
  const Eigen::VectorXd q = pushforward(p, phi);
  std::vector<std::vector<std::uint32_t>> fibers(phi.codomain_size());
  for (std::uint32_t x = 0; x < phi.domain_size(); ++x) fibers[phi(x)].push_back(x);

  const Eigen::Index size = p.size();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(size, size);
  Eigen::VectorXd alpha(size);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(size);
  std::vector<std::uint32_t> order;
  order.reserve(static_cast<std::size_t>(size));

  Eigen::Index offset = 0;
  for (std::uint32_t y = 0; y < phi.codomain_size(); ++y) {
    const auto& fiber = fibers[y];
    const auto n = static_cast<Eigen::Index>(fiber.size());
    if (n == 0) continue;
    auto block = d.block(offset, offset, n, n);
    if (q(y) > 0.0) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const double w = p(fiber[static_cast<std::size_t>(j)]) / q(y);
        // w * U_{n,j}: U swaps coordinates 0 and j (the identity for j = 0).
        for (Eigen::Index i = 0; i < n; ++i) {
          Eigen::Index image = i;
          if (i == 0) image = j;
          else if (i == j) image = 0;
          block(image, i) += w;
        }
      }
    } else {
      block.setIdentity();
    }
    beta(offset) = q(y);
    for (Eigen::Index j = 0; j < n; ++j) {
      alpha(offset + j) = p(fiber[static_cast<std::size_t>(j)]);
      order.push_back(fiber[static_cast<std::size_t>(j)]);
    }
    offset += n;
  }
  return {BistochasticMatrix(std::move(d)), std::move(beta), std::move(alpha), std::move(order)};
}

BistochasticMatrix transfer_matrix(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  if (const auto bad = first_majorization_violation(p, q, kPrefixTolerance)) {
    throw InvalidArgument("transfer_matrix: p is not majorized by q (prefix " +
                          std::to_string(*bad) + " fails)");
  }
  const Eigen::Index m = std::max(p.size(), q.size());
  const Eigen::VectorXd y = sorted_padded(p, m);
  Eigen::VectorXd x = sorted_padded(q, m);
  Eigen::MatrixXd d = Eigen::MatrixXd::Identity(m, m);

  // Each T-transform moves mass from the last coordinate still above its target
  // to the first later coordinate still below, fixing at least one coordinate.
  for (Eigen::Index step = 0; step < m; ++step) {
    Eigen::Index j = -1;
    for (Eigen::Index i = m - 1; i >= 0; --i) {
      if (x(i) > y(i) + kPrefixTolerance * 1e-2) {
        j = i;
        break;
      }
    }
    if (j < 0) break;
    Eigen::Index k = -1;
    for (Eigen::Index i = j + 1; i < m; ++i) {
      if (x(i) < y(i) - kPrefixTolerance * 1e-2) {
        k = i;
        break;
      }
    }
    if (k < 0) break;
    const double excess = x(j) - y(j);
    const double deficit = y(k) - x(k);
    const double delta = std::min(excess, deficit);
    const double mix = delta / (x(j) - x(k));

    // T = (1 - mix) I + mix * swap(j, k), applied after the current D.
    const Eigen::RowVectorXd row_j = d.row(j);
    const Eigen::RowVectorXd row_k = d.row(k);
    d.row(j) = (1.0 - mix) * row_j + mix * row_k;
    d.row(k) = mix * row_j + (1.0 - mix) * row_k;

    const double xj = x(j);
    const double xk = x(k);
    x(j) = (1.0 - mix) * xj + mix * xk;
    x(k) = mix * xj + (1.0 - mix) * xk;
    if (excess <= deficit) x(j) = y(j);
    if (deficit <= excess) x(k) = y(k);
  }
  return BistochasticMatrix(std::move(d));
}

BistochasticMatrix transfer_matrix(const Spectrum& p, const Spectrum& q, const Budgets& budgets) {
  const double limit = std::sqrt(budgets.max_expanded_dim);
  return transfer_matrix(p.expand(limit), q.expand(limit));
}

}  // namespace infoconv
