#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "infoconv/error.hpp"

namespace infoconv {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Dense Hermitian operator. The wrapped matrix equals its adjoint to within
/// 1e-10 times its largest entry; construction rejects anything else.
template <typename Scalar>
class Hermitian {
public:
  using MatrixType = Matrix<Scalar>;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  static constexpr double kTolerance = 1e-10;

  Hermitian() = default;

  template <typename Derived>
  Hermitian(const Eigen::MatrixBase<Derived>& m) : m_(m) {  // NOLINT(google-explicit-constructor)
    validate();
  }

  const MatrixType& matrix() const noexcept { return m_; }
  Eigen::Index dimension() const noexcept { return m_.rows(); }

  /// Fresh eigendecomposition; eigenvalues ascending.
  Eigen::SelfAdjointEigenSolver<MatrixType> eigen() const {
    return Eigen::SelfAdjointEigenSolver<MatrixType>(m_);
  }

private:
  void validate() {
    if (m_.rows() != m_.cols()) throw InvalidArgument("Hermitian operator must be square");
    if (m_.rows() == 0) throw InvalidArgument("Hermitian operator has dimension 0");
    const double scale = m_.cwiseAbs().maxCoeff();
    const double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (!std::isfinite(scale) || asym > kTolerance * std::max(scale, 1e-300)) {
      throw InvalidArgument("operator is not Hermitian (max |A - A^dagger| = " +
                            std::to_string(asym) + ")");
    }
    // Remove the residual anti-Hermitian rounding so eigensolvers see an exact
    // self-adjoint matrix.
    m_ = (0.5 * (m_ + m_.adjoint())).eval();
  }

  MatrixType m_;
};

using HermitianOperator = Hermitian<std::complex<double>>;
using RealSymmetricOperator = Hermitian<double>;

/// Eigenvalues at or below this value count as non-positive.
inline double positivity_cutoff(const Eigen::VectorXd& eigenvalues) {
  return eigenvalues.size() == 0 ? 0.0 : 1e-10 * eigenvalues.cwiseAbs().maxCoeff();
}

template <typename Scalar>
struct JordanDecomposition {
  Matrix<Scalar> plus;
  Matrix<Scalar> minus;
  /// {A > 0}
  Matrix<Scalar> proj_pos;
  /// {A <= 0}; zero eigenvalues land here.
  Matrix<Scalar> proj_nonpos;
};

template <typename Scalar>
JordanDecomposition<Scalar> jordan(const Hermitian<Scalar>& a) {
  const auto es = a.eigen();
  const Eigen::VectorXd& lambda = es.eigenvalues();
  const double cutoff = positivity_cutoff(lambda);
  const auto& u = es.eigenvectors();
  const Eigen::Index d = a.dimension();

  Eigen::VectorXd pos_ind(d), plus(d), minus(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const bool positive = lambda(k) > cutoff;
    pos_ind(k) = positive ? 1.0 : 0.0;
    plus(k) = positive ? lambda(k) : 0.0;
    minus(k) = positive ? 0.0 : -lambda(k);
  }
  auto reassemble = [&](const Eigen::VectorXd& diag) -> Matrix<Scalar> {
    return u * diag.cast<Scalar>().asDiagonal() * u.adjoint();
  };
  JordanDecomposition<Scalar> out;
  out.plus = reassemble(plus);
  out.minus = reassemble(minus);
  out.proj_pos = reassemble(pos_ind);
  out.proj_nonpos = Matrix<Scalar>::Identity(d, d) - out.proj_pos;
  return out;
}

/// Spectral projection {A > 0}.
template <typename Scalar>
Matrix<Scalar> positive_projector(const Hermitian<Scalar>& a) {
  const auto es = a.eigen();
  const double cutoff = positivity_cutoff(es.eigenvalues());
  const auto& u = es.eigenvectors();
  Eigen::VectorXd ind = (es.eigenvalues().array() > cutoff).template cast<double>();
  return u * ind.cast<Scalar>().asDiagonal() * u.adjoint();
}

/// Tr A_+, the sum of the positive eigenvalues.
template <typename Scalar>
double trace_plus(const Hermitian<Scalar>& a) {
  const Eigen::VectorXd lambda = a.eigen().eigenvalues();
  const double cutoff = positivity_cutoff(lambda);
  double sum = 0.0;
  for (double l : lambda) {
    if (l > cutoff) sum += l;
  }
  return sum;
}

/// Tr |A|.
template <typename Scalar>
double trace_norm(const Hermitian<Scalar>& a) {
  return a.eigen().eigenvalues().cwiseAbs().sum();
}

template <typename Scalar>
double real_trace(const Matrix<Scalar>& m) {
  return std::real(m.trace());
}

/// Hermitian T with 0 <= T <= I.
template <typename Scalar>
class Contraction {
public:
  static constexpr double kTolerance = 1e-10;

  template <typename Derived>
  explicit Contraction(const Eigen::MatrixBase<Derived>& m) : op_(m) {
    const Eigen::VectorXd lambda = op_.eigen().eigenvalues();
    if (lambda.minCoeff() < -kTolerance || lambda.maxCoeff() > 1.0 + kTolerance) {
      throw InvalidArgument("contraction eigenvalues must lie in [0, 1]");
    }
  }

  const Matrix<Scalar>& matrix() const noexcept { return op_.matrix(); }

private:
  Hermitian<Scalar> op_;
};

/// Trace-preserving linear map on d x d operators.
///
/// - Kraus: A -> sum K A K^dagger, completely positive.
/// - Stochastic: A -> diag(S diag(A)) with S column-stochastic; the classical
///   (commuting) case.
/// - TransposeMix: A -> (1 - t) A + t A^T, positive but not completely positive
///   for t > 0.
template <typename Scalar>
class TPMap {
public:
  struct Kraus {
    std::vector<Matrix<Scalar>> operators;
  };
  struct Stochastic {
    Eigen::MatrixXd matrix;
  };
  struct TransposeMix {
    double t;
  };
  using Kind = std::variant<Kraus, Stochastic, TransposeMix>;

  static constexpr double kTolerance = 1e-10;

  static TPMap kraus(std::vector<Matrix<Scalar>> operators) {
    if (operators.empty()) throw InvalidArgument("Kraus map needs at least one operator");
    const Eigen::Index d = operators.front().cols();
    Matrix<Scalar> completeness = Matrix<Scalar>::Zero(d, d);
    for (const auto& k : operators) {
      if (k.cols() != d || k.rows() != d) {
        throw InvalidArgument("Kraus operators must all be d x d");
      }
      completeness += k.adjoint() * k;
    }
    if ((completeness - Matrix<Scalar>::Identity(d, d)).cwiseAbs().maxCoeff() > kTolerance) {
      throw InvalidArgument("Kraus operators do not satisfy sum K^dagger K = I");
    }
    return TPMap(Kraus{std::move(operators)});
  }

  static TPMap stochastic(Eigen::MatrixXd s) {
    if (s.rows() != s.cols() || s.rows() == 0) {
      throw InvalidArgument("stochastic matrix must be square");
    }
    if (s.minCoeff() < 0.0) throw InvalidArgument("stochastic matrix has a negative entry");
    if ((s.colwise().sum().array() - 1.0).abs().maxCoeff() > kTolerance) {
      throw InvalidArgument("stochastic matrix columns must sum to 1");
    }
    return TPMap(Stochastic{std::move(s)});
  }

  static TPMap transpose_mix(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("transpose_mix weight must be in [0,1]");
    return TPMap(TransposeMix{t});
  }

  static TPMap identity(Eigen::Index d) {
    return TPMap(Kraus{{Matrix<Scalar>::Identity(d, d)}});
  }

  /// A -> Tr(A) I / d.
  static TPMap depolarizing(Eigen::Index d) {
    std::vector<Matrix<Scalar>> ops;
    const double w = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        Matrix<Scalar> k = Matrix<Scalar>::Zero(d, d);
        k(i, j) = Scalar(w);
        ops.push_back(std::move(k));
      }
    }
    return TPMap(Kraus{std::move(ops)});
  }

  const Kind& kind() const noexcept { return kind_; }

  /// Dimension the map acts on, or 0 when any dimension is accepted.
  Eigen::Index dimension() const {
    if (const auto* k = std::get_if<Kraus>(&kind_)) return k->operators.front().cols();
    if (const auto* s = std::get_if<Stochastic>(&kind_)) return s->matrix.cols();
    return 0;
  }

  std::string name() const {
    switch (kind_.index()) {
      case 0: return "cptp";
      case 1: return "stochastic";
      default: return "transpose_mix";
    }
  }

private:
  explicit TPMap(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
};

template <typename Scalar>
Hermitian<Scalar> apply_tp(const TPMap<Scalar>& map, const Hermitian<Scalar>& a) {
  const Eigen::Index dim = map.dimension();
  if (dim != 0 && dim != a.dimension()) {
    throw InvalidArgument("TP map acts on dimension " + std::to_string(dim) +
                          " but operator has dimension " + std::to_string(a.dimension()));
  }
  using Map = TPMap<Scalar>;
  const Matrix<Scalar>& m = a.matrix();
  Matrix<Scalar> out;
  if (const auto* k = std::get_if<typename Map::Kraus>(&map.kind())) {
    out = Matrix<Scalar>::Zero(m.rows(), m.cols());
    for (const auto& op : k->operators) out.noalias() += op * m * op.adjoint();
  } else if (const auto* s = std::get_if<typename Map::Stochastic>(&map.kind())) {
    const Eigen::VectorXd diag = m.diagonal().real();
    const Eigen::VectorXd mapped = s->matrix * diag;
    out = mapped.cast<Scalar>().asDiagonal();
  } else {
    const double t = std::get<typename Map::TransposeMix>(map.kind()).t;
    out = (1.0 - t) * m + t * m.transpose();
  }
  return Hermitian<Scalar>(out);
}

}  // namespace infoconv
