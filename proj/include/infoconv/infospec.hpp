#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "infoconv/hermitian.hpp"
#include "infoconv/model.hpp"
#include "infoconv/spectrum.hpp"

namespace infoconv {

/// How atoms whose self-information rate equals the threshold are counted.
/// Nonstrict sums atoms with -(1/n) ln p <= a, i.e. Tr rho {rho >= e^{-na}}.
/// Strict sums atoms with -(1/n) ln p < a, i.e. Tr rho {rho > e^{-na}}.
enum class Boundary { nonstrict, strict };

/// F_n(a): mass of atoms whose self-information rate -(1/n) ln p is at most a
/// (below a for Boundary::strict). Infinite thresholds are allowed.
double cdf_selfinfo(const Spectrum& s, std::uint32_t n, double a,
                    Boundary boundary = Boundary::nonstrict);

/// Finite-n inf/sup spectral entropy proxies at error level epsilon.
struct EntropyProxies {
  /// sup{a : F_n(a) <= epsilon}; the largest atom rate at epsilon = 1.
  double underline;
  /// inf{a : F_n(a) >= 1 - epsilon}; the smallest atom rate at epsilon = 1.
  double overline;
};

/// Exact quantiles of the self-information rate, scanned over the sorted atoms.
EntropyProxies entropy_proxies(const Spectrum& s, std::uint32_t n, double epsilon);

struct RateQuery {
  double epsilon;
  /// Strictly increasing.
  std::vector<std::uint32_t> n_grid;
};

struct RatePoint {
  std::uint32_t n;
  double underline;
  double overline;
};

struct RateCurve {
  double epsilon;
  std::vector<RatePoint> points;
};

RateCurve rate_curve(const SequenceModel& model, const RateQuery& query,
                     const Budgets& budgets = {});

struct TailSample {
  double a;
  double mass;
};

struct TailCurve {
  std::uint32_t n;
  std::vector<TailSample> samples;
};

/// F_n sampled at the given thresholds.
TailCurve tail_curve(const Spectrum& s, std::uint32_t n, const std::vector<double>& thresholds,
                     Boundary boundary = Boundary::nonstrict);

/// Tr rho {rho - e^{na} I > 0} for a diagonal rho given by its spectrum; the
/// fast path of tail_D with sigma = I.
inline double tail_D_identity(const Spectrum& s, std::uint32_t n, double a) {
  return cdf_selfinfo(s, n, -a, Boundary::strict);
}

namespace detail {

template <typename Scalar>
void check_same_dimension(const Hermitian<Scalar>& rho, const Hermitian<Scalar>& sigma) {
  if (rho.dimension() != sigma.dimension()) {
    throw InvalidArgument("dimension mismatch: rho is " + std::to_string(rho.dimension()) +
                          ", sigma is " + std::to_string(sigma.dimension()));
  }
}

template <typename Scalar>
Hermitian<Scalar> shifted_difference(const Hermitian<Scalar>& rho, const Hermitian<Scalar>& sigma,
                                     std::uint32_t n, double a) {
  check_same_dimension(rho, sigma);
  const double scale = std::exp(static_cast<double>(n) * a);
  return Hermitian<Scalar>(rho.matrix() - scale * sigma.matrix());
}

}  // namespace detail

/// Tr rho {rho - e^{na} sigma > 0}.
template <typename Scalar>
double tail_D(const Hermitian<Scalar>& rho, const Hermitian<Scalar>& sigma, std::uint32_t n,
              double a) {
  const Matrix<Scalar> proj = positive_projector(detail::shifted_difference(rho, sigma, n, a));
  return std::real((rho.matrix() * proj).trace());
}

/// Tr (rho - e^{na} sigma)_+.
template <typename Scalar>
double tail_C(const Hermitian<Scalar>& rho, const Hermitian<Scalar>& sigma, std::uint32_t n,
              double a) {
  return trace_plus(detail::shifted_difference(rho, sigma, n, a));
}

}  // namespace infoconv
