#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "infoconv/spectrum.hpp"

namespace testing {

inline infoconv::Spectrum atoms(std::initializer_list<infoconv::Atom> list) {
  return infoconv::Spectrum(std::vector<infoconv::Atom>(list));
}

inline infoconv::Spectrum probs(std::initializer_list<double> list) {
  return infoconv::Spectrum::from_probabilities(std::vector<double>(list));
}

inline std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.begin(), v.end()}; }

// Binomial pmf for k = 0..n by the ratio recurrence, kept in log space.
inline std::vector<double> binomial_pmf(int n, double p) {
  std::vector<double> log_pmf(static_cast<std::size_t>(n) + 1);
  log_pmf[0] = n * std::log1p(-p);
  for (int k = 0; k < n; ++k) {
    log_pmf[static_cast<std::size_t>(k) + 1] =
        log_pmf[static_cast<std::size_t>(k)] + std::log(static_cast<double>(n - k) / (k + 1)) +
        std::log(p / (1.0 - p));
  }
  std::vector<double> pmf;
  for (double l : log_pmf) pmf.push_back(std::exp(l));
  return pmf;
}

}  // namespace testing
