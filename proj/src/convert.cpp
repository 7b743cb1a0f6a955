#include "infoconv/convert.hpp"

#include <algorithm>
#include <cmath>

namespace infoconv {

ConversionReport direct_convert(const Spectrum& source, const Spectrum& target, std::uint32_t n,
                                const Budgets& budgets) {
  const MapSynthesisReport synthesis = synthesize_map(source, target, budgets);
  const Spectrum& intermediate = synthesis.pushforward;
  const bool nielsen_ok = majorizes(source, intermediate);
  const double f = fidelity(synthesis.codomain);

  std::optional<BistochasticMatrix> certificate;
  if (nielsen_ok && source.total_dim() <= kCertificateMaxDim &&
      intermediate.total_dim() <= kCertificateMaxDim) {
    certificate = transfer_matrix(source.expand(), intermediate.expand());
  }

  return {n,
          source,
          target,
          intermediate,
          nielsen_ok,
          f,
          1.0 - f,
          std::sqrt(std::max(0.0, 1.0 - f * f)),
          synthesis.achieved_distance,
          std::move(certificate)};
}

std::string to_string(Task task) {
  return task == Task::concentration ? "concentration" : "dilution";
}

namespace {

ErrorPoint to_point(const ConversionReport& r) {
  return {r.n, r.trace_distance_upper, r.fidelity, r.nielsen_ok};
}

}  // namespace

RateVerdict concentration_experiment(const SequenceModel& source, double rate,
                                     const std::vector<std::uint32_t>& n_grid,
                                     const Budgets& budgets) {
  RateVerdict verdict{Task::concentration, rate, {}};
  for (std::uint32_t n : n_grid) {
    const Spectrum target = maxent_spectrum(maxent_rank(rate, n));
    verdict.series.push_back(to_point(direct_convert(source.generate(n, budgets), target, n, budgets)));
  }
  return verdict;
}

RateVerdict dilution_experiment(const SequenceModel& target, double rate,
                                const std::vector<std::uint32_t>& n_grid,
                                const Budgets& budgets) {
  RateVerdict verdict{Task::dilution, rate, {}};
  for (std::uint32_t n : n_grid) {
    const Spectrum source = maxent_spectrum(maxent_rank(rate, n));
    verdict.series.push_back(to_point(direct_convert(source, target.generate(n, budgets), n, budgets)));
  }
  return verdict;
}

}  // namespace infoconv
