#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "infoconv/majorize.hpp"
#include "infoconv/model.hpp"
#include "infoconv/randgen.hpp"
#include "infoconv/spectrum.hpp"

namespace infoconv {

/// Outcome of the direct conversion pipeline at one blocklength: synthesize a
/// map, form the intermediate state, certify it with Nielsen's criterion and
/// measure how close it is to the target.
struct ConversionReport {
  std::uint32_t n;
  Spectrum source;
  Spectrum target;
  /// Spectrum of the intermediate state q~.
  Spectrum intermediate;
  bool nielsen_ok;
  /// sum_y sqrt(q~(y) q(y)) over matching Schmidt labels.
  double fidelity;
  /// Fuchs-van de Graaf interval for the trace distance: [1 - F, sqrt(1 - F^2)].
  double trace_distance_lower;
  double trace_distance_upper;
  /// sum_y |q(y) - q~(y)| achieved by the synthesized map.
  double variational_distance;
  /// Doubly stochastic D with D q~ = p (sorted), attached for small instances.
  std::optional<BistochasticMatrix> certificate;
};

/// Certificates are attached only up to this expanded dimension.
inline constexpr double kCertificateMaxDim = 256.0;

ConversionReport direct_convert(const Spectrum& source, const Spectrum& target, std::uint32_t n,
                                const Budgets& budgets = {});

enum class Task { concentration, dilution };

std::string to_string(Task task);

struct ErrorPoint {
  std::uint32_t n;
  /// trace_distance_upper of the conversion at n.
  double error;
  double fidelity;
  bool nielsen_ok;
};

struct RateVerdict {
  Task task;
  /// Nats per copy.
  double rate;
  std::vector<ErrorPoint> series;
};

/// Converts generate(source, n) into a maximally entangled state of rank
/// ceil(e^{n R}) for each n of the grid.
RateVerdict concentration_experiment(const SequenceModel& source, double rate,
                                     const std::vector<std::uint32_t>& n_grid,
                                     const Budgets& budgets = {});

/// Converts a maximally entangled state of rank ceil(e^{n R}) into
/// generate(target, n) for each n of the grid.
RateVerdict dilution_experiment(const SequenceModel& target, double rate,
                                const std::vector<std::uint32_t>& n_grid,
                                const Budgets& budgets = {});

}  // namespace infoconv
