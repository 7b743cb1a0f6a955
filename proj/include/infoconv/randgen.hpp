#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "infoconv/majorize.hpp"
#include "infoconv/model.hpp"
#include "infoconv/spectrum.hpp"

namespace infoconv {

/// A run of consecutive codomain labels sharing the same target and achieved mass.
struct CodomainGroup {
  /// q(y) for each label of the run.
  double target;
  /// q~(y) = p(phi^{-1}(y)) for each label of the run.
  double assigned;
  double count;
};

struct MapSynthesisReport {
  /// Present when the expanded path ran; labels follow descending source and
  /// target order.
  std::optional<DeterministicMap> map;
  /// Un-halved variational distance sum_y |q(y) - q~(y)|.
  double achieved_distance;
  Spectrum target;
  Spectrum pushforward;
  /// Per-label view of target and pushforward, ordered by label.
  std::vector<CodomainGroup> codomain;
};

/// sum_y |q(y) - q~(y)| recomputed from the codomain groups.
double variational_distance(const std::vector<CodomainGroup>& codomain);

/// sum_y sqrt(q(y) q~(y)) over matching labels.
double fidelity(const std::vector<CodomainGroup>& codomain);

/// Greedy largest-deficit synthesis on expanded vectors: source entries are
/// taken in descending order and each goes to the label with the largest
/// remaining deficit q(y) - assigned(y), lowest label on ties.
MapSynthesisReport synthesize_map_expanded(const Spectrum& p, const Spectrum& q,
                                           const Budgets& budgets = {});

/// The same greedy rule run on compressed spectra: each multiplicity run of the
/// source is water-filled over groups of interchangeable labels, so the cost
/// depends on the number of atoms rather than the dimension.
MapSynthesisReport synthesize_map_compressed(const Spectrum& p, const Spectrum& q,
                                             const Budgets& budgets = {});

/// Expanded path when total_dim(p) * total_dim(q) fits budgets.max_expanded_dim,
/// compressed path otherwise.
MapSynthesisReport synthesize_map(const Spectrum& p, const Spectrum& q,
                                  const Budgets& budgets = {});

/// Exhaustive minimum of the variational distance over all |Y|^|X| maps.
/// The first minimizer in lexicographic order is returned.
MapSynthesisReport brute_force_optimal(const Spectrum& p, const Spectrum& q,
                                       const Budgets& budgets = {});

struct DistancePoint {
  std::uint32_t n;
  double distance;
};

std::vector<DistancePoint> convergence_experiment(const SequenceModel& source,
                                                  const SequenceModel& target,
                                                  const std::vector<std::uint32_t>& n_grid,
                                                  const Budgets& budgets = {});

}  // namespace infoconv
