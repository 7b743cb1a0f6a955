#include "infoconv/randgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace infoconv {

namespace {

// Deficits closer than this fraction of the current item mass are ties.
constexpr double kTieFraction = 1e-9;

std::vector<CodomainGroup> merge_runs(std::vector<CodomainGroup> labels) {
  std::vector<CodomainGroup> out;
  for (const CodomainGroup& g : labels) {
    if (!out.empty() && out.back().target == g.target && out.back().assigned == g.assigned) {
      out.back().count += g.count;
    } else {
      out.push_back(g);
    }
  }
  return out;
}

Spectrum pushforward_spectrum(const std::vector<CodomainGroup>& codomain) {
  std::vector<Atom> atoms;
  for (const CodomainGroup& g : codomain) {
    if (g.assigned > 0.0) atoms.push_back({g.assigned, g.count});
  }
  return Spectrum(std::move(atoms));
}

// Label groups tracked by the compressed greedy.
struct Bin {
  double target;
  double assigned;
  double deficit;
  double count;
  double first_label;
};

// Sort by deficit (descending); deficits within `tie` of a cluster head are
// equal and ordered by label.
void order_bins(std::vector<Bin>& bins, double tie) {
  std::sort(bins.begin(), bins.end(), [](const Bin& a, const Bin& b) {
    if (a.deficit != b.deficit) return a.deficit > b.deficit;
    return a.first_label < b.first_label;
  });
  std::size_t i = 0;
  while (i < bins.size()) {
    std::size_t j = i + 1;
    while (j < bins.size() && bins[i].deficit - bins[j].deficit <= tie) ++j;
    if (j - i > 1) {
      std::sort(bins.begin() + static_cast<std::ptrdiff_t>(i),
                bins.begin() + static_cast<std::ptrdiff_t>(j),
                [](const Bin& a, const Bin& b) { return a.first_label < b.first_label; });
    }
    i = j;
  }
}

// Bins with the same target and (numerically) the same assignment are
// interchangeable; fold them together.
void merge_bins(std::vector<Bin>& bins) {
  std::sort(bins.begin(), bins.end(), [](const Bin& a, const Bin& b) {
    if (a.target != b.target) return a.target > b.target;
    return a.assigned < b.assigned;
  });
  std::vector<Bin> out;
  for (const Bin& b : bins) {
    if (!out.empty()) {
      Bin& last = out.back();
      const double scale = std::max(std::abs(last.assigned), std::abs(b.assigned));
      if (last.target == b.target && std::abs(last.assigned - b.assigned) <= 1e-13 * scale) {
        const double total = last.count + b.count;
        last.assigned = (last.assigned * last.count + b.assigned * b.count) / total;
        last.deficit = last.target - last.assigned;
        last.count = total;
        last.first_label = std::min(last.first_label, b.first_label);
        continue;
      }
    }
    out.push_back(b);
  }
  bins = std::move(out);
}

void check_atom_budget(const Spectrum& p, const Spectrum& q, const Budgets& budgets) {
  const double atoms = static_cast<double>(p.size()) * static_cast<double>(q.size());
  if (atoms > budgets.max_type_classes * budgets.max_type_classes) {
    throw BudgetExceeded("max_type_classes", atoms, budgets.max_type_classes);
  }
}

}  // namespace

double variational_distance(const std::vector<CodomainGroup>& codomain) {
  double d = 0.0;
  for (const CodomainGroup& g : codomain) d += g.count * std::abs(g.target - g.assigned);
  return d;
}

double fidelity(const std::vector<CodomainGroup>& codomain) {
  double f = 0.0;
  for (const CodomainGroup& g : codomain) f += g.count * std::sqrt(g.target * g.assigned);
  return std::min(f, 1.0);
}

MapSynthesisReport synthesize_map_expanded(const Spectrum& p, const Spectrum& q,
                                           const Budgets& budgets) {
  const double work = p.total_dim() * q.total_dim();
  if (work > budgets.max_expanded_dim) {
    throw BudgetExceeded("max_expanded_dim", work, budgets.max_expanded_dim);
  }
  const Eigen::VectorXd source = p.expand(budgets.max_expanded_dim);
  const Eigen::VectorXd target = q.expand(budgets.max_expanded_dim);
  Eigen::VectorXd deficit = target;
  std::vector<std::uint32_t> targets(static_cast<std::size_t>(source.size()));

  for (Eigen::Index x = 0; x < source.size(); ++x) {
    const double tie = kTieFraction * source(x);
    Eigen::Index best = 0;
    for (Eigen::Index y = 1; y < deficit.size(); ++y) {
      if (deficit(y) > deficit(best) + tie) best = y;
    }
    targets[static_cast<std::size_t>(x)] = static_cast<std::uint32_t>(best);
    deficit(best) -= source(x);
  }

  DeterministicMap map(std::move(targets), static_cast<std::uint32_t>(target.size()));
  const Eigen::VectorXd assigned = pushforward(source, map);
  std::vector<CodomainGroup> labels;
  for (Eigen::Index y = 0; y < target.size(); ++y) labels.push_back({target(y), assigned(y), 1.0});
  auto codomain = merge_runs(std::move(labels));
  const double distance = variational_distance(codomain);
  return {std::move(map), distance, q, pushforward_spectrum(codomain), std::move(codomain)};
}

MapSynthesisReport synthesize_map_compressed(const Spectrum& p, const Spectrum& q,
                                             const Budgets& budgets) {
  check_atom_budget(p, q, budgets);
  std::vector<Bin> bins;
  double label = 0.0;
  for (const Atom& a : q.atoms()) {
    bins.push_back({a.probability, 0.0, a.probability, a.multiplicity, label});
    label += a.multiplicity;
  }

  for (const Atom& item : p.atoms()) {
    const double mass = item.probability;
    const double tie = kTieFraction * mass;
    double remaining = item.multiplicity;
    std::size_t iterations = 0;

    while (remaining >= 0.5) {
      order_bins(bins, tie);
      const double top = bins.front().deficit;

      // Window: bins within one item of the top. Every window bin receives one
      // item before any receives a second, so whole rounds can be applied at once.
      std::size_t window = 0;
      double window_count = 0.0;
      // Bins level with the top stay in even when the item is below the
      // resolution of the deficits.
      const double threshold = top - mass + tie;
      while (window < bins.size() &&
             (bins[window].deficit > threshold || bins[window].deficit == top)) {
        window_count += bins[window].count;
        ++window;
      }

      double full_rounds = std::floor(remaining / window_count);
      // The quotient can round up to the next integer; taking that many rounds
      // would overdraw the run and lose the leftover items.
      if (full_rounds >= 1.0 && full_rounds < 0x1p53 && full_rounds * window_count > remaining) {
        full_rounds -= 1.0;
      }
      if (full_rounds < 1.0) {
        // Partial round: the first `remaining` labels in window order get one item.
        double left = std::round(remaining);
        std::vector<Bin> split;
        for (std::size_t i = 0; i < window && left > 0.0; ++i) {
          Bin& b = bins[i];
          const double take = std::min(left, b.count);
          if (take < b.count) {
            Bin rest = b;
            rest.count = b.count - take;
            rest.first_label = b.first_label + take;
            split.push_back(rest);
            b.count = take;
          }
          b.assigned += mass;
          b.deficit -= mass;
          left -= take;
        }
        bins.insert(bins.end(), split.begin(), split.end());
        remaining = 0.0;
      } else {
        // Rounds until the next bin outside the window comes within one item of the top.
        double allowed = std::numeric_limits<double>::infinity();
        if (window < bins.size()) {
          allowed = std::max(1.0, std::floor((top - bins[window].deficit + tie) / mass));
        }
        // Past a generous iteration count the remaining steps are below the
        // resolution of the deficits; finish the run in one go.
        if (++iterations > 4 * (bins.size() + 4)) allowed = full_rounds;
        const double rounds = std::min(allowed, full_rounds);
        for (std::size_t i = 0; i < window; ++i) {
          bins[i].assigned += rounds * mass;
          bins[i].deficit -= rounds * mass;
        }
        remaining -= rounds * window_count;
      }
      merge_bins(bins);
    }
  }

  std::sort(bins.begin(), bins.end(),
            [](const Bin& a, const Bin& b) { return a.first_label < b.first_label; });
  std::vector<CodomainGroup> labels;
  for (const Bin& b : bins) labels.push_back({b.target, b.assigned, b.count});
  auto codomain = merge_runs(std::move(labels));
  const double distance = variational_distance(codomain);
  return {std::nullopt, distance, q, pushforward_spectrum(codomain), std::move(codomain)};
}

MapSynthesisReport synthesize_map(const Spectrum& p, const Spectrum& q, const Budgets& budgets) {
  if (p.total_dim() * q.total_dim() <= budgets.max_expanded_dim) {
    return synthesize_map_expanded(p, q, budgets);
  }
  return synthesize_map_compressed(p, q, budgets);
}

MapSynthesisReport brute_force_optimal(const Spectrum& p, const Spectrum& q,
                                       const Budgets& budgets) {
  const double maps = std::pow(q.total_dim(), p.total_dim());
  if (maps > budgets.brute_force_cap) {
    throw BudgetExceeded("brute_force_cap", maps, budgets.brute_force_cap);
  }
  const Eigen::VectorXd source = p.expand();
  const Eigen::VectorXd target = q.expand();
  const auto nx = static_cast<std::size_t>(source.size());
  const auto ny = static_cast<std::uint32_t>(target.size());

  std::vector<std::uint32_t> current(nx, 0);
  std::vector<std::uint32_t> best = current;
  double best_distance = std::numeric_limits<double>::infinity();
  Eigen::VectorXd assigned(target.size());
  while (true) {
    assigned.setZero();
    for (std::size_t x = 0; x < nx; ++x) assigned(current[x]) += source(static_cast<Eigen::Index>(x));
    const double d = (target - assigned).cwiseAbs().sum();
    if (d < best_distance - 1e-15) {
      best_distance = d;
      best = current;
    }
    // Odometer increment, last domain index fastest.
    bool wrapped = true;
    for (std::size_t pos = nx; pos-- > 0;) {
      if (++current[pos] < ny) {
        wrapped = false;
        break;
      }
      current[pos] = 0;
    }
    if (wrapped) break;
  }

  DeterministicMap map(std::move(best), ny);
  const Eigen::VectorXd pushed = pushforward(source, map);
  std::vector<CodomainGroup> labels;
  for (Eigen::Index y = 0; y < target.size(); ++y) labels.push_back({target(y), pushed(y), 1.0});
  auto codomain = merge_runs(std::move(labels));
  const double distance = variational_distance(codomain);
  return {std::move(map), distance, q, pushforward_spectrum(codomain), std::move(codomain)};
}

std::vector<DistancePoint> convergence_experiment(const SequenceModel& source,
                                                  const SequenceModel& target,
                                                  const std::vector<std::uint32_t>& n_grid,
                                                  const Budgets& budgets) {
  std::vector<DistancePoint> out;
  for (std::uint32_t n : n_grid) {
    const MapSynthesisReport r =
        synthesize_map(source.generate(n, budgets), target.generate(n, budgets), budgets);
    out.push_back({n, r.achieved_distance});
  }
  return out;
}

}  // namespace infoconv
