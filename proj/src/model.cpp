#include "infoconv/model.hpp"

#include <cmath>

namespace infoconv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

SequenceModel SequenceModel::iid(Spectrum base) { return SequenceModel(Iid{std::move(base)}); }

SequenceModel SequenceModel::maxent(double rate) {
  if (!std::isfinite(rate) || rate < 0.0) {
    throw InvalidArgument("maxent rate must be finite and non-negative");
  }
  return SequenceModel(MaxEnt{rate});
}

SequenceModel SequenceModel::maxent_explicit(std::function<double(std::uint32_t)> rank) {
  if (!rank) throw InvalidArgument("maxent rank function is empty");
  return SequenceModel(MaxEntExplicit{std::move(rank)});
}

SequenceModel SequenceModel::mixture(std::vector<std::pair<double, SequenceModel>> components) {
  if (components.empty()) throw InvalidArgument("mixture has no components");
  Mixture mix;
  double total = 0.0;
  for (auto& [weight, model] : components) {
    if (!(weight > 0.0) || !std::isfinite(weight)) {
      throw InvalidArgument("mixture weights must be positive");
    }
    total += weight;
    mix.components.push_back({weight, std::make_shared<const SequenceModel>(std::move(model))});
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("mixture weights must sum to 1");
  return SequenceModel(std::move(mix));
}

SequenceModel SequenceModel::explicit_list(std::vector<Spectrum> spectra) {
  if (spectra.empty()) throw InvalidArgument("explicit sequence is empty");
  return SequenceModel(Explicit{std::move(spectra)});
}

Spectrum SequenceModel::generate(std::uint32_t n, const Budgets& budgets) const {
  if (n == 0) throw InvalidArgument("sequence index n must be >= 1");
  return std::visit(
      overloaded{
          [&](const Iid& m) { return iid_spectrum(m.base, n, budgets); },
          [&](const MaxEnt& m) { return maxent_spectrum(maxent_rank(m.rate, n)); },
          [&](const MaxEntExplicit& m) { return maxent_spectrum(m.rank(n)); },
          [&](const Mixture& m) {
            std::vector<Atom> atoms;
            for (const Component& c : m.components) {
              const Spectrum part = c.model->generate(n, budgets);
              for (const Atom& atom : part.atoms()) {
                atoms.push_back({c.weight * atom.probability, atom.multiplicity});
              }
            }
            return Spectrum(std::move(atoms));
          },
          [&](const Explicit& m) {
            if (n > m.spectra.size()) {
              throw InvalidArgument("explicit sequence has only " +
                                    std::to_string(m.spectra.size()) + " elements");
            }
            return m.spectra[n - 1];
          },
      },
      kind_);
}

}  // namespace infoconv
