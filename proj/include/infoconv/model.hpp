#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "infoconv/spectrum.hpp"

namespace infoconv {

/// Generator for the spectrum of the n-th element of a sequence of bipartite
/// pure states.
class SequenceModel {
public:
  struct Iid {
    Spectrum base;
  };
  /// Maximally entangled blocks of rank ceil(e^{n * rate}).
  struct MaxEnt {
    double rate;
  };
  struct MaxEntExplicit {
    std::function<double(std::uint32_t)> rank;
  };
  struct Component {
    double weight;
    std::shared_ptr<const SequenceModel> model;
  };
  /// Block-diagonal direct sum of the component spectra, scaled by weight.
  struct Mixture {
    std::vector<Component> components;
  };
  /// The n-th spectrum is spectra[n - 1].
  struct Explicit {
    std::vector<Spectrum> spectra;
  };

  using Kind = std::variant<Iid, MaxEnt, MaxEntExplicit, Mixture, Explicit>;

  static SequenceModel iid(Spectrum base);
  static SequenceModel maxent(double rate);
  static SequenceModel maxent_explicit(std::function<double(std::uint32_t)> rank);
  /// Weights must be positive and sum to 1 within 1e-12.
  static SequenceModel mixture(std::vector<std::pair<double, SequenceModel>> components);
  static SequenceModel explicit_list(std::vector<Spectrum> spectra);

  const Kind& kind() const noexcept { return kind_; }

  Spectrum generate(std::uint32_t n, const Budgets& budgets = {}) const;

private:
  explicit SequenceModel(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
};

inline Spectrum generate(const SequenceModel& model, std::uint32_t n,
                         const Budgets& budgets = {}) {
  return model.generate(n, budgets);
}

}  // namespace infoconv
