#include <doctest.h>

#include <algorithm>
#include <functional>

#include "infoconv/majorize.hpp"
#include "infoconv/random.hpp"
#include "support.hpp"

using namespace infoconv;
using testing::atoms;
using testing::probs;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

// Textbook definition on expanded vectors.
bool majorized_expanded(std::vector<double> p, std::vector<double> q) {
  const std::size_t m = std::max(p.size(), q.size());
  p.resize(m, 0.0);
  q.resize(m, 0.0);
  std::sort(p.begin(), p.end(), std::greater<>());
  std::sort(q.begin(), q.end(), std::greater<>());
  double sp = 0.0, sq = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    sp += p[k];
    sq += q[k];
    if (sp > sq + 1e-10) return false;
  }
  return true;
}

// Spectrum with total dimension at most 12 whose probabilities often repeat.
Spectrum small_spectrum(Rng& rng) {
  const int dim = std::uniform_int_distribution<int>(1, 12)(rng);
  const int levels = std::uniform_int_distribution<int>(1, 4)(rng);
  std::vector<double> weights;
  std::uniform_int_distribution<int> level(1, levels);
  for (int i = 0; i < dim; ++i) weights.push_back(level(rng));
  double total = 0.0;
  for (double w : weights) total += w;
  for (double& w : weights) w /= total;
  return Spectrum::from_probabilities(weights);
}

}  // namespace

TEST_CASE("majorization examples") {
  CHECK(majorizes(atoms({{0.5, 2}}), atoms({{1.0, 1}})));
  CHECK_FALSE(majorizes(probs({0.6, 0.4}), atoms({{0.5, 2}})));
  CHECK(majorizes(probs({0.4, 0.35, 0.25}), probs({0.5, 0.3, 0.2})));
  CHECK_FALSE(majorizes(probs({0.5, 0.3, 0.2}), probs({0.4, 0.35, 0.25})));
  CHECK(majorizes(atoms({{0.125, 8}}), iid_spectrum(probs({0.9, 0.1}), 3)));
}

TEST_CASE("compressed majorization agrees with the expanded definition") {
  int agreements = 0;
  for (std::uint64_t i = 0; i < 400; ++i) {
    Rng rng = instance_rng(13, "majorize", i);
    const Spectrum p = small_spectrum(rng);
    const Spectrum q = small_spectrum(rng);
    const bool expected = majorized_expanded(testing::to_std(p.expand()), testing::to_std(q.expand()));
    CHECK(majorizes(p, q) == expected);
    const Eigen::Index m = std::max(p.expand().size(), q.expand().size());
    CHECK(first_majorization_violation(sorted_padded(p.expand(), m), sorted_padded(q.expand(), m))
              .has_value() == !expected);
    agreements += expected;
  }
  CHECK(agreements > 20);  // both outcomes are exercised
}

TEST_CASE("majorization is reflexive and antisymmetric up to rearrangement") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng = instance_rng(13, "antisymmetric", i);
    const Spectrum p = small_spectrum(rng);
    const Spectrum q = small_spectrum(rng);
    CHECK(majorizes(p, p));
    if (majorizes(p, q) && majorizes(q, p)) {
      const Eigen::Index m = std::max(p.expand().size(), q.expand().size());
      CHECK((sorted_padded(p.expand(), m) - sorted_padded(q.expand(), m)).cwiseAbs().maxCoeff() <=
            1e-10);
    }
  }
}

TEST_CASE("first violated prefix") {
  const auto k = first_majorization_violation(vec({0.6, 0.4}), vec({0.5, 0.5}));
  REQUIRE(k.has_value());
  CHECK(*k == 1);
  CHECK_FALSE(first_majorization_violation(vec({0.5, 0.5}), vec({0.6, 0.4})).has_value());
}

TEST_CASE("deterministic maps") {
  const DeterministicMap id = DeterministicMap::identity(3);
  CHECK(id(2) == 2);
  CHECK(id.codomain_size() == 3);
  CHECK_THROWS_AS(DeterministicMap({0, 3}, 3), InvalidArgument);
  CHECK_THROWS_AS(DeterministicMap({}, 3), InvalidArgument);
  CHECK_THROWS_AS(DeterministicMap({0}, 0), InvalidArgument);
}

TEST_CASE("pushforward") {
  const DeterministicMap constant({0, 0, 0}, 1);
  CHECK(approx_equal(pushforward(probs({0.3, 0.3, 0.4}), constant), Spectrum(), 1e-12));

  const DeterministicMap pairs({0, 0, 1, 1}, 2);
  CHECK(approx_equal(pushforward(atoms({{0.25, 4}}), pairs), atoms({{0.5, 2}}), 1e-12));

  const Spectrum p = probs({0.5, 0.3, 0.2});
  CHECK(approx_equal(pushforward(p, DeterministicMap::identity(3)), p, 1e-15));

  const Eigen::VectorXd v = pushforward(vec({0.5, 0.3, 0.2}), DeterministicMap({2, 0, 2}, 4));
  CHECK(v(0) == doctest::Approx(0.3));
  CHECK(v(1) == 0.0);
  CHECK(v(2) == doctest::Approx(0.7));
  CHECK(v(3) == 0.0);

  CHECK_THROWS_AS(pushforward(p, pairs), InvalidArgument);
}

TEST_CASE("bistochastic validation") {
  CHECK_NOTHROW(BistochasticMatrix(Eigen::MatrixXd::Identity(3, 3)));
  Eigen::MatrixXd bad(2, 2);
  bad << 0.5, 0.5, 0.4, 0.6;
  CHECK_THROWS_AS(BistochasticMatrix{bad}, InvalidArgument);
  bad << 1.2, -0.2, -0.2, 1.2;
  CHECK_THROWS_AS(BistochasticMatrix{bad}, InvalidArgument);
  CHECK_THROWS_AS(BistochasticMatrix(Eigen::MatrixXd(2, 3)), InvalidArgument);
}

TEST_CASE("pushforward certificate examples") {
  const KhCertificate id = kh_certificate(vec({0.5, 0.3, 0.2}), DeterministicMap::identity(3));
  CHECK(id.matrix.entries().isApprox(Eigen::MatrixXd::Identity(3, 3)));

  const KhCertificate two = kh_certificate(vec({0.3, 0.7}), DeterministicMap({0, 0}, 1));
  Eigen::MatrixXd expected(2, 2);
  expected << 0.3, 0.7, 0.7, 0.3;
  CHECK((two.matrix.entries() - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((two.matrix.entries() * vec({1.0, 0.0}) - vec({0.3, 0.7})).cwiseAbs().maxCoeff() < 1e-15);

  // A zero-mass fiber contributes an identity block.
  const KhCertificate zero = kh_certificate(vec({0.5, 0.5, 0.0}), DeterministicMap({0, 0, 1}, 2));
  CHECK(zero.matrix.entries()(2, 2) == 1.0);
  CHECK((zero.matrix.entries() * zero.beta - zero.alpha).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("pushforward certificates reproduce the source") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng = instance_rng(13, "kh", i);
    const auto size = std::uniform_int_distribution<std::uint32_t>(1, 40)(rng);
    const auto codomain = std::uniform_int_distribution<std::uint32_t>(1, size)(rng);
    const Eigen::VectorXd p = random_probability_vector(size, rng);
    std::vector<std::uint32_t> targets(size);
    for (auto& t : targets) t = std::uniform_int_distribution<std::uint32_t>(0, codomain - 1)(rng);
    const DeterministicMap phi(targets, codomain);

    const KhCertificate cert = kh_certificate(p, phi);
    const Eigen::MatrixXd& d = cert.matrix.entries();
    CHECK(BistochasticMatrix::sum_defect(d) <= 1e-10);
    CHECK(d.minCoeff() >= 0.0);
    CHECK((d * cert.beta - cert.alpha).cwiseAbs().maxCoeff() <= 1e-10);
    // alpha is a rearrangement of p and beta a rearrangement of the pushforward.
    Eigen::VectorXd sorted_alpha = sorted_padded(cert.alpha, size);
    CHECK((sorted_alpha - sorted_padded(p, size)).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((sorted_padded(cert.beta, size) - sorted_padded(pushforward(p, phi), size))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
    const std::vector<double> pv = testing::to_std(p);
    CHECK(majorizes(Spectrum::from_probabilities(pv), pushforward(Spectrum::from_probabilities(pv), phi)));
  }
}

TEST_CASE("transfer matrix examples") {
  const BistochasticMatrix same = transfer_matrix(vec({0.5, 0.3, 0.2}), vec({0.5, 0.3, 0.2}));
  CHECK(same.entries().isApprox(Eigen::MatrixXd::Identity(3, 3)));

  const BistochasticMatrix mix = transfer_matrix(vec({0.5, 0.5}), vec({1.0, 0.0}));
  CHECK((mix.entries().array() - 0.5).abs().maxCoeff() < 1e-15);

  const BistochasticMatrix d = transfer_matrix(vec({0.4, 0.35, 0.25}), vec({0.5, 0.3, 0.2}));
  CHECK(BistochasticMatrix::sum_defect(d.entries()) <= 1e-10);
  CHECK((d.entries() * vec({0.5, 0.3, 0.2}) - vec({0.4, 0.35, 0.25})).cwiseAbs().maxCoeff() <= 1e-8);

  // Padding: p has more support than q.
  const BistochasticMatrix pad = transfer_matrix(vec({0.25, 0.25, 0.25, 0.25}), vec({0.6, 0.4}));
  CHECK(pad.size() == 4);
  CHECK((pad.entries() * vec({0.6, 0.4, 0.0, 0.0}) - vec({0.25, 0.25, 0.25, 0.25}))
            .cwiseAbs()
            .maxCoeff() <= 1e-8);

  const BistochasticMatrix spectra = transfer_matrix(atoms({{0.125, 8}}), iid_spectrum(probs({0.9, 0.1}), 3));
  CHECK(spectra.size() == 8);
}

TEST_CASE("transfer matrix rejects non-majorized pairs") {
  try {
    transfer_matrix(vec({0.5, 0.3, 0.2}), vec({0.4, 0.35, 0.25}));
    FAIL("expected rejection");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("prefix 1") != std::string::npos);
  }
}

TEST_CASE("transfer matrix contract on random pairs") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng = instance_rng(13, "transfer", i);
    const auto size = std::uniform_int_distribution<Eigen::Index>(1, 32)(rng);
    const Eigen::VectorXd q = random_probability_vector(size, rng);
    const Eigen::VectorXd p = random_doubly_stochastic(size, rng) * q;
    const BistochasticMatrix d = transfer_matrix(p, q);
    CHECK(BistochasticMatrix::sum_defect(d.entries()) <= 1e-10);
    CHECK(d.entries().minCoeff() >= -1e-12);
    CHECK((d.entries() * sorted_padded(q, size) - sorted_padded(p, size)).cwiseAbs().maxCoeff() <=
          1e-8);
  }
}
