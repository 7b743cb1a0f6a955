#include "infoconv/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "infoconv/infospec.hpp"
#include "infoconv/io.hpp"
#include "infoconv/majorize.hpp"
#include "infoconv/randgen.hpp"

namespace infoconv {

using nlohmann::json;

LemmaNpReport verify_lemma_np(const HermitianOperator& a, std::size_t trials, Rng& rng) {
  if (trials == 0) throw InvalidArgument("verify_lemma_np needs at least one trial");
  LemmaNpReport report;
  report.trials = trials;
  const double bound = trace_plus(a);
  report.worst_slack = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    const auto contraction = random_contraction(a.dimension(), rng);
    const InequalityCheck check{real_trace<std::complex<double>>(a.matrix() * contraction.matrix()),
                                bound};
    report.worst_slack = std::min(report.worst_slack, check.slack());
    if (!check.holds()) {
      ++report.violations;
      if (!report.violating_contraction) report.violating_contraction = contraction.matrix();
    }
  }
  const double scale = std::max(1.0, a.matrix().cwiseAbs().maxCoeff());
  report.attainment = {real_trace<std::complex<double>>(a.matrix() * positive_projector(a)), bound,
                       1e-10 * scale};
  return report;
}

InequalityCheck verify_lemma_bdm(const ComplexMap& map, const HermitianOperator& a) {
  return {trace_plus(apply_tp(map, a)), trace_plus(a)};
}

SandwichReport verify_bd_sandwich(const HermitianOperator& rho, const HermitianOperator& sigma,
                                  std::uint32_t n, double a, double gamma) {
  if (!(gamma > 0.0)) throw InvalidArgument("gamma must be positive");
  const double b = a + gamma;
  const double c = tail_C(rho, sigma, n, a);
  SandwichReport report;
  report.upper = {c, tail_D(rho, sigma, n, a)};
  report.lower = {tail_D(rho, sigma, n, b) - std::exp(static_cast<double>(n) * (a - b)), c};
  return report;
}

ContinuityReport verify_continuity(const HermitianOperator& rho, const HermitianOperator& rho_prime,
                                   const HermitianOperator& sigma, std::uint32_t n, double a) {
  detail::check_same_dimension(rho, rho_prime);
  const double half_distance =
      0.5 * trace_norm(HermitianOperator(rho.matrix() - rho_prime.matrix()));
  const double c = tail_C(rho, sigma, n, a);
  const double c_prime = tail_C(rho_prime, sigma, n, a);
  return {{c, c_prime + half_distance}, {c_prime, c + half_distance}};
}

ProductTailReport verify_product_tails(const Spectrum& a_spectrum, const Spectrum& b_spectrum,
                                       std::uint32_t n, double a) {
  const double nn = static_cast<double>(n);
  auto rate = [nn](double p) { return -std::log(p) / nn; };
  ProductTailReport report;
  double pairs = 0.0;
  for (const Atom& x : a_spectrum.atoms()) {
    for (const Atom& y : b_spectrum.atoms()) {
      if (rate(x.probability) + rate(y.probability) <= a) {
        pairs += x.probability * x.multiplicity * y.probability * y.multiplicity;
      }
    }
  }
  report.check = {pairs, cdf_selfinfo(a_spectrum, n, a)};
  if (a_spectrum.total_dim() * b_spectrum.total_dim() <= 16384.0) {
    const Eigen::VectorXd va = a_spectrum.expand();
    const Eigen::VectorXd vb = b_spectrum.expand();
    double sum = 0.0;
    for (double pa : va) {
      for (double pb : vb) {
        if (rate(pa) + rate(pb) <= a) sum += pa * pb;
      }
    }
    report.expanded_lhs = sum;
  }
  return report;
}

InequalityCheck verify_tail_monotonicity(const HermitianOperator& rho, const HermitianOperator& sigma,
                                         const ComplexMap& map, std::uint32_t n, double a) {
  return {tail_C(apply_tp(map, rho), apply_tp(map, sigma), n, a), tail_C(rho, sigma, n, a)};
}

InequalityCheck verify_projection_dominance(const HermitianOperator& a, const HermitianOperator& b) {
  const Eigen::MatrixXcd proj = positive_projector(HermitianOperator(a.matrix() - b.matrix()));
  return {real_trace<std::complex<double>>(b.matrix() * proj),
          real_trace<std::complex<double>>(a.matrix() * proj)};
}

EqualityCheck verify_projection_split(const HermitianOperator& a, const HermitianOperator& b) {
  const HermitianOperator diff(a.matrix() - b.matrix());
  const Eigen::MatrixXcd proj = positive_projector(diff);
  const double split = real_trace<std::complex<double>>(a.matrix() * proj) -
                       real_trace<std::complex<double>>(b.matrix() * proj);
  return {split, trace_plus(diff)};
}

EqualityCheck verify_traceless_norm(const HermitianOperator& a) {
  const double tr = real_trace<std::complex<double>>(a.matrix());
  const double scale = std::max(1.0, a.matrix().cwiseAbs().maxCoeff());
  if (std::abs(tr) > 1e-9 * scale) throw InvalidArgument("operator is not traceless");
  return {trace_norm(a), 2.0 * trace_plus(a), 1e-10 * scale};
}

namespace {

json map_json(const ComplexMap& map) {
  json j = {{"kind", map.name()}};
  if (const auto* k = std::get_if<ComplexMap::Kraus>(&map.kind())) {
    json ops = json::array();
    for (const auto& op : k->operators) ops.push_back(io::to_json(op));
    j["kraus"] = ops;
  } else if (const auto* s = std::get_if<ComplexMap::Stochastic>(&map.kind())) {
    j["matrix"] = io::to_json(s->matrix);
  } else {
    j["t"] = std::get<ComplexMap::TransposeMix>(map.kind()).t;
  }
  return j;
}

json op_json(const HermitianOperator& a) { return io::to_json(a.matrix()); }

json vector_json(const Eigen::VectorXd& v) { return std::vector<double>(v.begin(), v.end()); }

class Tally {
public:
  explicit Tally(std::string name) { report_.name = std::move(name); }

  template <typename Check>
  void record(const Check& check, const std::function<json()>& describe) {
    ++report_.checks;
    worst_ = std::min(worst_, check.slack());
    if (!check.holds()) fail(describe);
  }

  void record_bool(bool ok, const std::function<json()>& describe) {
    ++report_.checks;
    if (!ok) {
      worst_ = std::min(worst_, -1.0);
      fail(describe);
    }
  }

  void slack(double s) { worst_ = std::min(worst_, s); }
  void instance() { ++report_.instances; }
  json& details() { return report_.details; }

  SuiteReport finish() {
    report_.worst_slack = report_.checks == 0 ? 0.0 : worst_;
    return std::move(report_);
  }

private:
  void fail(const std::function<json()>& describe) {
    ++report_.violations;
    if (report_.violating.size() < 20) report_.violating.push_back(describe());
  }

  SuiteReport report_;
  double worst_ = std::numeric_limits<double>::infinity();
};

Eigen::Index draw_dim(Rng& rng, Eigen::Index max_dim) {
  std::uniform_int_distribution<Eigen::Index> dist(2, std::max<Eigen::Index>(2, max_dim));
  return dist(rng);
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::uint32_t draw_n(Rng& rng) { return std::uniform_int_distribution<std::uint32_t>(1, 4)(rng); }

ComplexMap draw_map(Eigen::Index dim, std::size_t kind, Rng& rng) {
  switch (kind % 3) {
    case 0:
      return random_cptp(dim, std::uniform_int_distribution<Eigen::Index>(1, dim)(rng), rng);
    case 1: return ComplexMap::stochastic(random_stochastic(dim, rng));
    default: return ComplexMap::transpose_mix(uniform(rng, 0.0, 1.0));
  }
}

ComplexMap draw_unital_map(Eigen::Index dim, std::size_t kind, Rng& rng) {
  switch (kind % 3) {
    case 0:
      return random_unital_cptp(dim, std::uniform_int_distribution<Eigen::Index>(1, 4)(rng), rng);
    case 1: return ComplexMap::stochastic(random_doubly_stochastic(dim, rng));
    default: return ComplexMap::transpose_mix(uniform(rng, 0.0, 1.0));
  }
}

HermitianOperator scaled_density(Eigen::Index dim, Rng& rng) {
  const double c = uniform(rng, 0.25, 4.0);
  return HermitianOperator(c * random_density(dim, rng).matrix());
}

using SuiteFn = std::function<void(Tally&, Rng&, std::size_t, const SuiteConfig&)>;

struct SuiteSpec {
  std::string name;
  std::size_t default_trials;
  SuiteFn run;
};

void suite_np(Tally& t, Rng& rng, std::size_t, const SuiteConfig& cfg) {
  const HermitianOperator a = random_hermitian(draw_dim(rng, cfg.max_dim), rng);
  const LemmaNpReport r = verify_lemma_np(a, 4, rng);
  for (std::size_t k = 0; k < r.trials; ++k) {
    t.record_bool(k >= r.violations, [&] {
      return json{{"A", op_json(a)},
                  {"T", r.violating_contraction ? io::to_json(*r.violating_contraction) : json()},
                  {"worst_slack", r.worst_slack}};
    });
  }
  t.slack(r.worst_slack);
  t.record(r.attainment, [&] { return json{{"A", op_json(a)}, {"attainment", r.attainment.lhs}}; });
}

void suite_bdm(Tally& t, Rng& rng, std::size_t i, const SuiteConfig& cfg) {
  const Eigen::Index d = draw_dim(rng, cfg.max_dim);
  const ComplexMap map = draw_map(d, i, rng);
  const HermitianOperator a = random_hermitian(d, rng);
  t.record(verify_lemma_bdm(map, a), [&] { return json{{"map", map_json(map)}, {"A", op_json(a)}}; });
  t.details()["map_families"] = {"cptp", "stochastic", "transpose_mix"};
}

void suite_bd(Tally& t, Rng& rng, std::size_t, const SuiteConfig& cfg) {
  const Eigen::Index d = draw_dim(rng, cfg.max_dim);
  const HermitianOperator rho = random_density(d, rng);
  const HermitianOperator sigma = scaled_density(d, rng);
  const std::uint32_t n = draw_n(rng);
  const double a = uniform(rng, -2.0, 2.0);
  const double gamma = std::uniform_int_distribution<int>(0, 1)(rng) ? 0.5 : 0.1;
  const SandwichReport r = verify_bd_sandwich(rho, sigma, n, a, gamma);
  auto describe = [&] {
    return json{{"rho", op_json(rho)}, {"sigma", op_json(sigma)}, {"n", n}, {"a", a},
                {"gamma", gamma}};
  };
  t.record(r.upper, describe);
  t.record(r.lower, describe);
}

void suite_continuity(Tally& t, Rng& rng, std::size_t, const SuiteConfig& cfg) {
  const Eigen::Index d = draw_dim(rng, cfg.max_dim);
  const HermitianOperator rho = random_density(d, rng);
  const HermitianOperator rho_prime = random_density(d, rng);
  const HermitianOperator sigma = scaled_density(d, rng);
  const std::uint32_t n = draw_n(rng);
  const double a = uniform(rng, -2.0, 2.0);
  const ContinuityReport r = verify_continuity(rho, rho_prime, sigma, n, a);
  auto describe = [&] {
    return json{{"rho", op_json(rho)}, {"rho_prime", op_json(rho_prime)},
                {"sigma", op_json(sigma)}, {"n", n}, {"a", a}};
  };
  t.record(r.forward, describe);
  t.record(r.backward, describe);
}

void suite_product(Tally& t, Rng& rng, std::size_t, const SuiteConfig&) {
  const Spectrum sa = random_spectrum(6, 4, rng);
  const Spectrum sb = random_spectrum(6, 4, rng);
  const std::uint32_t n = draw_n(rng);
  const double a = uniform(rng, 0.0, 3.0);
  const ProductTailReport r = verify_product_tails(sa, sb, n, a);
  auto describe = [&] {
    return json{{"A", io::to_json(sa)}, {"B", io::to_json(sb)}, {"n", n}, {"a", a}};
  };
  t.record(r.check, describe);
  if (r.expanded_lhs) t.record(EqualityCheck{*r.expanded_lhs, r.check.lhs, 1e-12}, describe);
}

void run_monotonicity(Tally& t, const HermitianOperator& rho, const HermitianOperator& sigma,
                      const ComplexMap& map, Rng& rng) {
  const std::uint32_t n = draw_n(rng);
  const double a = uniform(rng, -2.0, 2.0);
  t.record(verify_tail_monotonicity(rho, sigma, map, n, a), [&] {
    return json{{"rho", op_json(rho)}, {"sigma", op_json(sigma)}, {"map", map_json(map)},
                {"n", n}, {"a", a}};
  });
}

void suite_monotonicity(Tally& t, Rng& rng, std::size_t i, const SuiteConfig& cfg) {
  const Eigen::Index d = draw_dim(rng, cfg.max_dim);
  const ComplexMap map = draw_map(d, i, rng);
  const HermitianOperator rho = random_density(d, rng);
  const HermitianOperator sigma = scaled_density(d, rng);
  run_monotonicity(t, rho, sigma, map, rng);
}

void suite_unital(Tally& t, Rng& rng, std::size_t i, const SuiteConfig& cfg) {
  const Eigen::Index d = draw_dim(rng, cfg.max_dim);
  const ComplexMap map = draw_unital_map(d, i, rng);
  const HermitianOperator rho = (i % 3 == 1) ? random_diagonal_density(d, rng)
                                             : random_density(d, rng);
  run_monotonicity(t, rho, HermitianOperator(Eigen::MatrixXcd::Identity(d, d)), map, rng);
  t.details()["map_families"] = {"unital cptp", "doubly stochastic", "transpose_mix"};
}

void suite_identities(Tally& t, Rng& rng, std::size_t, const SuiteConfig& cfg) {
  const Eigen::Index d = draw_dim(rng, cfg.max_dim);
  const HermitianOperator a = random_hermitian(d, rng);
  const HermitianOperator b = random_hermitian(d, rng);
  auto describe = [&] { return json{{"A", op_json(a)}, {"B", op_json(b)}}; };
  t.record(verify_projection_dominance(a, b), describe);
  t.record(verify_projection_split(a, b), describe);
  const std::complex<double> shift = a.matrix().trace() / static_cast<double>(d);
  const HermitianOperator traceless(a.matrix() - shift * Eigen::MatrixXcd::Identity(d, d));
  t.record(verify_traceless_norm(traceless), describe);
}

void suite_kh(Tally& t, Rng& rng, std::size_t, const SuiteConfig&) {
  const auto size = std::uniform_int_distribution<std::uint32_t>(1, 64)(rng);
  const auto codomain = std::uniform_int_distribution<std::uint32_t>(1, size)(rng);
  const Eigen::VectorXd p = random_probability_vector(size, rng);
  std::uniform_int_distribution<std::uint32_t> pick(0, codomain - 1);
  std::vector<std::uint32_t> targets(size);
  for (auto& y : targets) y = pick(rng);
  const DeterministicMap phi(targets, codomain);
  auto describe = [&] { return json{{"p", vector_json(p)}, {"map", io::to_json(phi)}}; };

  const Eigen::VectorXd q = pushforward(p, phi);
  const std::vector<double> pv(p.begin(), p.end());
  t.record_bool(majorizes(Spectrum::from_probabilities(pv), pushforward(Spectrum::from_probabilities(pv), phi)),
                describe);
  const Eigen::Index m = std::max(p.size(), q.size());
  t.record_bool(!first_majorization_violation(sorted_padded(p, m), sorted_padded(q, m)), describe);

  const KhCertificate cert = kh_certificate(p, phi);
  const Eigen::MatrixXd& d = cert.matrix.entries();
  t.record(InequalityCheck{BistochasticMatrix::sum_defect(d), 0.0, 1e-10}, describe);
  t.record(InequalityCheck{-d.minCoeff(), 0.0, 0.0}, describe);
  t.record(InequalityCheck{(d * cert.beta - cert.alpha).cwiseAbs().maxCoeff(), 0.0, 1e-10}, describe);
  Eigen::VectorXd reordered(p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) reordered(k) = p(cert.order[static_cast<std::size_t>(k)]);
  t.record(InequalityCheck{(reordered - cert.alpha).cwiseAbs().maxCoeff(), 0.0, 1e-15}, describe);
}

void suite_transfer(Tally& t, Rng& rng, std::size_t, const SuiteConfig&) {
  const auto size = std::uniform_int_distribution<Eigen::Index>(1, 32)(rng);
  const Eigen::VectorXd q = random_probability_vector(size, rng);
  const Eigen::VectorXd p = random_doubly_stochastic(size, rng) * q;
  auto describe = [&] { return json{{"p", vector_json(p)}, {"q", vector_json(q)}}; };
  const BistochasticMatrix d = transfer_matrix(p, q);
  t.record(InequalityCheck{BistochasticMatrix::sum_defect(d.entries()), 0.0, 1e-10}, describe);
  t.record(InequalityCheck{-d.entries().minCoeff(), 0.0, 0.0}, describe);
  const Eigen::VectorXd residual = d.entries() * sorted_padded(q, size) - sorted_padded(p, size);
  t.record(InequalityCheck{residual.cwiseAbs().maxCoeff(), 0.0, 1e-8}, describe);
}

constexpr std::array<double, 4> kGapEdges{1e-12, 1e-3, 1e-2, 1e-1};

void suite_greedy(Tally& t, Rng& rng, std::size_t i, const SuiteConfig&) {
  const auto domain = static_cast<Eigen::Index>(i % 6 + 1);
  const auto codomain = static_cast<Eigen::Index>((i / 6) % 3 + 1);
  const Eigen::VectorXd pv = random_probability_vector(domain, rng);
  const Eigen::VectorXd qv = random_probability_vector(codomain, rng);
  const Spectrum p = Spectrum::from_probabilities(std::vector<double>(pv.begin(), pv.end()));
  const Spectrum q = Spectrum::from_probabilities(std::vector<double>(qv.begin(), qv.end()));
  auto describe = [&] { return json{{"p", io::to_json(p)}, {"q", io::to_json(q)}}; };

  const MapSynthesisReport greedy = synthesize_map_expanded(p, q);
  const MapSynthesisReport compressed = synthesize_map_compressed(p, q);
  const MapSynthesisReport best = brute_force_optimal(p, q);

  // The optimum can never beat the exhaustive minimum.
  t.record(InequalityCheck{best.achieved_distance, greedy.achieved_distance, 1e-12}, describe);
  t.record(EqualityCheck{greedy.achieved_distance, compressed.achieved_distance, 1e-12}, describe);
  t.record_bool(approx_equal(greedy.pushforward, pushforward(p, *greedy.map), 1e-12), describe);
  t.record_bool(majorizes(p, greedy.pushforward), describe);

  const double gap = greedy.achieved_distance - best.achieved_distance;
  json& hist = t.details()["gap_histogram"];
  if (hist.is_null()) {
    hist = json::object({{"0", 0}, {"(1e-12,1e-3]", 0}, {"(1e-3,1e-2]", 0}, {"(1e-2,1e-1]", 0},
                         {">1e-1", 0}});
  }
  const char* bin = gap <= kGapEdges[0]   ? "0"
                    : gap <= kGapEdges[1] ? "(1e-12,1e-3]"
                    : gap <= kGapEdges[2] ? "(1e-3,1e-2]"
                    : gap <= kGapEdges[3] ? "(1e-2,1e-1]"
                                          : ">1e-1";
  hist[bin] = hist[bin].get<int>() + 1;
  json& max_gap = t.details()["max_gap"];
  if (max_gap.is_null() || gap > max_gap.get<double>()) max_gap = gap;
}

const std::vector<SuiteSpec>& suites() {
  static const std::vector<SuiteSpec> all{
      {"np", 1000, suite_np},
      {"bdm", 1000, suite_bdm},
      {"bd", 1000, suite_bd},
      {"continuity", 1000, suite_continuity},
      {"product", 500, suite_product},
      {"monotonicity", 1000, suite_monotonicity},
      {"unital", 500, suite_unital},
      {"identities", 1000, suite_identities},
      {"kh", 500, suite_kh},
      {"transfer", 500, suite_transfer},
      {"greedy-vs-brute", 360, suite_greedy},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const SuiteSpec& s : suites()) out.push_back(s.name);
    return out;
  }();
  return names;
}

bool is_suite(std::string_view name) {
  return std::ranges::find(suite_names(), name) != suite_names().end();
}

SuiteReport run_suite(std::string_view name, const SuiteConfig& config) {
  const auto it = std::ranges::find_if(suites(), [&](const SuiteSpec& s) { return s.name == name; });
  if (it == suites().end()) throw InvalidArgument("unknown suite '" + std::string(name) + "'");
  const std::size_t trials = config.trials ? config.trials : it->default_trials;
  Tally tally(it->name);
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = instance_rng(config.seed, it->name, i);
    tally.instance();
    it->run(tally, rng, i, config);
  }
  return tally.finish();
}

}  // namespace infoconv
