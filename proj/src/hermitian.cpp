#include "infoconv/hermitian.hpp"

#include <algorithm>
#include <numeric>

#include "infoconv/random.hpp"

namespace infoconv {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Eigen::MatrixXcd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = {re, im};
    }
  }
  return g;
}

// Orthonormal columns from QR with the phase of R's diagonal divided out.
Eigen::MatrixXcd haar_columns(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  const Eigen::MatrixXcd g = gaussian_matrix(rows, cols, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, cols);
  const Eigen::MatrixXcd r = qr.matrixQR();
  for (Eigen::Index k = 0; k < cols; ++k) {
    const std::complex<double> d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

Rng instance_rng(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
  // FNV-1a over the tag keeps streams for different suites apart.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  std::uint64_t state = seed ^ h;
  state += 0x632be59bd9b4e019ULL * (index + 1);
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state))};
  return Rng(seq);
}

HermitianOperator random_hermitian(Eigen::Index dim, Rng& rng) {
  const Eigen::MatrixXcd g = gaussian_matrix(dim, dim, rng);
  return HermitianOperator(0.5 * (g + g.adjoint()));
}

HermitianOperator random_density(Eigen::Index dim, Rng& rng) {
  const Eigen::MatrixXcd g = gaussian_matrix(dim, dim, rng);
  Eigen::MatrixXcd w = g * g.adjoint();
  w /= w.trace().real();
  return HermitianOperator(w);
}

HermitianOperator random_diagonal_density(Eigen::Index dim, Rng& rng) {
  const Eigen::VectorXd p = random_probability_vector(dim, rng);
  return HermitianOperator(Eigen::MatrixXcd(p.cast<std::complex<double>>().asDiagonal()));
}

Eigen::MatrixXcd random_unitary(Eigen::Index dim, Rng& rng) { return haar_columns(dim, dim, rng); }

Contraction<std::complex<double>> random_contraction(Eigen::Index dim, Rng& rng) {
  const Eigen::MatrixXcd u = random_unitary(dim, rng);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Eigen::VectorXd diag(dim);
  for (Eigen::Index i = 0; i < dim; ++i) diag(i) = uniform(rng);
  return Contraction<std::complex<double>>(u * diag.cast<std::complex<double>>().asDiagonal() *
                                           u.adjoint());
}

TPMap<std::complex<double>> random_cptp(Eigen::Index dim, Eigen::Index kraus_count, Rng& rng) {
  const Eigen::MatrixXcd v = haar_columns(dim * kraus_count, dim, rng);
  std::vector<Eigen::MatrixXcd> ops;
  for (Eigen::Index k = 0; k < kraus_count; ++k) ops.push_back(v.middleRows(k * dim, dim));
  return TPMap<std::complex<double>>::kraus(std::move(ops));
}

TPMap<std::complex<double>> random_unital_cptp(Eigen::Index dim, Eigen::Index count, Rng& rng) {
  const Eigen::VectorXd w = random_probability_vector(count, rng);
  std::vector<Eigen::MatrixXcd> ops;
  for (Eigen::Index k = 0; k < count; ++k) ops.push_back(std::sqrt(w(k)) * random_unitary(dim, rng));
  return TPMap<std::complex<double>>::kraus(std::move(ops));
}

Eigen::VectorXd random_probability_vector(Eigen::Index size, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = expo(rng) + 1e-300;
  return v / v.sum();
}

Eigen::MatrixXd random_stochastic(Eigen::Index dim, Rng& rng) {
  Eigen::MatrixXd s(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) s.col(j) = random_probability_vector(dim, rng);
  return s;
}

Eigen::MatrixXd random_doubly_stochastic(Eigen::Index dim, Rng& rng) {
  const Eigen::Index terms = dim + 1;
  const Eigen::VectorXd w = random_probability_vector(terms, rng);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(dim));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  for (Eigen::Index k = 0; k < terms; ++k) {
    std::shuffle(perm.begin(), perm.end(), rng);
    for (Eigen::Index i = 0; i < dim; ++i) d(i, perm[static_cast<std::size_t>(i)]) += w(k);
  }
  return d;
}

Spectrum random_spectrum(int max_atoms, int max_mult, Rng& rng) {
  std::uniform_int_distribution<int> atom_count(1, max_atoms);
  std::uniform_int_distribution<int> mult(1, max_mult);
  const int k = atom_count(rng);
  std::vector<double> weights(static_cast<std::size_t>(k));
  std::vector<double> mults(static_cast<std::size_t>(k));
  std::exponential_distribution<double> expo(1.0);
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    weights[i] = expo(rng) + 1e-6;
    mults[i] = mult(rng);
    total += weights[i] * mults[i];
  }
  std::vector<Atom> atoms;
  for (int i = 0; i < k; ++i) atoms.push_back({weights[i] / total, mults[i]});
  return Spectrum(std::move(atoms));
}

}  // namespace infoconv
