#include "qbat/lattice.hpp"

#include "qbat/rng.hpp"

namespace qbat {

std::pair<HermitianOperator, BondList> build_chain(const LatticeSpec& spec) {
  const int L = spec.sites;
  if (L < 2) throw std::invalid_argument("build_chain: sites must be >= 2");
  Matrix h = Matrix::Zero(L, L);
  BondList bonds;
  const int nb = (L == 2) ? 1 : L;
  bonds.reserve(nb);
  for (int b = 0; b < nb; ++b) {
    const int i = b;
    const int j = (b + 1) % L;
    h(i, j) += spec.hopping;
    h(j, i) += spec.hopping;
    bonds.push_back({i, j});
  }
  HermitianOperator out{std::move(h)};
  if (spec.disorder != 0.0) out = add_disorder(out, spec.disorder, spec.seed);
  return {std::move(out), std::move(bonds)};
}

std::pair<HermitianOperator, BondList> build_honeycomb(const LatticeSpec& spec) {
  const int lx = spec.cells_x;
  const int ly = spec.cells_y;
  if (lx < 1 || ly < 1)
    throw std::invalid_argument("build_honeycomb: cells_x and cells_y must be >= 1");
  const int n = 2 * lx * ly;
  auto site_a = [ly](int x, int y) { return 2 * (x * ly + y); };
  Matrix h = Matrix::Zero(n, n);
  BondList bonds;
  bonds.reserve(3 * lx * ly);
  auto link = [&](int i, int j) {
    h(i, j) += spec.hopping;
    h(j, i) += spec.hopping;
    bonds.push_back({i, j});
  };
  for (int x = 0; x < lx; ++x) {
    for (int y = 0; y < ly; ++y) {
      const int a = site_a(x, y);
      const int b = a + 1;
      link(a, b);
      link(b, site_a((x + 1) % lx, y));
      link(b, site_a(x, (y + 1) % ly));
    }
  }
  HermitianOperator out{std::move(h)};
  if (spec.disorder != 0.0) out = add_disorder(out, spec.disorder, spec.seed);
  return {std::move(out), std::move(bonds)};
}

HermitianOperator add_disorder(const HermitianOperator& h, double w, std::uint64_t seed) {
  if (w < 0) throw std::invalid_argument("add_disorder: width must be non-negative");
  Matrix m = h.mat;
  if (w == 0.0) return {std::move(m)};
  SplitMix64 rng(seed);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    m(i, i) += Complex(rng.uniform(-w / 2.0, w / 2.0), 0.0);
  return {std::move(m)};
}

SpectralDecomposition eig(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eig: eigensolver failed to converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace qbat
