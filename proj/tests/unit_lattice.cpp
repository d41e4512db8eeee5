#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "qbat/lattice.hpp"
#include "qbat/rng.hpp"

using namespace qbat;

TEST_CASE("two-site chain carries a single bond") {
  auto [h, bonds] = build_chain({.kind = LatticeKind::chain, .sites = 2, .hopping = 0.7});
  REQUIRE(bonds.size() == 1);
  CHECK(bonds[0].i == 0);
  CHECK(bonds[0].j == 1);
  CHECK(h.mat(0, 1) == Complex(0.7));
  CHECK(h.mat(1, 0) == Complex(0.7));
  CHECK(h.mat(0, 0) == Complex(0.0));
}

TEST_CASE("periodic chain spectrum is the tight-binding band") {
  const int L = 8;
  auto [h, bonds] = build_chain({.kind = LatticeKind::chain, .sites = L});
  REQUIRE(bonds.size() == static_cast<std::size_t>(L));
  CHECK(is_hermitian(h.mat));
  const SpectralDecomposition spec = eig(h);
  std::multiset<int> expected, got;
  for (int m = 0; m < L; ++m) {
    expected.insert(static_cast<int>(std::lround(2e6 * std::cos(2 * M_PI * m / L))));
    got.insert(static_cast<int>(std::lround(1e6 * spec.energies(m))));
  }
  CHECK(expected == got);
  for (int m = 0; m + 1 < L; ++m) CHECK(spec.energies(m) <= spec.energies(m + 1));
}

TEST_CASE("eigendecomposition is orthonormal and reconstructs the operator") {
  auto [h, bonds] = build_chain({.sites = 6, .hopping = 1.3});
  const SpectralDecomposition spec = eig(h);
  const Matrix eye = spec.states.adjoint() * spec.states;
  CHECK((eye - Matrix::Identity(6, 6)).norm() < 1e-12);
  const Matrix back = spec.states * spec.energies.asDiagonal() * spec.states.adjoint();
  CHECK((back - h.mat).norm() < 1e-12);
}

TEST_CASE("honeycomb lattice has 3 bonds per cell and a symmetric band") {
  LatticeSpec spec{.kind = LatticeKind::honeycomb, .cells_x = 4, .cells_y = 4};
  auto [h, bonds] = build_honeycomb(spec);
  REQUIRE(h.dim() == 32);
  REQUIRE(bonds.size() == 48);
  CHECK(is_hermitian(h.mat));
  for (const Bond& b : bonds) {
    CHECK(b.i != b.j);
    CHECK(h.mat(b.i, b.j) != Complex(0.0));
  }
  // Bipartite lattice: the spectrum is symmetric about zero and peaks at 3t.
  const SpectralDecomposition sd = eig(h);
  for (int m = 0; m < 32; ++m)
    CHECK(std::abs(sd.energies(m) + sd.energies(31 - m)) < 1e-12);
  CHECK(sd.energies(31) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("honeycomb coordination is three per site") {
  auto [h, bonds] = build_honeycomb({.kind = LatticeKind::honeycomb, .cells_x = 3, .cells_y = 2});
  std::vector<int> degree(h.dim(), 0);
  for (const Bond& b : bonds) {
    ++degree[b.i];
    ++degree[b.j];
  }
  for (int d : degree) CHECK(d == 3);
}

TEST_CASE("disorder shifts only the diagonal and is seed-deterministic") {
  auto [h, bonds] = build_chain({.sites = 12});
  const HermitianOperator d1 = add_disorder(h, 0.5, 42);
  const HermitianOperator d2 = add_disorder(h, 0.5, 42);
  const HermitianOperator d3 = add_disorder(h, 0.5, 43);
  CHECK((d1.mat - d2.mat).norm() == 0.0);
  CHECK((d1.mat - d3.mat).norm() > 0.0);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      if (i == j) {
        const double shift = (d1.mat(i, i) - h.mat(i, i)).real();
        CHECK(shift >= -0.25);
        CHECK(shift < 0.25);
        CHECK(d1.mat(i, i).imag() == 0.0);
      } else {
        CHECK(d1.mat(i, j) == h.mat(i, j));
      }
    }
  CHECK((add_disorder(h, 0.0, 7).mat - h.mat).norm() == 0.0);
}

TEST_CASE("lattice validation rejects bad shapes") {
  CHECK_THROWS_AS(build_chain({.sites = 1}), std::invalid_argument);
  CHECK_THROWS_AS(build_honeycomb({.kind = LatticeKind::honeycomb, .cells_x = 0, .cells_y = 2}),
                  std::invalid_argument);
  auto [h, bonds] = build_chain({.sites = 4});
  CHECK_THROWS_AS(add_disorder(h, -0.1, 0), std::invalid_argument);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = Complex(0.0, 1.0);
  bad(1, 0) = Complex(0.0, 1.0);  // anti-Hermitian off-diagonal pair
  CHECK_THROWS_AS(HermitianOperator::from(bad), std::invalid_argument);
}

TEST_CASE("splittable rng streams are deterministic and decorrelated") {
  SplitMix64 a(123), b(123);
  for (int k = 0; k < 8; ++k) CHECK(a.next() == b.next());
  SplitMix64 base(9);
  CHECK(base.split(0).next() != base.split(1).next());
  const std::uint64_t before = base.split(4).next();
  base.next();  // advancing the parent must not disturb derived streams addressed from a copy
  CHECK(SplitMix64(9).split(4).next() == before);
  SplitMix64 u(77);
  for (int k = 0; k < 1000; ++k) {
    const double x = u.uniform01();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 0, 1));
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 1, 0));
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
}

TEST_CASE("vectorization follows the column-stacking identity") {
  SplitMix64 rng(5);
  const Eigen::Index n = 3;
  Matrix a(n, n), x(n, n), b(n, n);
  for (Matrix* m : {&a, &x, &b})
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        (*m)(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  // vec(A X B) = (B^T kron A) vec(X), built entry by entry
  Matrix kron(n * n, n * n);
  const Matrix bt = b.transpose();
  for (Eigen::Index bi = 0; bi < n; ++bi)
    for (Eigen::Index bj = 0; bj < n; ++bj)
      kron.block(bi * n, bj * n, n, n) = bt(bi, bj) * a;
  CHECK((vectorize(a * x * b) - kron * vectorize(x)).norm() < 1e-12);
  CHECK((unvectorize(vectorize(x), n) - x).norm() == 0.0);
  CHECK_THROWS_AS(unvectorize(Vector::Zero(5), 2), std::invalid_argument);
}

TEST_CASE("density matrix validation enforces the state invariants") {
  DensityMatrix good = DensityMatrix::maximally_mixed(3);
  good.validate();
  Vector psi(2);
  psi << 1.0, 1.0;
  DensityMatrix pure = DensityMatrix::pure(psi);
  pure.validate();
  CHECK(pure.mat(0, 1).real() == doctest::Approx(0.5));

  DensityMatrix bad_trace{Matrix::Identity(2, 2)};
  CHECK_THROWS_AS(bad_trace.validate(), std::invalid_argument);
  Matrix nh = Matrix::Zero(2, 2);
  nh(0, 0) = 1.0;
  nh(0, 1) = Complex(0.0, 1e-3);
  DensityMatrix not_hermitian{nh};
  CHECK_THROWS_AS(not_hermitian.validate(), std::invalid_argument);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.1;
  neg(1, 1) = -0.1;
  DensityMatrix negative{neg};
  CHECK_THROWS_AS(negative.validate(), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix::pure(Vector::Zero(3)), std::invalid_argument);
}
