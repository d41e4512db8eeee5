#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qbat/dissipation.hpp"
#include "support/oracles.hpp"

using namespace qbat;

TEST_CASE("bond jump matrix entries follow u v^T with eta = e^{i phi}") {
  for (double phi : {0.0, M_PI, 0.7, -1.3}) {
    const Complex eta = std::exp(Complex(0, phi));
    const JumpOperator jump = bond_jump(1, 3, phi, 5);
    CHECK(jump.kind == JumpKind::bond);
    CHECK(jump.rate == 1.0);
    CHECK(jump.rank_one());
    Matrix expected = Matrix::Zero(5, 5);
    expected(1, 1) = 1.0;
    expected(1, 3) = -eta;
    expected(3, 1) = eta;
    expected(3, 3) = -eta * eta;
    CHECK((jump.mat - expected).norm() < 1e-15);
    CHECK((jump.mat - jump.u * jump.v.transpose()).norm() < 1e-15);
  }
}

TEST_CASE("dephasing jump is the site projector") {
  const JumpOperator jump = dephasing_jump(2, 4);
  Matrix expected = Matrix::Zero(4, 4);
  expected(2, 2) = 1.0;
  CHECK((jump.mat - expected).norm() == 0.0);
  CHECK(jump.kind == JumpKind::dephasing);
  CHECK((jump.mat * jump.mat - jump.mat).norm() == 0.0);
}

TEST_CASE("jump construction rejects bad input") {
  CHECK_THROWS_AS(bond_jump(0, 0, 0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(bond_jump(0, 4, 0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(bond_jump(-1, 2, 0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(dephasing_jump(9, 4), std::invalid_argument);
  CHECK_THROWS_AS(JumpOperator::from_matrix(Matrix::Zero(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(JumpOperator::from_matrix(Matrix::Zero(2, 2), -1.0), std::invalid_argument);
}

TEST_CASE("operator-form rhs agrees with the superoperator on arbitrary input") {
  SplitMix64 rng(11);
  for (int n : {2, 3, 5, 8}) {
    const HermitianOperator h = oracle::random_hermitian(n, rng);
    std::vector<JumpOperator> jumps;
    jumps.push_back(bond_jump(0, n - 1, 0.9, n).with_rate(0.8));
    jumps.push_back(dephasing_jump(1 % n, n).with_rate(1.7));
    jumps.push_back(JumpOperator::from_matrix(oracle::random_complex(n, rng), 0.4));
    const Matrix l = build_liouvillian(h, jumps).mat;
    for (int rep = 0; rep < 4; ++rep) {
      const Matrix x = oracle::random_complex(n, rng);  // not Hermitian, not unit trace
      const Matrix via_op = rhs(x, h, jumps);
      const Vector via_super = l * vectorize(x);
      CHECK((vectorize(via_op) - via_super).norm() < 1e-10);
      const DensityMatrix rho = oracle::random_density(n, rng);
      CHECK((vectorize(rhs(rho.mat, h, jumps)) - l * vectorize(rho.mat)).norm() < 1e-10);
      CHECK(std::abs(rhs(rho.mat, h, jumps).trace()) < 1e-12);
    }
  }
}

TEST_CASE("sparse and dense generators are the same matrix") {
  SplitMix64 rng(23);
  const int n = 6;
  const HermitianOperator h = oracle::random_hermitian(n, rng);
  std::vector<JumpOperator> jumps = {bond_jump(2, 4, 0.3, n).with_rate(1.2),
                                     dephasing_jump(0, n).with_rate(0.5)};
  const Matrix dense = build_liouvillian(h, jumps).mat;
  const Matrix sparse = Matrix(build_liouvillian_sparse(h, jumps));
  CHECK((dense - sparse).norm() < 1e-12);
}

TEST_CASE("a rank-1 jump given as plain matrix evolves identically") {
  SplitMix64 rng(31);
  const int n = 5;
  const HermitianOperator h = oracle::random_hermitian(n, rng);
  const JumpOperator fast = bond_jump(1, 2, 1.1, n).with_rate(0.9);
  const JumpOperator generic = JumpOperator::from_matrix(fast.mat, 0.9);
  const DensityMatrix rho = oracle::random_density(n, rng);
  CHECK((rhs(rho.mat, h, {fast}) - rhs(rho.mat, h, {generic})).norm() < 1e-12);
}

TEST_CASE("symmetric two-site state is dark for eta = 1") {
  auto [h, bonds] = build_chain({.sites = 2});
  const std::vector<JumpOperator> jumps = {bond_jump(0, 1, 0.0, 2)};
  Vector plus(2);
  plus << 1.0, 1.0;
  const DensityMatrix dark = DensityMatrix::pure(plus);
  CHECK(rhs(dark.mat, h, jumps).norm() < 1e-14);
  const Matrix l = build_liouvillian(h, jumps).mat;
  CHECK((l * vectorize(dark.mat)).norm() < 1e-14);
}

TEST_CASE("generator annihilates the identity direction only via trace") {
  // Trace preservation in superoperator form: the all-sites trace functional
  // is a left null vector of the generator.
  SplitMix64 rng(47);
  const int n = 4;
  const HermitianOperator h = oracle::random_hermitian(n, rng);
  const std::vector<JumpOperator> jumps = {bond_jump(0, 3, 0.2, n),
                                           dephasing_jump(2, n).with_rate(2.0)};
  const Matrix l = build_liouvillian(h, jumps).mat;
  Eigen::RowVectorXcd tr = Eigen::RowVectorXcd::Zero(n * n);
  for (int k = 0; k < n; ++k) tr(k * (n + 1)) = 1.0;
  CHECK((tr * l).norm() < 1e-12);
}

TEST_CASE("effective rate of the driven auxiliary site") {
  CHECK(effective_rate(1.0, 10.0, 50.0) ==
        doctest::Approx(10.0 / 2525.0).epsilon(1e-13));
  CHECK(effective_rate(2.0, 1.0, 0.0) == doctest::Approx(16.0).epsilon(1e-13));
  CHECK_THROWS_AS(effective_rate(1.0, 0.0, 1.0), std::invalid_argument);
  // Large detuning: rate falls off as Gamma (Omega/Delta)^2.
  const double far = effective_rate(1.0, 2.0, 40.0);
  CHECK(far == doctest::Approx(2.0 / 1600.0).epsilon(0.01));
}
