#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qbat/types.hpp"

namespace qbat {

enum class LatticeKind { chain, honeycomb };

/// Geometry and on-site potential parameters for a tight-binding battery.
struct LatticeSpec {
  LatticeKind kind = LatticeKind::chain;
  int sites = 0;    // chain length L
  int cells_x = 0;  // honeycomb unit cells along x
  int cells_y = 0;  // honeycomb unit cells along y
  double hopping = 1.0;
  double disorder = 0.0;  // uniform on-site disorder width W
  std::uint64_t seed = 0;
};

/// Ordered site pair carrying one dissipative bond.
struct Bond {
  int i;
  int j;
};
using BondList = std::vector<Bond>;

/// Square complex matrix validated to be Hermitian on construction.
struct HermitianOperator {
  Matrix mat;

  Eigen::Index dim() const { return mat.rows(); }

  static HermitianOperator from(Matrix m, double tol = 1e-12) {
    if (!is_hermitian(m, tol))
      throw std::invalid_argument("HermitianOperator: input not Hermitian within tolerance");
    return {std::move(m)};
  }
};

/// Eigenvalues ascending with matching orthonormal eigenvector columns.
/// Ordering of exactly degenerate eigenvalues follows the underlying solver
/// and is recorded as-is; no downstream quantity relies on it.
struct SpectralDecomposition {
  RealVector energies;
  Matrix states;

  Eigen::Index dim() const { return energies.size(); }
};

/// Periodic chain: H[i,j] = t on nearest-neighbor bonds. L = 2 carries a
/// single bond; L >= 3 carries L bonds including the wrap-around.
std::pair<HermitianOperator, BondList> build_chain(const LatticeSpec& spec);

/// Periodic honeycomb lattice in brick-wall indexing. Cell (x, y) holds
/// sublattice sites A = 2*(x*Ly + y) and B = A + 1; each cell contributes the
/// bonds (A,B), (B, A(x+1,y)), (B, A(x,y+1)) for 3*Lx*Ly bonds total.
std::pair<HermitianOperator, BondList> build_honeycomb(const LatticeSpec& spec);

/// Add uniform on-site disorder drawn from [-w/2, w/2) to the diagonal.
/// Off-diagonal entries are returned bit-identical to the input.
HermitianOperator add_disorder(const HermitianOperator& h, double w, std::uint64_t seed);

SpectralDecomposition eig(const HermitianOperator& h);

}  // namespace qbat
