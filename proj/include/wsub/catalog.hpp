#ifndef WSUB_CATALOG_HPP
#define WSUB_CATALOG_HPP

#include "wsub/lie_algebra.hpp"

#include <string>
#include <vector>

namespace wsub::catalog {

/// Built-in algebras with their documented bases.
///
///   abelian(n)    e1..en, all brackets zero
///   heisenberg(n) X1..Xn, Y1..Yn, Z with [Xi, Yi] = Z
///   engel4        X1..X4 with [X1, X2] = X3, [X1, X3] = X4
///   su2           e1, e2, e3 with [e1, e2] = e3, [e2, e3] = e1, [e3, e1] = e2
///   so3           Lx, Ly, Lz with the same cyclic relations as su2
///   sl2r          E, F, H with [E, F] = H, [H, E] = 2E, [H, F] = -2F
///   se2           J, P1, P2 with [J, P1] = P2, [J, P2] = -P1, [P1, P2] = 0
///
/// Every basis lists its canonical generators first.
LieAlgebra abelian(std::size_t n);
LieAlgebra heisenberg(std::size_t n);
LieAlgebra engel4();
LieAlgebra su2();
LieAlgebra so3();
LieAlgebra sl2r();
LieAlgebra se2();

/// Canonical weighted generating set of a catalog algebra.
struct CanonicalWeights {
  std::vector<std::size_t> indices;
  std::vector<Rational> weights;
};

struct Entry {
  LieAlgebra algebra;
  CanonicalWeights generators; // sub-Laplacian style generators, all of weight 1
  CanonicalWeights grading;    // full graded basis, only for graded algebras
  bool graded = false;
};

/// Resolves names such as "su2", "heisenberg1", "h1", "abelian3", "torus2", "engel4".
Entry lookup(const std::string& name);

/// Representative names covering every catalog family.
std::vector<std::string> names();

} // namespace wsub::catalog

#endif
