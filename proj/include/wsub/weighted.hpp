#ifndef WSUB_WEIGHTED_HPP
#define WSUB_WEIGHTED_HPP

#include "wsub/lie_algebra.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace wsub {

/// Linearly independent elements X_1..X_k of a Lie algebra with rational weights w_j ≥ 1.
class WeightedBasis {
public:
  WeightedBasis(std::vector<Vector> elements, std::vector<Rational> weights);

  static WeightedBasis from_indices(const LieAlgebra& lie, const std::vector<std::size_t>& indices,
                                    std::vector<Rational> weights);

  std::size_t size() const { return m_elements.size(); }
  std::size_t ambient_dim() const { return m_elements.front().size(); }
  const std::vector<Vector>& elements() const { return m_elements; }
  const std::vector<Rational>& weights() const { return m_weights; }
  const Rational& weight(std::size_t j) const { return m_weights[j]; }

  /// Least positive w with w ∈ w_j·ℕ for every j.
  Rational period() const;

  friend bool operator==(const WeightedBasis& a, const WeightedBasis& b)
  {
    return a.m_elements == b.m_elements && a.m_weights == b.m_weights;
  }

private:
  std::vector<Vector> m_elements;
  std::vector<Rational> m_weights;
};

/// Σ_j w_{α_j}; zero for the empty multi-index.
Rational weighted_length(const MultiIndex& alpha, const std::vector<Rational>& weights);

bool is_algebraic_basis(const LieAlgebra& lie, const WeightedBasis& basis);

/// Filtration F_λ stored at its jumps λ_1 < … < λ_k; F_λ = spaces[i] for the
/// largest λ_i ≤ λ and {0} below λ_1.
struct Filtration {
  std::vector<Rational> jumps;
  std::vector<Subspace> spaces;

  Subspace at(const Rational& lambda) const;
  /// F_λ⁻ = ⋃_{μ<λ} F_μ.
  Subspace below(const Rational& lambda) const;

  friend bool operator==(const Filtration& a, const Filtration& b)
  {
    return a.jumps == b.jumps && a.spaces == b.spaces;
  }
};

/// Throws std::invalid_argument if the basis is not algebraic.
Filtration build_filtration(const LieAlgebra& lie, const WeightedBasis& basis);

struct ReducedCheck {
  bool reduced = true;
  std::optional<Rational> weight; // layer where reducedness fails
  std::optional<Vector> witness;  // non-zero element of span(layer) ∩ F_λ⁻
};

ReducedCheck is_reduced(const LieAlgebra& lie, const WeightedBasis& basis);

/// Reduced weighted basis defining the same filtration (identity on reduced input).
WeightedBasis reduce(const LieAlgebra& lie, const WeightedBasis& basis);

/// Graded (homogeneous) Lie algebra obtained by contraction.
struct GradedLieAlgebra {
  LieAlgebra algebra;                   // structure constants in the adapted basis
  std::vector<Rational> weights;        // grade weight of each adapted basis vector
  std::vector<Rational> layer_weights;  // λ_1 < … < λ_k
  std::vector<std::pair<std::size_t, std::size_t>> layers; // [begin, end) index range per layer
  std::vector<Vector> adapted_basis;    // representatives in the source algebra
  Rational q_star;
};

/// Requires a reduced basis; throws std::invalid_argument otherwise.
GradedLieAlgebra contract(const LieAlgebra& lie, const WeightedBasis& basis);

Rational homogeneous_dimension(const GradedLieAlgebra& graded);

struct GradingCheck {
  bool ok = true;
  bool weights_respected = true;
  bool jacobi = true;
  bool nilpotent = true;
};

GradingCheck check_grading(const GradedLieAlgebra& graded);

/// Graded algebra from explicit structure constants and weights, without any
/// checks (check_grading validates it).
GradedLieAlgebra make_graded(LieAlgebra algebra, std::vector<Rational> weights);

/// The adapted basis of a graded algebra viewed as a weighted basis of itself.
WeightedBasis own_weighted_basis(const GradedLieAlgebra& graded);

/// Normal form of a 3-dimensional graded algebra isomorphic to heisenberg(1):
/// the algebra written in the basis (x, y, [x, y]) with x, y the first two
/// adapted vectors. nullopt if the derived algebra is not 1-dimensional and
/// central, i.e. the algebra is not a Heisenberg algebra.
std::optional<LieAlgebra> heisenberg_normal_form(const GradedLieAlgebra& graded);

} // namespace wsub

#endif
