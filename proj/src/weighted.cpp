#include "wsub/weighted.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace wsub {

WeightedBasis::WeightedBasis(std::vector<Vector> elements, std::vector<Rational> weights)
  : m_elements(std::move(elements)), m_weights(std::move(weights))
{
  if (m_elements.empty()) throw std::invalid_argument("weighted basis must be non-empty");
  if (m_elements.size() != m_weights.size()) throw std::invalid_argument("one weight per basis element required");
  for (const auto& w : m_weights)
    if (w < 1) throw std::invalid_argument("weights must be >= 1, got " + to_string(w));
  const std::size_t d = m_elements.front().size();
  for (const auto& v : m_elements)
    if (v.size() != d) throw std::invalid_argument("weighted basis elements have mixed dimensions");
  if (span(d, m_elements).dim() != m_elements.size())
    throw std::invalid_argument("weighted basis elements are linearly dependent");
}

WeightedBasis WeightedBasis::from_indices(const LieAlgebra& lie, const std::vector<std::size_t>& indices,
                                          std::vector<Rational> weights)
{
  std::vector<Vector> elements;
  for (auto i : indices) elements.push_back(lie.basis_vector(i));
  return WeightedBasis(std::move(elements), std::move(weights));
}

Rational WeightedBasis::period() const
{
  Rational w = m_weights.front();
  for (std::size_t j = 1; j < m_weights.size(); ++j) w = common_period(w, m_weights[j]);
  return w;
}

Rational weighted_length(const MultiIndex& alpha, const std::vector<Rational>& weights)
{
  Rational len = 0;
  for (auto a : alpha) {
    if (a >= weights.size()) throw std::out_of_range("weighted_length: index out of range");
    len += weights[a];
  }
  return len;
}

bool is_algebraic_basis(const LieAlgebra& lie, const WeightedBasis& basis)
{
  if (basis.ambient_dim() != lie.dim()) throw std::invalid_argument("basis does not live in this algebra");
  const Subspace gens = span(lie.dim(), basis.elements());
  Subspace s = gens;
  while (true) {
    Subspace next = sum(s, bracket_span(lie, s, gens));
    if (next == s) break;
    s = std::move(next);
  }
  return s.is_full();
}

//------------------------------------------------------------------------------
// Filtrations
//------------------------------------------------------------------------------

Subspace Filtration::at(const Rational& lambda) const
{
  Subspace out(spaces.empty() ? 0 : spaces.front().ambient_dim());
  for (std::size_t i = 0; i < jumps.size() && jumps[i] <= lambda; ++i) out = spaces[i];
  return out;
}

Subspace Filtration::below(const Rational& lambda) const
{
  Subspace out(spaces.empty() ? 0 : spaces.front().ambient_dim());
  for (std::size_t i = 0; i < jumps.size() && jumps[i] < lambda; ++i) out = spaces[i];
  return out;
}

Filtration build_filtration(const LieAlgebra& lie, const WeightedBasis& basis)
{
  if (!is_algebraic_basis(lie, basis)) throw std::invalid_argument("not an algebraic basis: filtration does not exhaust the algebra");

  const std::size_t d = lie.dim();
  const auto& gens = basis.elements();
  const auto& w = basis.weights();

  // Level μ holds the span of the multi-commutators of weighted length exactly μ.
  // Since the commutator of α ++ (j) is [comm(α), X_j], each level is generated
  // from the levels μ − w_j, which are strictly lower.
  std::map<Rational, Subspace> levels;
  std::set<Rational> pending(w.begin(), w.end());

  Filtration f;
  Subspace current(d);
  while (!current.is_full()) {
    if (pending.empty()) throw std::logic_error("filtration generation stalled");
    Rational mu = *pending.begin();
    pending.erase(pending.begin());

    std::vector<Vector> gen;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (w[j] == mu) gen.push_back(gens[j]);
      if (w[j] < mu) {
        auto it = levels.find(mu - w[j]);
        if (it == levels.end()) continue;
        for (const auto& v : it->second.rows()) gen.push_back(bracket(lie, v, gens[j]));
      }
    }
    Subspace level = span(d, gen);
    if (level.is_zero()) continue;
    for (const auto& wj : w) pending.insert(mu + wj);

    Subspace grown = sum(current, level);
    if (grown.dim() > current.dim()) {
      f.jumps.push_back(mu);
      f.spaces.push_back(grown);
      current = std::move(grown);
    }
    levels.emplace(mu, std::move(level));
  }
  return f;
}

//------------------------------------------------------------------------------
// Reduced bases
//------------------------------------------------------------------------------

namespace {

std::vector<Rational> distinct_weights(const WeightedBasis& basis)
{
  std::set<Rational> s(basis.weights().begin(), basis.weights().end());
  return {s.begin(), s.end()};
}

Subspace layer_span(const WeightedBasis& basis, const Rational& lambda)
{
  std::vector<Vector> layer;
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (basis.weight(j) == lambda) layer.push_back(basis.elements()[j]);
  return span(basis.ambient_dim(), layer);
}

WeightedBasis without(const WeightedBasis& basis, std::size_t drop)
{
  std::vector<Vector> e;
  std::vector<Rational> w;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (j == drop) continue;
    e.push_back(basis.elements()[j]);
    w.push_back(basis.weight(j));
  }
  return WeightedBasis(std::move(e), std::move(w));
}

} // namespace

ReducedCheck is_reduced(const LieAlgebra& lie, const WeightedBasis& basis)
{
  Filtration f = build_filtration(lie, basis);
  ReducedCheck out;
  for (const auto& lambda : distinct_weights(basis)) {
    Subspace meet = intersect(layer_span(basis, lambda), f.below(lambda));
    if (!meet.is_zero()) {
      out.reduced = false;
      out.weight = lambda;
      out.witness = meet.rows().front();
      return out;
    }
  }
  return out;
}

WeightedBasis reduce(const LieAlgebra& lie, const WeightedBasis& basis)
{
  const Filtration target = build_filtration(lie, basis);

  // Lower every weight to the jump where the element first enters the
  // filtration; by the filtration law this leaves every F_λ unchanged.
  std::vector<Rational> lowered;
  for (const auto& x : basis.elements()) {
    std::size_t i = 0;
    while (!contains(target.spaces[i], x)) ++i;
    lowered.push_back(target.jumps[i]);
  }
  WeightedBasis current(basis.elements(), lowered);

  // Drop redundant elements from offending layers one at a time.
  while (true) {
    ReducedCheck check = is_reduced(lie, current);
    if (check.reduced) return current;
    bool dropped = false;
    for (std::size_t j = current.size(); j-- > 0;) {
      if (current.weight(j) != *check.weight) continue;
      WeightedBasis candidate = without(current, j);
      if (!is_algebraic_basis(lie, candidate)) continue;
      if (build_filtration(lie, candidate) == target) {
        current = std::move(candidate);
        dropped = true;
        break;
      }
    }
    if (!dropped) throw std::logic_error("reduce: no element of the offending layer can be dropped");
  }
}

//------------------------------------------------------------------------------
// Contraction
//------------------------------------------------------------------------------

namespace {

std::string adapted_label(const LieAlgebra& lie, const Vector& v, std::size_t index)
{
  std::size_t nonzero = 0, where = 0;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (sgn(v[k]) != 0) {
      ++nonzero;
      where = k;
    }
  if (nonzero == 1 && v[where] == 1) return lie.labels()[where];
  return "u" + std::to_string(index + 1);
}

std::vector<LieAlgebra::BracketEntry> graded_brackets(const LieAlgebra& lie, const std::vector<Vector>& adapted,
                                                      const std::vector<Rational>& weights)
{
  const std::size_t d = adapted.size();
  std::vector<LieAlgebra::BracketEntry> entries;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) {
      auto coords = solve_coordinates(adapted, bracket(lie, adapted[a], adapted[b]));
      if (!coords) throw std::logic_error("adapted basis does not span the algebra");
      // Only the component of top weight w_a + w_b survives the contraction.
      Vector top(d);
      const Rational target = weights[a] + weights[b];
      for (std::size_t k = 0; k < d; ++k)
        if (weights[k] == target) top[k] = (*coords)[k];
      if (!top.is_zero()) entries.push_back({a, b, std::move(top)});
    }
  return entries;
}

} // namespace

GradedLieAlgebra contract(const LieAlgebra& lie, const WeightedBasis& basis)
{
  if (!is_reduced(lie, basis).reduced) throw std::invalid_argument("contract requires a reduced weighted basis (apply reduce first)");
  const Filtration f = build_filtration(lie, basis);
  const std::size_t d = lie.dim();

  std::vector<Vector> adapted;
  std::vector<Rational> weights;
  std::vector<std::pair<std::size_t, std::size_t>> layers;
  Subspace current(d);
  for (std::size_t i = 0; i < f.jumps.size(); ++i) {
    const Rational& lambda = f.jumps[i];
    const std::size_t begin = adapted.size();
    auto take = [&](const Vector& v) {
      if (contains(current, v)) return;
      adapted.push_back(v);
      weights.push_back(lambda);
      current = sum(current, span(d, std::vector<Vector>{v}));
    };
    // Original elements of this weight first, then echelon completion of F_λ.
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (basis.weight(j) == lambda) take(basis.elements()[j]);
    for (const auto& row : f.spaces[i].rows()) take(row);
    layers.emplace_back(begin, adapted.size());
  }

  std::vector<std::string> labels;
  for (std::size_t k = 0; k < adapted.size(); ++k) labels.push_back(adapted_label(lie, adapted[k], k));

  GradedLieAlgebra g{LieAlgebra(lie.name() + "*", labels, graded_brackets(lie, adapted, weights)),
                     weights,
                     f.jumps,
                     layers,
                     adapted,
                     0};
  g.q_star = homogeneous_dimension(g);
  return g;
}

Rational homogeneous_dimension(const GradedLieAlgebra& graded)
{
  Rational q = 0;
  for (const auto& w : graded.weights) q += w;
  return q;
}

GradingCheck check_grading(const GradedLieAlgebra& graded)
{
  GradingCheck out;
  const LieAlgebra& a = graded.algebra;
  if (graded.weights.size() != a.dim()) throw std::invalid_argument("one grade weight per basis vector required");
  for (const auto& e : a.entries())
    for (std::size_t k = 0; k < a.dim(); ++k)
      if (sgn(e.value[k]) != 0 && graded.weights[k] != graded.weights[e.i] + graded.weights[e.j])
        out.weights_respected = false;
  out.jacobi = check_jacobi(a).ok;
  out.nilpotent = is_nilpotent(a).nilpotent;
  out.ok = out.weights_respected && out.jacobi && out.nilpotent;
  return out;
}

GradedLieAlgebra make_graded(LieAlgebra algebra, std::vector<Rational> weights)
{
  std::set<Rational> distinct(weights.begin(), weights.end());
  std::vector<std::pair<std::size_t, std::size_t>> layers;
  std::vector<Rational> layer_weights(distinct.begin(), distinct.end());
  for (const auto& lw : layer_weights) {
    auto first = std::find(weights.begin(), weights.end(), lw);
    auto last = std::find_if(first, weights.end(), [&](const Rational& w) { return w != lw; });
    layers.emplace_back(first - weights.begin(), last - weights.begin());
  }
  std::vector<Vector> adapted;
  for (std::size_t k = 0; k < algebra.dim(); ++k) adapted.push_back(algebra.basis_vector(k));
  GradedLieAlgebra g{std::move(algebra), std::move(weights), std::move(layer_weights), std::move(layers),
                     std::move(adapted), 0};
  g.q_star = homogeneous_dimension(g);
  return g;
}

WeightedBasis own_weighted_basis(const GradedLieAlgebra& graded)
{
  std::vector<Vector> e;
  for (std::size_t k = 0; k < graded.algebra.dim(); ++k) e.push_back(graded.algebra.basis_vector(k));
  return WeightedBasis(std::move(e), graded.weights);
}

std::optional<LieAlgebra> heisenberg_normal_form(const GradedLieAlgebra& graded)
{
  const LieAlgebra& a = graded.algebra;
  if (a.dim() != 3 || derived_dimension(a) != 1) return std::nullopt;
  auto entries = a.entries();
  const Vector x = a.basis_vector(entries.front().i);
  const Vector y = a.basis_vector(entries.front().j);
  const Vector z = entries.front().value;
  std::vector<Vector> frame{x, y, z};
  if (span(3, frame).dim() != 3) return std::nullopt;

  std::vector<LieAlgebra::BracketEntry> normal;
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t q = p + 1; q < 3; ++q) {
      auto coords = solve_coordinates(frame, bracket(a, frame[p], frame[q]));
      Vector v(*coords);
      if (!v.is_zero()) normal.push_back({p, q, std::move(v)});
    }
  LieAlgebra out("heisenberg1", {"X", "Y", "Z"}, normal);
  if (out.entries().size() != 1) return std::nullopt;
  return out;
}

} // namespace wsub
