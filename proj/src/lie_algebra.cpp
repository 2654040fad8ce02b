#include "wsub/lie_algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace wsub {

Vector Vector::unit(std::size_t dim, std::size_t index)
{
  if (index >= dim) throw std::out_of_range("unit vector index out of range");
  Vector v(dim);
  v[index] = 1;
  return v;
}

bool Vector::is_zero() const
{
  return std::all_of(m_coords.begin(), m_coords.end(), [](const Rational& c) { return sgn(c) == 0; });
}

Vector& Vector::operator+=(const Vector& other)
{
  if (size() != other.size()) throw std::invalid_argument("vector dimension mismatch");
  for (std::size_t i = 0; i < size(); ++i) m_coords[i] += other.m_coords[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other)
{
  if (size() != other.size()) throw std::invalid_argument("vector dimension mismatch");
  for (std::size_t i = 0; i < size(); ++i) m_coords[i] -= other.m_coords[i];
  return *this;
}

Vector& Vector::operator*=(const Rational& s)
{
  for (auto& c : m_coords) c *= s;
  return *this;
}

//------------------------------------------------------------------------------
// Subspaces
//------------------------------------------------------------------------------

namespace {

// In-place reduced row echelon form; returns pivot columns, drops zero rows.
std::vector<std::size_t> rref(std::vector<Vector>& rows, std::size_t ncols)
{
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Rational inv = 1 / rows[r][c];
    rows[r] *= inv;
    for (std::size_t q = 0; q < rows.size(); ++q) {
      if (q == r || sgn(rows[q][c]) == 0) continue;
      Rational f = rows[q][c];
      for (std::size_t k = c; k < ncols; ++k) rows[q][k] -= f * rows[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

} // namespace

Subspace span(std::size_t ambient_dim, std::span<const Vector> vectors)
{
  Subspace s(ambient_dim);
  std::vector<Vector> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != ambient_dim) throw std::invalid_argument("span: mixed vector dimensions");
    if (!v.is_zero()) rows.push_back(v);
  }
  s.m_pivots = rref(rows, ambient_dim);
  s.m_rows = std::move(rows);
  return s;
}

Subspace span(std::span<const Vector> vectors)
{
  if (vectors.empty()) throw std::invalid_argument("span: ambient dimension unknown for an empty list");
  return span(vectors.front().size(), vectors);
}

bool contains(const Subspace& s, const Vector& v)
{
  if (v.size() != s.ambient_dim()) throw std::invalid_argument("contains: dimension mismatch");
  // Reduce v against the echelon rows; it lies in s iff the remainder vanishes.
  Vector rem = v;
  const auto& rows = s.rows();
  const auto& piv = s.pivots();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (sgn(rem[piv[r]]) == 0) continue;
    Rational f = rem[piv[r]];
    rem -= f * rows[r];
  }
  return rem.is_zero();
}

bool contains(const Subspace& outer, const Subspace& inner)
{
  if (outer.ambient_dim() != inner.ambient_dim()) throw std::invalid_argument("contains: dimension mismatch");
  return std::all_of(inner.rows().begin(), inner.rows().end(), [&](const Vector& v) { return contains(outer, v); });
}

Subspace sum(const Subspace& a, const Subspace& b)
{
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("sum: dimension mismatch");
  std::vector<Vector> all = a.rows();
  all.insert(all.end(), b.rows().begin(), b.rows().end());
  return span(a.ambient_dim(), all);
}

Subspace intersect(const Subspace& a, const Subspace& b)
{
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("intersect: dimension mismatch");
  const std::size_t n = a.ambient_dim();
  const std::size_t ka = a.dim(), kb = b.dim();
  if (ka == 0 || kb == 0) return Subspace(n);

  // Kernel of the map (x, y) ↦ Σ x_i a_i − Σ y_j b_j, read off from the
  // echelon form of the (ka + kb) × n system transposed into columns.
  const std::size_t ncols = ka + kb;
  std::vector<Vector> system(n, Vector(ncols));
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t r = 0; r < n; ++r) system[r][i] = a.rows()[i][r];
  for (std::size_t j = 0; j < kb; ++j)
    for (std::size_t r = 0; r < n; ++r) system[r][ka + j] = -b.rows()[j][r];
  std::vector<std::size_t> piv = rref(system, ncols);

  std::vector<bool> is_pivot(ncols, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vector> out;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(ncols);
    x[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -system[r][free];
    Vector v(n);
    for (std::size_t i = 0; i < ka; ++i)
      if (sgn(x[i]) != 0) v += x[i] * a.rows()[i];
    out.push_back(std::move(v));
  }
  return span(n, out);
}

std::optional<std::vector<Rational>> solve_coordinates(std::span<const Vector> basis, const Vector& v)
{
  const std::size_t k = basis.size();
  const std::size_t n = v.size();
  // Augmented n × (k + 1) system with the basis as columns.
  std::vector<Vector> system(n, Vector(k + 1));
  for (std::size_t c = 0; c < k; ++c) {
    if (basis[c].size() != n) throw std::invalid_argument("solve_coordinates: dimension mismatch");
    for (std::size_t r = 0; r < n; ++r) system[r][c] = basis[c][r];
  }
  for (std::size_t r = 0; r < n; ++r) system[r][k] = v[r];
  std::vector<std::size_t> piv = rref(system, k + 1);
  if (!piv.empty() && piv.back() == k) return std::nullopt;
  if (piv.size() != k) throw std::invalid_argument("solve_coordinates: basis is linearly dependent");
  std::vector<Rational> x(k);
  for (std::size_t r = 0; r < k; ++r) x[piv[r]] = system[r][k];
  return x;
}

//------------------------------------------------------------------------------
// Lie algebras
//------------------------------------------------------------------------------

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> labels, const std::vector<BracketEntry>& entries)
  : m_name(std::move(name)), m_labels(std::move(labels))
{
  const std::size_t d = m_labels.size();
  if (d == 0) throw std::invalid_argument("Lie algebra must have positive dimension");
  m_upper.assign(d * (d - 1) / 2, Vector(d));
  std::vector<bool> seen(m_upper.size(), false);
  for (const auto& e : entries) {
    if (e.i >= e.j || e.j >= d)
      throw std::invalid_argument("bracket entry needs 0 <= i < j < dim");
    if (e.value.size() != d) throw std::invalid_argument("bracket entry has wrong length");
    std::size_t p = pair_index(e.i, e.j);
    if (seen[p]) throw std::invalid_argument("duplicate bracket entry");
    seen[p] = true;
    m_upper[p] = e.value;
  }
}

std::size_t LieAlgebra::pair_index(std::size_t i, std::size_t j) const
{
  // Pairs (i, j), i < j, enumerated row by row.
  const std::size_t d = dim();
  return i * (2 * d - i - 1) / 2 + (j - i - 1);
}

Vector LieAlgebra::bracket_basis(std::size_t i, std::size_t j) const
{
  if (i >= dim() || j >= dim()) throw std::out_of_range("basis index out of range");
  if (i == j) return Vector(dim());
  if (i < j) return m_upper[pair_index(i, j)];
  return -m_upper[pair_index(j, i)];
}

Rational LieAlgebra::structure_constant(std::size_t i, std::size_t j, std::size_t k) const
{
  if (k >= dim()) throw std::out_of_range("basis index out of range");
  if (i == j) return 0;
  if (i < j) return m_upper[pair_index(i, j)][k];
  return -m_upper[pair_index(j, i)][k];
}

std::vector<LieAlgebra::BracketEntry> LieAlgebra::entries() const
{
  std::vector<BracketEntry> out;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j) {
      const Vector& v = m_upper[pair_index(i, j)];
      if (!v.is_zero()) out.push_back({i, j, v});
    }
  return out;
}

Subspace LieAlgebra::whole() const
{
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < dim(); ++i) basis.push_back(basis_vector(i));
  return span(dim(), basis);
}

Vector bracket(const LieAlgebra& lie, const Vector& x, const Vector& y)
{
  const std::size_t d = lie.dim();
  if (x.size() != d || y.size() != d) throw std::invalid_argument("bracket: dimension mismatch");
  Vector out(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j || sgn(y[j]) == 0) continue;
      Rational f = x[i] * y[j];
      Vector b = lie.bracket_basis(i, j);
      for (std::size_t k = 0; k < d; ++k)
        if (sgn(b[k]) != 0) out[k] += f * b[k];
    }
  }
  return out;
}

JacobiReport check_jacobi(const LieAlgebra& lie)
{
  const std::size_t d = lie.dim();
  JacobiReport rep;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) {
        Vector ei = lie.basis_vector(i), ej = lie.basis_vector(j), ek = lie.basis_vector(k);
        Vector r = bracket(lie, ei, lie.bracket_basis(j, k));
        r += bracket(lie, ej, lie.bracket_basis(k, i));
        r += bracket(lie, ek, lie.bracket_basis(i, j));
        if (!r.is_zero()) {
          rep.ok = false;
          rep.i = i;
          rep.j = j;
          rep.k = k;
          rep.residual = std::move(r);
          return rep;
        }
      }
  return rep;
}

Vector multi_commutator(const LieAlgebra& lie, std::span<const Vector> selected, const MultiIndex& alpha)
{
  if (alpha.empty()) throw std::invalid_argument("multi_commutator: empty multi-index");
  for (auto a : alpha)
    if (a >= selected.size()) throw std::out_of_range("multi_commutator: index out of range");
  Vector acc = selected[alpha[0]];
  for (std::size_t n = 1; n < alpha.size(); ++n) acc = bracket(lie, acc, selected[alpha[n]]);
  return acc;
}

Vector multi_commutator(const LieAlgebra& lie, std::span<const std::size_t> basis_sel, const MultiIndex& alpha)
{
  std::vector<Vector> selected;
  for (auto b : basis_sel) selected.push_back(lie.basis_vector(b));
  return multi_commutator(lie, selected, alpha);
}

Subspace bracket_span(const LieAlgebra& lie, const Subspace& a, const Subspace& b)
{
  std::vector<Vector> out;
  for (const auto& x : a.rows())
    for (const auto& y : b.rows()) out.push_back(bracket(lie, x, y));
  return span(lie.dim(), out);
}

NilpotencyInfo is_nilpotent(const LieAlgebra& lie)
{
  const Subspace g = lie.whole();
  Subspace term = g;
  NilpotencyInfo info;
  for (std::size_t step = 1;; ++step) {
    Subspace next = bracket_span(lie, g, term);
    if (next.is_zero()) {
      info.nilpotent = true;
      info.step = step;
      return info;
    }
    if (next == term) return info;
    term = std::move(next);
  }
}

std::size_t derived_dimension(const LieAlgebra& lie)
{
  return bracket_span(lie, lie.whole(), lie.whole()).dim();
}

} // namespace wsub
