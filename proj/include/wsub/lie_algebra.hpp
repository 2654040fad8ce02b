#ifndef WSUB_LIE_ALGEBRA_HPP
#define WSUB_LIE_ALGEBRA_HPP

#include "wsub/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wsub {

/// Element of a d-dimensional rational vector space, in basis coordinates.
class Vector {
public:
  Vector() = default;
  explicit Vector(std::size_t dim) : m_coords(dim) {}
  explicit Vector(std::vector<Rational> coords) : m_coords(std::move(coords)) {}

  static Vector unit(std::size_t dim, std::size_t index);

  std::size_t size() const { return m_coords.size(); }
  const Rational& operator[](std::size_t i) const { return m_coords[i]; }
  Rational& operator[](std::size_t i) { return m_coords[i]; }
  const std::vector<Rational>& coords() const { return m_coords; }

  bool is_zero() const;

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(const Rational& s);

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(const Rational& s, Vector v) { return v *= s; }
  friend Vector operator-(Vector v) { return v *= Rational(-1); }
  friend bool operator==(const Vector& a, const Vector& b) { return a.m_coords == b.m_coords; }

private:
  std::vector<Rational> m_coords;
};

/// Finite sequence of (0-based) indices into a selected basis.
using MultiIndex = std::vector<std::size_t>;

/// Subspace stored as its reduced row-echelon basis.
///
/// The echelon form is canonical, so two subspaces of the same ambient space
/// are equal exactly when their row lists are equal.
class Subspace {
public:
  explicit Subspace(std::size_t ambient_dim = 0) : m_ambient(ambient_dim) {}

  std::size_t ambient_dim() const { return m_ambient; }
  std::size_t dim() const { return m_rows.size(); }
  bool is_zero() const { return m_rows.empty(); }
  bool is_full() const { return m_rows.size() == m_ambient; }
  const std::vector<Vector>& rows() const { return m_rows; }
  const std::vector<std::size_t>& pivots() const { return m_pivots; }

  friend bool operator==(const Subspace& a, const Subspace& b)
  {
    return a.m_ambient == b.m_ambient && a.m_rows == b.m_rows;
  }

private:
  friend Subspace span(std::size_t ambient_dim, std::span<const Vector> vectors);
  std::size_t m_ambient;
  std::vector<Vector> m_rows;
  std::vector<std::size_t> m_pivots;
};

Subspace span(std::size_t ambient_dim, std::span<const Vector> vectors);
/// Throws on an empty list; use the ambient-dimension overload instead.
Subspace span(std::span<const Vector> vectors);
bool contains(const Subspace& s, const Vector& v);
bool contains(const Subspace& outer, const Subspace& inner);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

/// Coordinates of v in the given basis; nullopt if v is not in its span.
/// The basis vectors must be linearly independent.
std::optional<std::vector<Rational>> solve_coordinates(std::span<const Vector> basis, const Vector& v);

/// Finite-dimensional Lie algebra over ℚ given by structure constants.
///
/// Only [e_i, e_j] with i < j is stored; the remaining brackets follow from
/// antisymmetry when accessed.
class LieAlgebra {
public:
  struct BracketEntry {
    std::size_t i;
    std::size_t j;
    Vector value;
  };

  LieAlgebra(std::string name, std::vector<std::string> labels, const std::vector<BracketEntry>& entries);

  const std::string& name() const { return m_name; }
  std::size_t dim() const { return m_labels.size(); }
  const std::vector<std::string>& labels() const { return m_labels; }

  /// [e_i, e_j] with antisymmetric completion.
  Vector bracket_basis(std::size_t i, std::size_t j) const;
  /// Coefficient c^k_{ij}.
  Rational structure_constant(std::size_t i, std::size_t j, std::size_t k) const;
  /// Non-zero stored entries, ordered by (i, j).
  std::vector<BracketEntry> entries() const;

  Vector basis_vector(std::size_t i) const { return Vector::unit(dim(), i); }
  Subspace whole() const;

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b)
  {
    return a.m_labels == b.m_labels && a.m_upper == b.m_upper && a.m_name == b.m_name;
  }

private:
  std::size_t pair_index(std::size_t i, std::size_t j) const;

  std::string m_name;
  std::vector<std::string> m_labels;
  std::vector<Vector> m_upper; // [e_i, e_j] for i < j, row-major over pairs
};

Vector bracket(const LieAlgebra& lie, const Vector& x, const Vector& y);

struct JacobiReport {
  bool ok = true;
  std::size_t i = 0, j = 0, k = 0; // first violating triple (0-based)
  Vector residual;
};

JacobiReport check_jacobi(const LieAlgebra& lie);

/// Left-nested commutator [ … [X_{α1}, X_{α2}], …, X_{αn}] of selected elements.
Vector multi_commutator(const LieAlgebra& lie, std::span<const Vector> selected, const MultiIndex& alpha);
/// Same, with the selection given as basis indices.
Vector multi_commutator(const LieAlgebra& lie, std::span<const std::size_t> basis_sel, const MultiIndex& alpha);

/// span{[a, b] : a ∈ A, b ∈ B}.
Subspace bracket_span(const LieAlgebra& lie, const Subspace& a, const Subspace& b);

struct NilpotencyInfo {
  bool nilpotent = false;
  std::size_t step = 0; // smallest s with g^{(s+1)} = 0 in the lower central series
};

NilpotencyInfo is_nilpotent(const LieAlgebra& lie);

/// Dimension of [g, g].
std::size_t derived_dimension(const LieAlgebra& lie);

} // namespace wsub

#endif
