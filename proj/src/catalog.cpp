#include "wsub/catalog.hpp"

#include <cctype>
#include <stdexcept>

namespace wsub::catalog {

namespace {

using Entries = std::vector<LieAlgebra::BracketEntry>;

Vector vec(std::size_t d, std::initializer_list<std::pair<std::size_t, int>> terms)
{
  Vector v(d);
  for (auto [k, c] : terms) v[k] = c;
  return v;
}

std::vector<Rational> ones(std::size_t n)
{
  return std::vector<Rational>(n, Rational(1));
}

std::vector<std::size_t> iota(std::size_t n)
{
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

bool parse_suffix(const std::string& name, const std::string& prefix, std::size_t& n)
{
  if (name.rfind(prefix, 0) != 0) return false;
  std::string rest = name.substr(prefix.size());
  if (!rest.empty() && rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
  if (rest.empty()) return false;
  for (char c : rest)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  n = std::stoul(rest);
  return n > 0;
}

} // namespace

LieAlgebra abelian(std::size_t n)
{
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("e" + std::to_string(i));
  return LieAlgebra("abelian" + std::to_string(n), labels, {});
}

LieAlgebra heisenberg(std::size_t n)
{
  const std::size_t d = 2 * n + 1;
  std::vector<std::string> labels;
  if (n == 1) {
    labels = {"X", "Y", "Z"};
  } else {
    for (std::size_t i = 1; i <= n; ++i) labels.push_back("X" + std::to_string(i));
    for (std::size_t i = 1; i <= n; ++i) labels.push_back("Y" + std::to_string(i));
    labels.push_back("Z");
  }
  Entries e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({i, n + i, vec(d, {{2 * n, 1}})});
  return LieAlgebra("heisenberg" + std::to_string(n), labels, e);
}

LieAlgebra engel4()
{
  return LieAlgebra("engel4", {"X1", "X2", "X3", "X4"},
                    Entries{{0, 1, vec(4, {{2, 1}})}, {0, 2, vec(4, {{3, 1}})}});
}

LieAlgebra su2()
{
  return LieAlgebra("su2", {"e1", "e2", "e3"},
                    Entries{{0, 1, vec(3, {{2, 1}})}, {1, 2, vec(3, {{0, 1}})}, {0, 2, vec(3, {{1, -1}})}});
}

LieAlgebra so3()
{
  return LieAlgebra("so3", {"Lx", "Ly", "Lz"},
                    Entries{{0, 1, vec(3, {{2, 1}})}, {1, 2, vec(3, {{0, 1}})}, {0, 2, vec(3, {{1, -1}})}});
}

LieAlgebra sl2r()
{
  // Basis order E, F, H.
  return LieAlgebra("sl2r", {"E", "F", "H"},
                    Entries{{0, 1, vec(3, {{2, 1}})}, {0, 2, vec(3, {{0, -2}})}, {1, 2, vec(3, {{1, 2}})}});
}

LieAlgebra se2()
{
  // Basis order J, P1, P2.
  return LieAlgebra("se2", {"J", "P1", "P2"},
                    Entries{{0, 1, vec(3, {{2, 1}})}, {0, 2, vec(3, {{1, -1}})}});
}

Entry lookup(const std::string& raw)
{
  std::string name;
  for (char c : raw) name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));

  std::size_t n = 0;
  auto two_gen = [](LieAlgebra a) {
    return Entry{std::move(a), {{0, 1}, ones(2)}, {}, false};
  };
  if (name == "su2") return two_gen(su2());
  if (name == "so3") return two_gen(so3());
  if (name == "sl2r") return two_gen(sl2r());
  if (name == "se2") return two_gen(se2());
  if (name == "engel4") {
    return Entry{engel4(), {{0, 1}, ones(2)},
                 {iota(4), {Rational(1), Rational(1), Rational(2), Rational(3)}}, true};
  }
  if (name == "h1") name = "heisenberg1";
  if (parse_suffix(name, "heisenberg", n)) {
    std::vector<Rational> w = ones(2 * n);
    w.push_back(2);
    return Entry{heisenberg(n), {iota(2 * n), ones(2 * n)}, {iota(2 * n + 1), w}, true};
  }
  if (parse_suffix(name, "abelian", n) || parse_suffix(name, "torus", n)) {
    return Entry{abelian(n), {iota(n), ones(n)}, {iota(n), ones(n)}, true};
  }
  throw std::invalid_argument("unknown catalog algebra '" + raw + "'");
}

std::vector<std::string> names()
{
  return {"abelian1", "abelian3", "heisenberg1", "heisenberg2", "engel4", "su2", "so3", "sl2r", "se2"};
}

} // namespace wsub::catalog
