#include "wsub/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace wsub {

namespace {

bool is_integer_literal(std::string_view s)
{
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s)
{
  std::string buf(s);
  if (!buf.empty() && buf[0] == '+') buf.erase(0, 1);
  return mpz_class(buf, 10);
}

} // namespace

Rational parse_rational(std::string_view text)
{
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num))
    throw std::invalid_argument("invalid rational '" + std::string(text) + "'");
  if (slash == std::string_view::npos) return Rational(parse_integer(num));

  std::string_view den = text.substr(slash + 1);
  if (!is_integer_literal(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("invalid rational '" + std::string(text) + "'");
  mpz_class d = parse_integer(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(parse_integer(num), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r)
{
  return r.get_str(10);
}

double to_double(const Rational& r)
{
  return r.get_d();
}

Rational common_period(const Rational& a, const Rational& b)
{
  // For a = p/q and b = r/s in lowest terms the intersection of the two
  // lattices a·ℕ and b·ℕ is generated by lcm(p, r) / gcd(q, s).
  if (sgn(a) <= 0 || sgn(b) <= 0) throw std::invalid_argument("common_period needs positive rationals");
  mpz_class num = lcm(a.get_num(), b.get_num());
  mpz_class den = gcd(a.get_den(), b.get_den());
  Rational out(num, den);
  out.canonicalize();
  return out;
}

} // namespace wsub
