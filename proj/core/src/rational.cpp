#include "fcone/rational.hpp"

#include <limits>

#include "fcone/error.hpp"

namespace fcone {

std::string format_rational(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return DomainError("not a rational literal: '" + s + "'"); };
  if (s.empty() || s.find_first_of(".eE ") != std::string::npos) throw bad();
  auto slash = s.find('/');
  Integer num, den = 1;
  auto valid_int = [](const std::string& part) {
    std::size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (start == part.size()) return false;
    for (std::size_t k = start; k < part.size(); ++k)
      if (part[k] < '0' || part[k] > '9') return false;
    return true;
  };
  std::string nump = slash == std::string::npos ? s : s.substr(0, slash);
  if (!valid_int(nump)) throw bad();
  if (nump[0] == '+') nump.erase(0, 1);
  num.set_str(nump, 10);
  if (slash != std::string::npos) {
    std::string denp = s.substr(slash + 1);
    if (!valid_int(denp) || denp[0] == '-' || denp[0] == '+') throw bad();
    den.set_str(denp, 10);
    if (den == 0) throw DomainError("zero denominator: '" + s + "'");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer gcd_of(std::span<const Integer> values) {
  Integer g = 0;
  for (const auto& v : values) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  return g;
}

std::vector<Integer> primitive_integer_vector(std::span<const Rational> values) {
  Integer lcm = 1;
  for (const auto& v : values) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.get_num() * (lcm / v.get_den()));
  Integer g = gcd_of(out);
  if (g > 1)
    for (auto& v : out) v /= g;
  return out;
}

std::int64_t to_int64(const Integer& value) {
  if (!value.fits_slong_p()) throw DomainError("integer does not fit in 64 bits");
  return value.get_si();
}

std::int64_t to_int64(const Rational& value) {
  if (value.get_den() != 1) throw DomainError("value is not an integer: " + format_rational(value));
  return to_int64(value.get_num());
}

}  // namespace fcone
