#include "distgraph/rational.hpp"

#include <cctype>

#include "distgraph/errors.hpp"

namespace distgraph {
namespace {

BigInt parse_integer(const std::string& s, const std::string& whole) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) throw ValidationError("malformed rational '" + whole + "'");
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) {
      throw ValidationError("malformed rational '" + whole + "' (write num/den, decimals are not exact)");
    }
  }
  return BigInt(s[0] == '+' ? s.substr(1) : s);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const std::string s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s, text));
  const BigInt num = parse_integer(s.substr(0, slash), text);
  const BigInt den = parse_integer(s.substr(slash + 1), text);
  if (den == 0) throw ValidationError("zero denominator in '" + text + "'");
  return Rational(num, den);
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_rational(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_rational(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace distgraph
