#include "distgraph/testfn.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "detail/accumulate.hpp"
#include "distgraph/errors.hpp"

namespace distgraph {

TestFunctionSpec TestFunctionSpec::ball(const Rational& a) {
  TestFunctionSpec s;
  s.kind = Kind::Ball;
  s.scale = a;
  return s;
}

TestFunctionSpec TestFunctionSpec::sphere() {
  TestFunctionSpec s;
  s.kind = Kind::Sphere;
  return s;
}

TestFunctionSpec TestFunctionSpec::delta() {
  TestFunctionSpec s;
  s.kind = Kind::Delta;
  return s;
}

TestFunctionSpec TestFunctionSpec::ones(int half_width) {
  if (half_width < 0) throw ValidationError("ones box half width must be non-negative");
  TestFunctionSpec s;
  s.kind = Kind::OnesBox;
  s.half_width = half_width;
  return s;
}

TestFunctionSpec TestFunctionSpec::custom(const std::string& path) {
  TestFunctionSpec s;
  s.kind = Kind::Custom;
  s.path = path;
  return s;
}

TestFunctionSpec parse_function_spec(const std::string& text) {
  if (text == "sphere") return TestFunctionSpec::sphere();
  if (text == "delta") return TestFunctionSpec::delta();
  if (text == "ball") return TestFunctionSpec::ball();
  if (text.rfind("ball:a=", 0) == 0) return TestFunctionSpec::ball(parse_rational(text.substr(7)));
  if (text.rfind("ones:", 0) == 0) {
    const std::string w = text.substr(5);
    if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos) {
      throw ValidationError("ones:<half_width> needs a non-negative integer, got '" + w + "'");
    }
    return TestFunctionSpec::ones(std::stoi(w));
  }
  if (text.rfind("file:", 0) == 0 && text.size() > 5) return TestFunctionSpec::custom(text.substr(5));
  throw ValidationError("unknown function spec '" + text + "' (ball[:a=r], sphere, delta, ones:<w>, file:<path>)");
}

std::string to_string(const TestFunctionSpec& spec) {
  switch (spec.kind) {
    case TestFunctionSpec::Kind::Ball:
      return spec.scale == 1 ? "ball" : "ball:a=" + format_rational(spec.scale);
    case TestFunctionSpec::Kind::Sphere: return "sphere";
    case TestFunctionSpec::Kind::Delta: return "delta";
    case TestFunctionSpec::Kind::OnesBox: return "ones:" + std::to_string(spec.half_width);
    case TestFunctionSpec::Kind::Custom: return "file:" + spec.path;
  }
  return "";
}

std::int64_t scaled_squared_radius(std::int64_t lambda, const Rational& a) {
  if (lambda < 0) throw ValidationError("lambda must be non-negative");
  if (a < 0) {
    // lambda^a lies in (0, 1) for lambda > 1
    return lambda == 1 ? 1 : 0;
  }
  if (lambda == 0) return a == 0 ? 1 : 0;
  const BigInt num = numerator(a);
  const BigInt den = denominator(a);
  if (num > 4096 || den > 4096) throw ValidationError("ball scale exponent has an oversized numerator or denominator");
  const unsigned n = num.convert_to<unsigned>();
  const unsigned m = den.convert_to<unsigned>();
  // largest r with r^m <= lambda^n
  const BigInt target = boost::multiprecision::pow(BigInt(lambda), n);
  const double guess = std::floor(std::pow(static_cast<double>(lambda), static_cast<double>(n) / m));
  if (guess > 9.0e18) throw CapacityError("scaled ball radius does not fit in 64 bits");
  BigInt r = static_cast<std::int64_t>(guess);
  while (r > 0 && boost::multiprecision::pow(r, m) > target) --r;
  while (boost::multiprecision::pow(r + 1, m) <= target) ++r;
  if (r > BigInt(std::numeric_limits<std::int64_t>::max())) throw CapacityError("scaled ball radius overflows");
  return r.convert_to<std::int64_t>();
}

FunctionOnLattice materialize(const TestFunctionSpec& spec, int d, std::int64_t lambda, const EnumerationLimits& limits) {
  if (lambda < 0) throw ValidationError("lambda must be non-negative");
  validate_dimension(d);
  switch (spec.kind) {
    case TestFunctionSpec::Kind::Ball:
      return FunctionOnLattice::indicator(enumerate_ball(d, scaled_squared_radius(lambda, spec.scale), limits));
    case TestFunctionSpec::Kind::Sphere: return FunctionOnLattice::indicator(enumerate_sphere(d, lambda, limits));
    case TestFunctionSpec::Kind::Delta: return FunctionOnLattice::delta(d);
    case TestFunctionSpec::Kind::OnesBox:
      return FunctionOnLattice::indicator(enumerate_box(d, spec.half_width, limits));
    case TestFunctionSpec::Kind::Custom: {
      std::ifstream in(spec.path);
      if (!in) throw ValidationError("cannot open function file '" + spec.path + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      FunctionOnLattice f = function_from_json(ss.str());
      if (f.dim() != d) {
        throw DimensionMismatch("function file '" + spec.path + "' has dimension " + std::to_string(f.dim()) +
                                ", expected " + std::to_string(d));
      }
      return f;
    }
  }
  throw ValidationError("bad function spec");
}

HolderExponent HolderExponent::finite(const Rational& p) {
  if (p < 1) throw ValidationError("Holder exponent must be >= 1, got " + format_rational(p));
  return HolderExponent(false, p);
}

HolderExponent HolderExponent::from_reciprocal(const Rational& r) {
  if (r < 0 || r > 1) throw ValidationError("Holder reciprocal must lie in [0, 1], got " + format_rational(r));
  return r == 0 ? infinity() : finite(1 / r);
}

const Rational& HolderExponent::p() const {
  if (inf_) throw ValidationError("p is infinite");
  return p_;
}

HolderExponent parse_holder(const std::string& text) {
  if (text == "inf" || text == "infinity") return HolderExponent::infinity();
  return HolderExponent::finite(parse_rational(text));
}

std::string to_string(const HolderExponent& p) { return p.is_infinite() ? "inf" : format_rational(p.p()); }

double lp_norm(const FunctionOnLattice& f, const HolderExponent& p) {
  if (p.is_infinite()) return f.max_abs();
  const double e = to_double(p.p());
  detail::Compensated acc;
  for (double v : f.values()) acc.add(std::pow(std::fabs(v), e));
  return std::pow(acc.value(), 1.0 / e);
}

HolderExponent conjugate(const HolderExponent& p) {
  if (p.is_infinite()) return HolderExponent::finite(1);
  if (p.p() == 1) return HolderExponent::infinity();
  return HolderExponent::finite(p.p() / (p.p() - 1));
}

}  // namespace distgraph
