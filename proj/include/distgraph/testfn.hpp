#pragma once

#include <cstdint>
#include <string>

#include "distgraph/function.hpp"
#include "distgraph/rational.hpp"

namespace distgraph {

struct TestFunctionSpec {
  enum class Kind { Ball, Sphere, Delta, OnesBox, Custom };
  Kind kind = Kind::Ball;
  Rational scale = 1;  // Ball: squared radius floor(lambda^scale)
  int half_width = 0;  // OnesBox
  std::string path;    // Custom

  static TestFunctionSpec ball(const Rational& a = 1);
  static TestFunctionSpec sphere();
  static TestFunctionSpec delta();
  static TestFunctionSpec ones(int half_width);
  static TestFunctionSpec custom(const std::string& path);
};

// ball[:a=<rational>] | sphere | delta | ones:<half_width> | file:<path>
TestFunctionSpec parse_function_spec(const std::string& text);
std::string to_string(const TestFunctionSpec& spec);

// floor(lambda^a), exact for rational a
std::int64_t scaled_squared_radius(std::int64_t lambda, const Rational& a);

FunctionOnLattice materialize(const TestFunctionSpec& spec, int d, std::int64_t lambda,
                              const EnumerationLimits& limits = {});

// p in [1, inf]; the theorems use the open range (1, inf]
class HolderExponent {
 public:
  static HolderExponent infinity() { return HolderExponent(true, 0); }
  static HolderExponent finite(const Rational& p);
  static HolderExponent from_reciprocal(const Rational& r);

  bool is_infinite() const { return inf_; }
  const Rational& p() const;
  Rational reciprocal() const { return inf_ ? Rational(0) : 1 / p_; }
  // false for p = 1, where conjugate(inf) lands
  bool in_open_range() const { return inf_ || p_ > 1; }
  bool operator==(const HolderExponent& o) const { return inf_ == o.inf_ && (inf_ || p_ == o.p_); }

 private:
  HolderExponent(bool inf, const Rational& p) : inf_(inf), p_(p) {}
  bool inf_;
  Rational p_;
};

// "inf" or a rational p
HolderExponent parse_holder(const std::string& text);
std::string to_string(const HolderExponent& p);

double lp_norm(const FunctionOnLattice& f, const HolderExponent& p);
HolderExponent conjugate(const HolderExponent& p);

}  // namespace distgraph
