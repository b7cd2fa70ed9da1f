#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "distgraph/rational.hpp"

namespace distgraph {

// (1/p_1, ..., 1/p_k)
using HolderPoint = std::vector<Rational>;

enum class Verdict { Interior, Boundary, Outside };
std::string to_string(Verdict v);

struct RegionSpec {
  int arity = 0;
  std::vector<HolderPoint> vertices;
  std::string provenance;
};

// coeffs . x + constant
struct LinearExpr {
  std::vector<Rational> coeffs;
  Rational constant = 0;
  Rational eval(const HolderPoint& x) const;
};

// expr < 0, or expr <= 0 when !strict
struct Guard {
  LinearExpr expr;
  bool strict = true;
};

// all guards hold -> every condition expr < 0 must hold
struct GuardedRule {
  std::vector<Guard> guards;
  std::vector<LinearExpr> conditions;
  std::string label;
};

struct HalfSpaceSystem {
  enum class Combine { AllActive, AnyActive };
  int arity = 0;
  std::string name;
  std::vector<LinearExpr> hypotheses;  // expr < 0, unconditional
  std::vector<GuardedRule> rules;
  Combine combine = Combine::AllActive;
  // strict guards are read as non-strict, so the rules on both sides of a guard plane apply on it
  bool closed_guards = false;
};

// d below the theorem's floor raises DimensionFloorError
RegionSpec builtin_region(const std::string& graph_name, int d);
void check_region_floor(const std::string& graph_name, int d);
// P2, K3, K3t, Pk (chain with k+1 vertices, k >= 1), sphavg
HalfSpaceSystem builtin_halfspaces(const std::string& name, int d, int k = 2);

Verdict hull_membership(const HolderPoint& point, const RegionSpec& region);
Verdict classify(const HolderPoint& point, const HalfSpaceSystem& system);

// one strict inequality per facet, derived from the vertex list
HalfSpaceSystem facet_system(const RegionSpec& region);

Rational conjectured_exponent(int d, const HolderPoint& point);
// d/2 (1/q_t - 1/p_t) + (1 - theta) with 1/p_t = 1 - theta + theta/p, 1/q_t = theta/q;
// theta = 0 is the Young endpoint limit
Rational interpolated_exponent(int d, const Rational& theta, const Rational& inv_p, const Rational& inv_q);

struct Disagreement {
  HolderPoint point;
  Verdict hull;
  Verdict system;
};

struct CrossValidationReport {
  std::string region;
  std::string system;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<Disagreement> disagreements;
};

// deterministic rational samples in [0,1]^k (denominators <= 64 plus +-1/1024 jitter)
std::vector<HolderPoint> sample_points(int arity, int samples, std::uint64_t seed);
CrossValidationReport cross_validate(const RegionSpec& region, const HalfSpaceSystem& system, int samples,
                                     std::uint64_t seed);

std::string region_to_json(const RegionSpec& region);
std::string report_to_json(const CrossValidationReport& report);
// "a/b,c/d,..."
HolderPoint parse_point(const std::string& text);

}  // namespace distgraph
