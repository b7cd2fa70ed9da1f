#include <doctest.h>

#include "distgraph/errors.hpp"
#include "distgraph/region.hpp"

using namespace distgraph;

namespace {

HolderPoint pt(const std::string& s) { return parse_point(s); }

}  // namespace

TEST_CASE("P1 membership examples") {
  const RegionSpec r = builtin_region("P1", 5);
  CHECK(hull_membership(pt("1/2,1/2"), r) == Verdict::Boundary);
  CHECK(hull_membership(pt("3/5,3/5"), r) == Verdict::Interior);
  CHECK(hull_membership(pt("9/10,9/10"), r) == Verdict::Outside);
  for (const auto& v : r.vertices) CHECK(hull_membership(v, r) == Verdict::Boundary);
}

TEST_CASE("halfspace examples") {
  CHECK(classify(pt("3/4,1/2"), builtin_halfspaces("sphavg", 5)) == Verdict::Boundary);
  CHECK(classify(pt("1/5,1/5,1/5"), builtin_halfspaces("P2", 5)) == Verdict::Outside);
  CHECK(classify(pt("1/2,1/2,1/2"), builtin_halfspaces("K3", 7)) == Verdict::Boundary);
}

TEST_CASE("hull membership invariants") {
  for (const auto& name : {"P1", "P2", "C4", "Y", "K3t"}) {
    const RegionSpec r = builtin_region(name, 9);
    HolderPoint centroid(r.arity, Rational(0));
    for (const auto& v : r.vertices) {
      for (int i = 0; i < r.arity; ++i) centroid[i] += v[i] / static_cast<int>(r.vertices.size());
    }
    CAPTURE(name);
    CHECK(hull_membership(centroid, r) == Verdict::Interior);
    HolderPoint far(r.arity, Rational(2));
    CHECK(hull_membership(far, r) == Verdict::Outside);
    // midpoints of vertex pairs are never outside
    for (std::size_t a = 0; a < r.vertices.size(); ++a) {
      for (std::size_t b = a + 1; b < r.vertices.size(); ++b) {
        HolderPoint m(r.arity);
        for (int i = 0; i < r.arity; ++i) m[i] = (r.vertices[a][i] + r.vertices[b][i]) / 2;
        CHECK(hull_membership(m, r) != Verdict::Outside);
      }
    }
  }
}

TEST_CASE("facet systems reproduce the hull") {
  for (const auto& name : {"P1", "P2", "C4", "K3t"}) {
    const RegionSpec r = builtin_region(name, 7);
    CAPTURE(name);
    CHECK(cross_validate(r, facet_system(r), 300, 4).disagreements.empty());
  }
}

TEST_CASE("remark systems agree with their hulls") {
  for (int d : {7, 9}) {
    CHECK(cross_validate(builtin_region("P2", d), builtin_halfspaces("P2", d), 300, 2).disagreements.empty());
    CHECK(cross_validate(builtin_region("K3", d), builtin_halfspaces("K3", d), 300, 2).disagreements.empty());
  }
  CHECK(cross_validate(builtin_region("P2", 7), builtin_halfspaces("Pk", 7, 2), 300, 3).disagreements.empty());
  CHECK(cross_validate(builtin_region("sphavg", 7), builtin_halfspaces("sphavg", 7), 300, 3).disagreements.empty());
}

TEST_CASE("dimension floors") {
  CHECK_THROWS_AS(builtin_region("P1", 4), DimensionFloorError);
  CHECK_THROWS_AS(builtin_region("K3t", 6), DimensionFloorError);
  CHECK_THROWS_AS(builtin_region("K4", 8), DimensionFloorError);
  CHECK_NOTHROW(builtin_region("K4", 9));
  CHECK_THROWS_AS(builtin_region("nope", 9), ValidationError);
}

TEST_CASE("exponent calculators") {
  CHECK(conjectured_exponent(5, pt("2/3,2/3")) == Rational(-5, 6));
  CHECK(conjectured_exponent(5, pt("2/3,2/3,2/3")) == Rational(-5, 2));
  CHECK(conjectured_exponent(7, pt("0,0,0")) == Rational(7, 2));
  CHECK(conjectured_exponent(7, pt("0,3/4,0,3/4")) == Rational(-7, 4));
  CHECK(interpolated_exponent(5, Rational(1, 2), Rational(2, 3), Rational(1, 3)) == Rational(-7, 6));
  for (int d = 5; d <= 9; ++d) {
    CHECK(interpolated_exponent(d, 0, Rational(1, 2), Rational(1, 2)) == Rational(-(d - 2), 2));
  }
  CHECK_THROWS_AS(interpolated_exponent(5, Rational(3, 2), Rational(1, 2), Rational(1, 2)), ValidationError);
}

TEST_CASE("sampling is deterministic and in the unit cube") {
  const auto a = sample_points(3, 200, 9);
  const auto b = sample_points(3, 200, 9);
  CHECK(a == b);
  CHECK(a != sample_points(3, 200, 10));
  for (const auto& p : a) {
    for (const auto& x : p) {
      CHECK(x >= 0);
      CHECK(x <= 1);
    }
  }
}

TEST_CASE("point parsing") {
  CHECK(pt("1/2, 1/3").size() == 2);
  CHECK_THROWS_AS(pt("0.5,0.5"), ValidationError);
  CHECK_THROWS_AS(hull_membership(pt("1/2"), builtin_region("P1", 5)), DimensionMismatch);
}
