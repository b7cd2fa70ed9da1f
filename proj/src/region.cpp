#include "distgraph/region.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>

#include <json.hpp>

#include "distgraph/errors.hpp"

namespace distgraph {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Interior: return "interior";
    case Verdict::Boundary: return "boundary";
    case Verdict::Outside: return "outside";
  }
  return "outside";
}

Rational LinearExpr::eval(const HolderPoint& x) const {
  Rational s = constant;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) s += coeffs[i] * x[i];
  }
  return s;
}

namespace {

// ---- exact simplex ------------------------------------------------------

// max c.x subject to A x = b, x >= 0; nullopt when infeasible. Bland's rule.
// The problems solved here are bounded, unboundedness is reported as infeasible use.
std::optional<Rational> simplex_max(std::vector<std::vector<Rational>> A, std::vector<Rational> b,
                                    const std::vector<Rational>& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0) {
      for (auto& v : A[i]) v = -v;
      b[i] = -b[i];
    }
  }
  // columns: n originals, m artificials, rhs
  const std::size_t cols = n + m + 1;
  std::vector<std::vector<Rational>> T(m + 1, std::vector<Rational>(cols, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1;
    T[i][cols - 1] = b[i];
    basis[i] = n + i;
  }
  // phase one: maximize -sum(artificials); objective row holds reduced costs and -value
  auto& obj = T[m];
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) obj[j] += T[i][j];
    obj[cols - 1] += b[i];
  }

  auto pivot = [&](std::size_t r, std::size_t e) {
    const Rational pv = T[r][e];
    for (auto& v : T[r]) v /= pv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == r || T[i][e] == 0) continue;
      const Rational f = T[i][e];
      for (std::size_t j = 0; j < cols; ++j) {
        if (T[r][j] != 0) T[i][j] -= f * T[r][j];
      }
    }
    basis[r] = e;
  };

  auto optimize = [&](std::size_t usable) -> bool {
    while (true) {
      std::size_t e = usable;
      for (std::size_t j = 0; j < usable; ++j) {
        if (T[m][j] > 0) {
          e = j;
          break;
        }
      }
      if (e == usable) return true;
      std::size_t r = m;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (T[i][e] <= 0) continue;
        const Rational ratio = T[i][cols - 1] / T[i][e];
        if (r == m || ratio < best || (ratio == best && basis[i] < basis[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r == m) return false;
      pivot(r, e);
    }
  };

  optimize(n);
  // obj rhs holds -(phase one value) = sum of artificials still positive
  if (T[m][cols - 1] != 0) return std::nullopt;

  // drive artificials out of the basis; rows where that is impossible are redundant
  std::vector<char> keep(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    std::size_t e = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (T[i][j] != 0) {
        e = j;
        break;
      }
    }
    if (e == n) {
      keep[i] = 0;
    } else {
      pivot(i, e);
    }
  }
  // phase two objective
  for (std::size_t j = 0; j < cols; ++j) obj[j] = 0;
  for (std::size_t j = 0; j < n; ++j) obj[j] = c[j];
  for (std::size_t i = 0; i < m; ++i) {
    if (!keep[i]) continue;
    const Rational cb = c[basis[i]];
    if (cb == 0) continue;
    for (std::size_t j = 0; j < cols; ++j) obj[j] -= cb * T[i][j];
  }
  // redundant rows are all zero over the original columns, so they never pivot
  if (!optimize(n)) return std::nullopt;
  return -T[m][cols - 1];
}

// ---- linear algebra for facets -----------------------------------------

// nullspace vector of an (k-1) x k matrix of full row rank, nullopt otherwise
std::optional<std::vector<Rational>> normal_of(std::vector<std::vector<Rational>> M, int k) {
  const int rows = static_cast<int>(M.size());
  std::vector<int> pivot_col;
  int r = 0;
  for (int col = 0; col < k && r < rows; ++col) {
    int p = -1;
    for (int i = r; i < rows; ++i) {
      if (M[i][col] != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    std::swap(M[r], M[p]);
    const Rational pv = M[r][col];
    for (auto& v : M[r]) v /= pv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || M[i][col] == 0) continue;
      const Rational f = M[i][col];
      for (int j = 0; j < k; ++j) M[i][j] -= f * M[r][j];
    }
    pivot_col.push_back(col);
    ++r;
  }
  if (r != k - 1) return std::nullopt;
  int free_col = -1;
  for (int col = 0, t = 0; col < k; ++col) {
    if (t < r && pivot_col[t] == col) {
      ++t;
    } else {
      free_col = col;
      break;
    }
  }
  std::vector<Rational> nvec(k, Rational(0));
  nvec[free_col] = 1;
  for (int i = 0; i < r; ++i) nvec[pivot_col[i]] = -M[i][free_col];
  return nvec;
}

int affine_rank(const std::vector<HolderPoint>& v, int k) {
  std::vector<std::vector<Rational>> M;
  for (std::size_t i = 1; i < v.size(); ++i) {
    std::vector<Rational> row(k);
    for (int j = 0; j < k; ++j) row[j] = v[i][j] - v[0][j];
    M.push_back(row);
  }
  int r = 0;
  for (int col = 0; col < k && r < static_cast<int>(M.size()); ++col) {
    int p = -1;
    for (int i = r; i < static_cast<int>(M.size()); ++i) {
      if (M[i][col] != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    std::swap(M[r], M[p]);
    for (int i = r + 1; i < static_cast<int>(M.size()); ++i) {
      if (M[i][col] == 0) continue;
      const Rational f = M[i][col] / M[r][col];
      for (int j = 0; j < k; ++j) M[i][j] -= f * M[r][j];
    }
    ++r;
  }
  return r;
}

void check_point(const HolderPoint& p, int arity) {
  if (static_cast<int>(p.size()) != arity) {
    throw DimensionMismatch("point has " + std::to_string(p.size()) + " coordinates, region arity is " +
                            std::to_string(arity));
  }
}

// ---- builtin regions ----------------------------------------------------

struct Consts {
  Rational c, e, f, g;
  explicit Consts(int d)
      : c(Rational(d - 1, d + 1)), e(Rational(d - 3, d + 1)), f(Rational(d - 5, d + 1)),
        g(Rational(d * d - 5, d * d - 1)) {}
};

std::vector<HolderPoint> unit_vectors(int k) {
  std::vector<HolderPoint> out;
  for (int i = 0; i < k; ++i) {
    HolderPoint p(k, Rational(0));
    p[i] = 1;
    out.push_back(p);
  }
  return out;
}

int simplex_size(const std::string& name) {
  if (name.size() < 2 || name[0] != 'K') return -1;
  const std::string rest = name.substr(1);
  if (rest.find_first_not_of("0123456789") != std::string::npos || rest.size() > 2) return -1;
  return std::stoi(rest);
}

int required_floor(const std::string& name) {
  if (name == "P1" || name == "P2" || name == "C4" || name == "Y" || name == "sphavg" || name == "Pk") return 5;
  if (name == "C4t" || name == "K3t") return 7;
  const int k = simplex_size(name);
  if (k >= 2) return 2 * k + 1;
  if (name.size() > 1 && name[0] == 'P' && name.find_first_not_of("0123456789", 1) == std::string::npos) return 5;
  return -1;
}

LinearExpr expr(std::vector<Rational> coeffs, Rational constant) { return LinearExpr{std::move(coeffs), constant}; }

// base hypotheses: sum > 1 and 0 < x_i < 1
void add_standard_hypotheses(HalfSpaceSystem& s) {
  const int k = s.arity;
  s.hypotheses.push_back(expr(std::vector<Rational>(k, Rational(-1)), 1));
  for (int i = 0; i < k; ++i) {
    std::vector<Rational> lo(k, Rational(0)), hi(k, Rational(0));
    lo[i] = -1;
    hi[i] = 1;
    s.hypotheses.push_back(expr(lo, 0));
    s.hypotheses.push_back(expr(hi, -1));
  }
}

Guard less(std::vector<Rational> coeffs, Rational constant) { return Guard{expr(std::move(coeffs), constant), true}; }
Guard at_most(std::vector<Rational> coeffs, Rational constant) {
  return Guard{expr(std::move(coeffs), constant), false};
}

HalfSpaceSystem p2_system(int d) {
  const Consts k(d);
  const Rational a(2, d - 1), b(d - 1, 2);
  HalfSpaceSystem s;
  s.arity = 3;
  s.name = "P2";
  s.closed_guards = true;
  add_standard_hypotheses(s);
  s.rules.push_back({{at_most({1, 0, 0}, -k.c), at_most({0, 0, 1}, -k.c)}, {expr({a, 1, a}, -1)}, "1"});
  s.rules.push_back({{at_most({0, 0, 1}, -k.c), less({-1, 0, 0}, k.c)}, {expr({b, 1, a}, -b)}, "2"});
  s.rules.push_back({{at_most({1, 0, 0}, -k.c), less({0, 0, -1}, k.c)}, {expr({a, 1, b}, -b)}, "3"});
  s.rules.push_back({{less({-1, 0, 0}, k.c), less({0, 0, -1}, k.c)}, {expr({1, a, 1}, a - 2)}, "4"});
  return s;
}

HalfSpaceSystem k3_system(int d) {
  const Consts k(d);
  const Rational a(2, d - 1);
  HalfSpaceSystem s;
  s.arity = 3;
  s.name = "K3";
  s.closed_guards = true;
  add_standard_hypotheses(s);
  s.rules.push_back({{less({1, 1, 0}, -k.c)}, {expr({a, a, 1}, -1)}, "2"});
  s.rules.push_back({{less({0, -1, 0}, k.c)}, {expr({a, 1, a}, -1)}, "3"});
  s.rules.push_back({{less({-1, 0, 0}, k.c)}, {expr({1, a, a}, -1)}, "4"});
  s.rules.push_back({{less({1, 0, 0}, -k.c), less({0, 1, 0}, -k.c), less({-1, -1, 0}, k.c)},
                     {expr({1, 1, 1}, -2 * k.c)},
                     "5"});
  return s;
}

HalfSpaceSystem k3t_system(int d) {
  const Consts k(d);
  const Rational a(2, d - 1), b(d - 1, 2);
  HalfSpaceSystem s;
  s.arity = 4;
  s.name = "K3t";
  s.closed_guards = true;
  add_standard_hypotheses(s);
  const Guard x4_small = less({0, 0, 0, 1}, -k.c);
  const Guard x4_large = at_most({0, 0, 0, -1}, k.c);
  const Guard s12_small = less({1, 1, 0, 0}, -k.c);
  const Guard x1_large = less({-1, 0, 0, 0}, k.c);
  const Guard x2_large = less({0, -1, 0, 0}, k.c);
  const std::vector<Guard> mixed = {less({1, 0, 0, 0}, -k.c), less({0, 1, 0, 0}, -k.c), less({-1, -1, 0, 0}, k.c)};
  auto with = [](std::vector<Guard> g, const Guard& extra) {
    g.push_back(extra);
    return g;
  };
  s.rules.push_back({{s12_small, x4_small}, {expr({a, a, 1, a}, -1)}, "2"});
  s.rules.push_back({{x2_large, x4_small}, {expr({a, 1, a, b}, -1)}, "3"});
  s.rules.push_back({{x1_large, x4_small}, {expr({1, a, a, b}, -1)}, "4"});
  s.rules.push_back({with(mixed, x4_small), {expr({1, 1, 1, a}, -2 * k.c)}, "5"});
  s.rules.push_back({{s12_small, x4_large}, {expr({1, 1, 1, a}, -b)}, "6"});
  s.rules.push_back({{x2_large, x4_large}, {expr({a, 1, a, 1}, a - 2)}, "7"});
  s.rules.push_back({{x1_large, x4_large}, {expr({1, a, a, 1}, a - 2)}, "8"});
  s.rules.push_back({with(mixed, x4_large), {expr({1, 1, 1, b}, -(2 * k.c + Rational(d - 3, 2)))}, "9"});
  return s;
}

// chain with k edges, arity k+1; s = sum of coordinates 3..k+1
HalfSpaceSystem pk_system(int d, int k) {
  if (k < 1) throw ValidationError("Pk needs k >= 1");
  const Consts c(d);
  const Rational a(2, d - 1), b(d - 1, 2);
  const int n = k + 1;
  HalfSpaceSystem s;
  s.arity = n;
  s.name = "P" + std::to_string(k);
  s.combine = HalfSpaceSystem::Combine::AnyActive;
  add_standard_hypotheses(s);
  auto vec = [&](const Rational& x1, const Rational& x2, const Rational& rest) {
    std::vector<Rational> v(n, rest);
    v[0] = x1;
    v[1] = x2;
    return v;
  };
  const Rational z(0);
  const Guard x1_low = at_most(vec(1, z, z), -c.c);
  const Guard x1_high = less(vec(-1, z, z), c.c);
  const Guard s_low = at_most(vec(z, z, 1), -c.c);
  const Guard s_high = less(vec(z, z, -1), c.c);
  s.rules.push_back({{x1_low, s_low}, {expr(vec(a, 1, a), -1)}, "1"});
  s.rules.push_back({{x1_high, s_low}, {expr(vec(b, 1, a), -b)}, "2"});
  s.rules.push_back({{s_high, x1_low}, {expr(vec(a, 1, b), -b)}, "3"});
  s.rules.push_back({{s_high, x1_high}, {expr(vec(1, a, 1), a - 2)}, "4"});
  return s;
}

// (1/p, 1/q) region of the spherical average
HalfSpaceSystem sphavg_system(int d) {
  const Consts c(d);
  const Rational a(2, d - 1), b(d - 1, 2);
  HalfSpaceSystem s;
  s.arity = 2;
  s.name = "sphavg";
  s.combine = HalfSpaceSystem::Combine::AnyActive;
  s.rules.push_back({{less({1, 0}, -c.c)}, {expr({-1, 1}, 0), expr({a, -1}, 0)}, "low"});
  s.rules.push_back({{at_most({-1, 0}, c.c)}, {expr({-1, 1}, 0), expr({b, -1}, 1 - b)}, "high"});
  return s;
}

bool guard_holds(const Guard& g, const HolderPoint& x, bool closed) {
  const Rational v = g.expr.eval(x);
  return (g.strict && !closed) ? v < 0 : v <= 0;
}

// of a strict condition expr < 0
Verdict strict_status(const LinearExpr& e, const HolderPoint& x) {
  const Rational v = e.eval(x);
  if (v < 0) return Verdict::Interior;
  return v == 0 ? Verdict::Boundary : Verdict::Outside;
}

Verdict worst(Verdict a, Verdict b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }
Verdict best(Verdict a, Verdict b) { return static_cast<int>(a) < static_cast<int>(b) ? a : b; }

// bounded deterministic integer in [lo, hi]
std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return lo + static_cast<std::int64_t>(r % span);
}

}  // namespace

void check_region_floor(const std::string& graph_name, int d) {
  const int floor = required_floor(graph_name);
  if (floor < 0) throw ValidationError("no region is known for '" + graph_name + "'");
  if (d < floor) {
    throw DimensionFloorError(graph_name + " region needs d >= " + std::to_string(floor) + ", got d=" +
                              std::to_string(d));
  }
}

RegionSpec builtin_region(const std::string& name, int d) {
  check_region_floor(name, d);
  const Consts k(d);
  const Rational z(0);
  const Rational& c = k.c;
  const Rational& e = k.e;
  const Rational& g = k.g;
  RegionSpec r;
  r.provenance = name;
  std::vector<HolderPoint> extra;
  int arity = 0;
  if (name == "P1") {
    arity = 2;
    extra = {{c, c}};
    r.provenance = "P1 chain theorem";
  } else if (name == "P2") {
    arity = 3;
    extra = {{c, c, z}, {z, c, c}, {c, e, c}, {c, z, g}, {g, z, c}};
    r.provenance = "P2 chain theorem";
  } else if (name == "C4t") {
    arity = 4;
    extra = {{c, c, z, z}, {z, c, c, z}, {z, z, c, c}, {c, z, z, c}, {c, z, c, z}};
    r.provenance = "C4t diamond theorem";
  } else if (name == "C4") {
    arity = 4;
    extra = {{c, c, z, z}, {z, c, c, z}, {z, z, c, c}, {c, z, z, c}};
    r.provenance = "C4 diamond theorem";
  } else if (name == "K3t") {
    arity = 4;
    extra = {{z, c, z, c}, {c, c, z, z}, {z, z, c, c}, {z, c, c, z}, {z, c, e, c}, {c, z, e, c},
             {e, c, z, c}, {c, e, z, c}, {z, c, z, g}, {z, g, z, c}, {c, z, z, g}, {g, z, z, c}};
    r.provenance = "K3t triangle-with-tail theorem";
  } else if (name == "Y") {
    arity = 4;
    const Rational& f = k.f;
    extra = {{z, c, c, z}, {z, z, c, c}, {c, z, c, z}, {c, c, f, c}, {c, g, z, z}, {g, c, z, z}, {z, c, z, g},
             {z, g, z, c}, {c, z, z, g}, {g, z, z, c}, {c, c, e, z}, {z, c, e, c}, {c, z, e, c}};
    r.provenance = "Y theorem";
  } else if (name == "sphavg") {
    r.arity = 2;
    r.vertices = {{z, z}, {1, 1}, {c, Rational(2, d + 1)}};
    r.provenance = "spherical average region";
    return r;
  } else if (const int s = simplex_size(name); s >= 2) {
    arity = s;
    for (int i = 0; i < s; ++i) {
      for (int j = i + 1; j < s; ++j) {
        HolderPoint p(s, z);
        p[i] = c;
        p[j] = c;
        extra.push_back(p);
      }
    }
    r.provenance = "K" + std::to_string(s) + " simplex theorem";
  } else {
    throw ValidationError("no vertex list is known for '" + name + "' (longer chains use the Pk system)");
  }
  r.arity = arity;
  r.vertices = unit_vectors(arity);
  for (auto& p : extra) {
    if (std::find(r.vertices.begin(), r.vertices.end(), p) == r.vertices.end()) r.vertices.push_back(p);
  }
  return r;
}

HalfSpaceSystem builtin_halfspaces(const std::string& name, int d, int k) {
  if (name == "P2") {
    check_region_floor("P2", d);
    return p2_system(d);
  }
  if (name == "K3") {
    check_region_floor("K3", d);
    return k3_system(d);
  }
  if (name == "K3t") {
    check_region_floor("K3t", d);
    return k3t_system(d);
  }
  if (name == "Pk") {
    check_region_floor("Pk", d);
    return pk_system(d, k);
  }
  if (name == "sphavg") {
    check_region_floor("sphavg", d);
    return sphavg_system(d);
  }
  throw ValidationError("unknown half-space system '" + name + "' (P2, K3, K3t, Pk, sphavg)");
}

Verdict hull_membership(const HolderPoint& point, const RegionSpec& region) {
  check_point(point, region.arity);
  const std::size_t n = region.vertices.size();
  const int k = region.arity;
  if (n == 0) return Verdict::Outside;
  // x = (mu_1..mu_n, t); point = sum (mu_i + t) v_i, sum (mu_i + t) = 1; maximize t
  std::vector<std::vector<Rational>> A(k + 1, std::vector<Rational>(n + 1, Rational(0)));
  std::vector<Rational> b(k + 1);
  for (int row = 0; row < k; ++row) {
    Rational total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      A[row][i] = region.vertices[i][row];
      total += region.vertices[i][row];
    }
    A[row][n] = total;
    b[row] = point[row];
  }
  for (std::size_t i = 0; i < n; ++i) A[k][i] = 1;
  A[k][n] = static_cast<int>(n);
  b[k] = 1;
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  const auto t = simplex_max(A, b, c);
  if (!t) return Verdict::Outside;
  return *t > 0 ? Verdict::Interior : Verdict::Boundary;
}

Verdict classify(const HolderPoint& point, const HalfSpaceSystem& system) {
  check_point(point, system.arity);
  Verdict v = Verdict::Interior;
  for (const auto& h : system.hypotheses) v = worst(v, strict_status(h, point));
  if (system.combine == HalfSpaceSystem::Combine::AllActive) {
    for (const auto& rule : system.rules) {
      const bool active = std::all_of(rule.guards.begin(), rule.guards.end(),
                                      [&](const Guard& g) { return guard_holds(g, point, system.closed_guards); });
      if (!active) continue;
      for (const auto& cond : rule.conditions) v = worst(v, strict_status(cond, point));
    }
    return v;
  }
  Verdict any = Verdict::Outside;
  for (const auto& rule : system.rules) {
    const bool active = std::all_of(rule.guards.begin(), rule.guards.end(),
                                    [&](const Guard& g) { return guard_holds(g, point, system.closed_guards); });
    if (!active) continue;
    Verdict r = Verdict::Interior;
    for (const auto& cond : rule.conditions) r = worst(r, strict_status(cond, point));
    any = best(any, r);
  }
  return worst(v, any);
}

HalfSpaceSystem facet_system(const RegionSpec& region) {
  const int k = region.arity;
  const auto& V = region.vertices;
  const int n = static_cast<int>(V.size());
  if (affine_rank(V, k) != k) throw ValidationError("facet derivation needs a full-dimensional hull");
  HalfSpaceSystem s;
  s.arity = k;
  s.name = region.provenance + " (facets)";
  std::set<std::vector<Rational>> seen;
  std::vector<int> pick(k);
  // all k-subsets of the vertices
  std::function<void(int, int)> rec = [&](int depth, int start) {
    if (depth == k) {
      std::vector<std::vector<Rational>> M;
      for (int j = 1; j < k; ++j) {
        std::vector<Rational> row(k);
        for (int t = 0; t < k; ++t) row[t] = V[pick[j]][t] - V[pick[0]][t];
        M.push_back(row);
      }
      auto normal = k == 1 ? std::optional<std::vector<Rational>>(std::vector<Rational>{Rational(1)})
                           : normal_of(M, k);
      if (!normal) return;
      Rational off = 0;
      for (int t = 0; t < k; ++t) off += (*normal)[t] * V[pick[0]][t];
      bool pos = false, neg = false;
      for (const auto& v : V) {
        Rational side = -off;
        for (int t = 0; t < k; ++t) side += (*normal)[t] * v[t];
        if (side > 0) pos = true;
        if (side < 0) neg = true;
      }
      if (pos && neg) return;
      std::vector<Rational> key = *normal;
      key.push_back(-off);
      if (pos) {
        for (auto& x : key) x = -x;
      }
      Rational scale = 0;
      for (const auto& x : key) {
        if (x != 0) {
          scale = abs(x);
          break;
        }
      }
      for (auto& x : key) x /= scale;
      if (!seen.insert(key).second) return;
      LinearExpr e;
      e.coeffs.assign(key.begin(), key.end() - 1);
      e.constant = key.back();
      s.hypotheses.push_back(e);
      return;
    }
    for (int i = start; i < n; ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return s;
}

Rational conjectured_exponent(int d, const HolderPoint& point) {
  if (point.empty()) throw ValidationError("point needs at least one coordinate");
  Rational s = 0;
  for (const auto& x : point) s += x;
  return Rational(d, 2) * (1 - s);
}

Rational interpolated_exponent(int d, const Rational& theta, const Rational& inv_p, const Rational& inv_q) {
  if (theta < 0 || theta > 1) throw ValidationError("theta must lie in [0, 1]");
  if (theta > 0 && theta < 1) {
    if (classify({inv_p, inv_q}, builtin_halfspaces("sphavg", d)) == Verdict::Outside) {
      throw ValidationError("base point lies outside the spherical-average region");
    }
  }
  const Rational ip = 1 - theta + theta * inv_p;
  const Rational iq = theta * inv_q;
  return Rational(d, 2) * (iq - ip) + (1 - theta);
}

std::vector<HolderPoint> sample_points(int arity, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<HolderPoint> out;
  out.reserve(samples);
  for (int s = 0; s < samples; ++s) {
    HolderPoint p(arity);
    for (int i = 0; i < arity; ++i) {
      while (true) {
        const std::int64_t den = draw(rng, 1, 64);
        const std::int64_t num = draw(rng, 0, den);
        const std::int64_t jitter = draw(rng, -1, 1);
        const Rational x = Rational(num, den) + Rational(jitter, 1024);
        if (x >= 0 && x <= 1) {
          p[i] = x;
          break;
        }
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

CrossValidationReport cross_validate(const RegionSpec& region, const HalfSpaceSystem& system, int samples,
                                     std::uint64_t seed) {
  if (region.arity != system.arity) throw DimensionMismatch("region and system arities differ");
  if (samples < 1) throw ValidationError("samples must be positive");
  CrossValidationReport rep;
  rep.region = region.provenance;
  rep.system = system.name;
  rep.samples = samples;
  rep.seed = seed;
  for (const auto& p : sample_points(region.arity, samples, seed)) {
    const Verdict h = hull_membership(p, region);
    const Verdict s = classify(p, system);
    if ((h == Verdict::Interior) != (s == Verdict::Interior)) rep.disagreements.push_back({p, h, s});
  }
  return rep;
}

namespace {
nlohmann::json point_json(const HolderPoint& p) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : p) a.push_back(format_rational(x));
  return a;
}
}  // namespace

std::string region_to_json(const RegionSpec& region) {
  nlohmann::json j;
  j["arity"] = region.arity;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : region.vertices) j["vertices"].push_back(point_json(v));
  j["provenance"] = region.provenance;
  return j.dump(2);
}

std::string report_to_json(const CrossValidationReport& report) {
  nlohmann::json j;
  j["region"] = report.region;
  j["system"] = report.system;
  j["samples"] = report.samples;
  j["seed"] = report.seed;
  j["disagreements"] = nlohmann::json::array();
  for (const auto& d : report.disagreements) {
    j["disagreements"].push_back({{"point", point_json(d.point)}, {"hull", to_string(d.hull)},
                                  {"system", to_string(d.system)}});
  }
  return j.dump(2);
}

HolderPoint parse_point(const std::string& text) {
  HolderPoint p = parse_rational_list(text);
  for (const auto& x : p) {
    if (x < 0 || x > 1) throw ValidationError("Holder reciprocals must lie in [0, 1], got " + format_rational(x));
  }
  return p;
}

}  // namespace distgraph
