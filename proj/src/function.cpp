#include "distgraph/function.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

#include "distgraph/errors.hpp"
#include "distgraph/symmetry.hpp"

namespace distgraph {

FunctionOnLattice::FunctionOnLattice(int dim) {
  validate_dimension(dim);
  *this = build(PointSet(dim), {});
}

FunctionOnLattice FunctionOnLattice::build(PointSet pts, std::vector<double> values) {
  const int d = pts.dim();
  const std::size_t n = pts.size();
  // lexicographic order makes iteration deterministic
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto pa = pts[a];
    auto pb = pts[b];
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  });
  auto impl = std::make_shared<Impl>();
  impl->support = PointSet(d);
  impl->support.reserve(n);
  for (std::size_t i : order) {
    if (!std::isfinite(values[i])) throw ValidationError("function values must be finite");
    if (values[i] == 0.0) continue;
    impl->support.push_back(pts[i]);
    impl->values.push_back(values[i]);
  }
  impl->index = PointIndex(impl->support);
  impl->lo.assign(d, 1);
  impl->hi.assign(d, 0);
  const std::size_t m = impl->support.size();
  if (m > 0) {
    impl->lo = impl->support.point(0);
    impl->hi = impl->lo;
    for (std::size_t i = 1; i < m; ++i) {
      auto p = impl->support[i];
      for (int j = 0; j < d; ++j) {
        impl->lo[j] = std::min(impl->lo[j], p[j]);
        impl->hi[j] = std::max(impl->hi[j], p[j]);
      }
    }
  }
  for (double v : impl->values) {
    if (v != std::floor(v)) impl->integral = false;
  }
  // invariant iff each orbit is fully supported with a single value
  std::vector<Coord> key(d);
  struct Cls {
    double value;
    std::uint64_t count;
  };
  std::unordered_map<std::string, Cls> classes;
  for (std::size_t i = 0; i < m && impl->invariant; ++i) {
    canonicalize(impl->support[i], key.data());
    std::string k(reinterpret_cast<const char*>(key.data()), key.size() * sizeof(Coord));
    auto [it, fresh] = classes.try_emplace(k, Cls{impl->values[i], 0});
    if (!fresh && it->second.value != impl->values[i]) impl->invariant = false;
    ++it->second.count;
  }
  if (impl->invariant) {
    for (const auto& [k, c] : classes) {
      std::span<const Coord> p(reinterpret_cast<const Coord*>(k.data()), static_cast<std::size_t>(d));
      if (orbit_size(p) != c.count) {
        impl->invariant = false;
        break;
      }
    }
  }
  return FunctionOnLattice(std::shared_ptr<const Impl>(std::move(impl)));
}

FunctionOnLattice FunctionOnLattice::from_entries(int dim, const std::vector<std::pair<Point, double>>& entries) {
  validate_dimension(dim);
  PointSet pts(dim);
  std::vector<double> values;
  values.reserve(entries.size());
  for (const auto& [p, v] : entries) {
    if (static_cast<int>(p.size()) != dim) throw DimensionMismatch("function entry has wrong dimension");
    pts.push_back(p);
    values.push_back(v);
  }
  return build(std::move(pts), std::move(values));
}

FunctionOnLattice FunctionOnLattice::from_points(const PointSet& pts, const std::vector<double>& values) {
  validate_dimension(pts.dim());
  if (values.size() != pts.size()) throw ValidationError("value count does not match point count");
  return build(pts, values);
}

FunctionOnLattice FunctionOnLattice::indicator(const PointSet& pts) {
  return from_points(pts, std::vector<double>(pts.size(), 1.0));
}

FunctionOnLattice FunctionOnLattice::delta(int dim) { return delta_at(Point(dim, 0)); }

FunctionOnLattice FunctionOnLattice::delta_at(const Point& p) {
  return from_entries(static_cast<int>(p.size()), {{p, 1.0}});
}

double FunctionOnLattice::at(std::span<const Coord> x) const {
  const std::int64_t i = impl_->index.find(x);
  return i < 0 ? 0.0 : impl_->values[static_cast<std::size_t>(i)];
}

double FunctionOnLattice::sum() const {
  double s = 0, c = 0;
  for (double v : impl_->values) {
    const double t = s + v;
    c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
    s = t;
  }
  return s + c;
}

double FunctionOnLattice::max_abs() const {
  double m = 0;
  for (double v : impl_->values) m = std::max(m, std::abs(v));
  return m;
}

std::string function_to_json(const FunctionOnLattice& f) {
  nlohmann::json j;
  j["dimension"] = f.dim();
  j["entries"] = nlohmann::json::array();
  for (std::size_t i = 0; i < f.support_size(); ++i) {
    j["entries"].push_back({{"point", f.support().point(i)}, {"value", f.values()[i]}});
  }
  return j.dump();
}

FunctionOnLattice function_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("function JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dimension") || !j.contains("entries")) {
    throw ValidationError("function JSON needs \"dimension\" and \"entries\"");
  }
  const int d = j["dimension"].get<int>();
  validate_dimension(d);
  std::vector<std::pair<Point, double>> entries;
  for (const auto& e : j["entries"]) {
    if (!e.contains("point") || !e.contains("value")) throw ValidationError("function entry needs point and value");
    entries.emplace_back(e["point"].get<Point>(), e["value"].get<double>());
  }
  return FunctionOnLattice::from_entries(d, entries);
}

}  // namespace distgraph
