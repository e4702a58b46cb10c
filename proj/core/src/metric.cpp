#include "forge/metric.hpp"

#include <algorithm>
#include <sstream>

namespace forge {

namespace {
constexpr std::size_t kMaxListedTriangles = 16;
}

std::string to_string(Rational const& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string const& text) {
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(text));
    auto num = std::stoll(text.substr(0, slash));
    auto den = std::stoll(text.substr(slash + 1));
    if (den == 0) throw Error("zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (std::logic_error const&) {
    throw Error("not a rational: '" + text + "'");
  }
}

Rational ceil_to_grid(Rational const& d, int m) {
  if (m <= 0) throw Error("grid size must be positive");
  // least k with k/m >= d  <=>  k >= d*m
  Rational scaled = d * Rational(m);
  std::int64_t k = scaled.numerator() / scaled.denominator();
  if (Rational(k) < scaled) ++k;
  return Rational(k, m);
}

DistanceSpec DistanceSpec::integer_range(int p) {
  if (p < 1) throw Error("integer-range requires p >= 1");
  return {Kind::IntegerRange, p};
}

DistanceSpec DistanceSpec::rational_grid(int m) {
  if (m < 1) throw Error("rational-grid requires m >= 1");
  return {Kind::RationalGrid, m};
}

DistanceSpec DistanceSpec::unit_interval() { return {Kind::RationalUnitInterval, 0}; }

bool DistanceSpec::permits(Rational const& d) const {
  switch (kind) {
    case Kind::IntegerRange:
      return d.denominator() == 1 && d >= 1 && d <= param;
    case Kind::RationalGrid:
      return d > 0 && d <= 1 && ceil_to_grid(d, param) == d;
    case Kind::RationalUnitInterval:
      return d > 0 && d <= 1;
  }
  return false;
}

std::vector<Rational> DistanceSpec::values() const {
  std::vector<Rational> out;
  switch (kind) {
    case Kind::IntegerRange:
      for (int v = 1; v <= param; ++v) out.emplace_back(v);
      break;
    case Kind::RationalGrid:
      for (int k = 1; k <= param; ++k) out.emplace_back(k, param);
      break;
    case Kind::RationalUnitInterval:
      throw Error("the rational unit interval has no finite value set");
  }
  return out;
}

Rational DistanceSpec::cap() const {
  return kind == Kind::IntegerRange ? Rational(param) : Rational(1);
}

std::string DistanceSpec::name() const {
  switch (kind) {
    case Kind::IntegerRange:
      return "integer-range";
    case Kind::RationalGrid:
      return "rational-grid";
    case Kind::RationalUnitInterval:
      return "rational-unit-interval";
  }
  return "?";
}

FiniteMetricSpace::FiniteMetricSpace(DistanceSpec spec, std::vector<PointId> points,
                                     std::vector<std::vector<Rational>> dist)
    : spec_(spec), points_(std::move(points)) {
  auto const n = points_.size();
  if (dist.size() != n) throw Error("distance matrix has wrong number of rows");
  dist_.reserve(n * n);
  for (auto const& row : dist) {
    if (row.size() != n) throw Error("distance matrix row has wrong length");
    dist_.insert(dist_.end(), row.begin(), row.end());
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(points_[i], i).second) {
      throw Error("duplicate point id " + std::to_string(points_[i]));
    }
  }
}

std::size_t FiniteMetricSpace::index_of(PointId x) const {
  auto it = index_.find(x);
  if (it == index_.end()) throw Error("unknown point id " + std::to_string(x));
  return it->second;
}

FiniteMetricSpace FiniteMetricSpace::induced(std::span<PointId const> subset) const {
  std::vector<std::size_t> idx;
  idx.reserve(subset.size());
  for (auto x : subset) idx.push_back(index_of(x));
  std::vector<std::vector<Rational>> m(subset.size(), std::vector<Rational>(subset.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m[i][j] = at(idx[i], idx[j]);
  return {spec_, {subset.begin(), subset.end()}, std::move(m)};
}

FiniteMetricSpace FiniteMetricSpace::with_point(PointId id, std::span<Rational const> row) const {
  if (row.size() != size()) throw Error("extension row has wrong length");
  if (contains(id)) throw Error("point id " + std::to_string(id) + " already present");
  auto m = matrix();
  for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(row[i]);
  std::vector<Rational> last(row.begin(), row.end());
  last.emplace_back(0);
  m.push_back(std::move(last));
  auto pts = points_;
  pts.push_back(id);
  return {spec_, std::move(pts), std::move(m)};
}

FiniteMetricSpace FiniteMetricSpace::with_spec(DistanceSpec spec) const {
  auto copy = *this;
  copy.spec_ = spec;
  return copy;
}

std::vector<std::vector<Rational>> FiniteMetricSpace::matrix() const {
  auto const n = size();
  std::vector<std::vector<Rational>> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i].assign(dist_.begin() + i * n, dist_.begin() + (i + 1) * n);
  return m;
}

bool FiniteMetricSpace::operator==(FiniteMetricSpace const& other) const {
  return spec_ == other.spec_ && points_ == other.points_ && dist_ == other.dist_;
}

std::string ValidationReport::summary() const {
  if (ok()) return "pass";
  std::ostringstream out;
  out << violations.size() << " violation(s)";
  if (triangle_failures > 0) out << ", " << triangle_failures << " triangle failure(s)";
  for (auto const& v : violations) out << "\n  " << v.message;
  return out.str();
}

ValidationReport validate_metric(FiniteMetricSpace const& space) {
  ValidationReport report;
  auto const& pts = space.points();
  auto const n = space.size();
  auto const& spec = space.spec();

  for (std::size_t i = 0; i < n; ++i) {
    if (space.at(i, i) != 0) {
      report.violations.push_back({Violation::Kind::Diagonal, {pts[i]},
                                   "d(" + std::to_string(pts[i]) + "," + std::to_string(pts[i]) +
                                       ") = " + to_string(space.at(i, i)) + " != 0"});
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      auto const& a = space.at(i, j);
      auto const& b = space.at(j, i);
      std::string pair = "(" + std::to_string(pts[i]) + "," + std::to_string(pts[j]) + ")";
      if (a != b) {
        report.violations.push_back({Violation::Kind::Asymmetric, {pts[i], pts[j]},
                                     "asymmetric pair " + pair + ": " + to_string(a) + " vs " +
                                         to_string(b)});
      }
      if (!spec.permits(a)) {
        std::string why = a == 0 ? " (duplicate point)" : "";
        report.violations.push_back({Violation::Kind::DistanceSet, {pts[i], pts[j]},
                                     "distance " + to_string(a) + " at " + pair +
                                         " not permitted by " + spec.name() + why});
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (space.at(i, k) > space.at(i, j) + space.at(j, k)) {
          ++report.triangle_failures;
          if (report.triangle_failures <= kMaxListedTriangles) {
            report.violations.push_back(
                {Violation::Kind::Triangle, {pts[i], pts[j], pts[k]},
                 "triangle (" + std::to_string(pts[i]) + "," + std::to_string(pts[j]) + "," +
                     std::to_string(pts[k]) + "): d(" + std::to_string(pts[i]) + "," +
                     std::to_string(pts[k]) + ") = " + to_string(space.at(i, k)) + " > " +
                     to_string(space.at(i, j)) + " + " + to_string(space.at(j, k))});
          }
        }
      }
    }
  }
  return report;
}

FiniteMetricSpace ceiling_metric(FiniteMetricSpace const& space, int m) {
  if (m <= 0) throw Error("ceiling_metric requires m >= 1");
  auto mat = space.matrix();
  for (std::size_t i = 0; i < mat.size(); ++i) {
    for (std::size_t j = 0; j < mat.size(); ++j) {
      auto const& d = mat[i][j];
      if (d < 0 || d > 1) throw Error("ceiling_metric requires distances in [0,1]");
      if (i != j) mat[i][j] = ceil_to_grid(d, m);
    }
  }
  FiniteMetricSpace out(DistanceSpec::rational_grid(m), space.points(), std::move(mat));
  auto report = validate_metric(out);
  if (!report.ok()) throw Error("ceiling metric failed validation: " + report.summary());
  return out;
}

std::vector<Rational> distance_vector(FiniteMetricSpace const& space, PointId x,
                                      std::span<PointId const> base) {
  auto const xi = space.index_of(x);
  std::vector<Rational> out;
  out.reserve(base.size());
  for (auto b : base) out.push_back(space.at(xi, space.index_of(b)));
  return out;
}

FiniteMetricSpace scale_to_unit(FiniteMetricSpace const& space) {
  if (space.spec().kind != DistanceSpec::Kind::IntegerRange) {
    throw Error("scale_to_unit expects an integer-range space");
  }
  auto const p = space.spec().param;
  auto mat = space.matrix();
  for (auto& row : mat)
    for (auto& d : row) d /= p;
  return {DistanceSpec::rational_grid(p), space.points(), std::move(mat)};
}

}  // namespace forge
