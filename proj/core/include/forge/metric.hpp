#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/rational.hpp>

// With C++20 rewritten comparisons, boost's mixed `int == rational<long>` template
// resolves to itself and recurses forever. Exact non-template overloads win instead.
namespace boost {
inline bool operator==(rational<std::int64_t> const& a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator==(int b, rational<std::int64_t> const& a) { return a == rational<std::int64_t>(b); }
}  // namespace boost

namespace forge {

/// Exact distance value. Denominators stay small (grid sizes), so 64-bit is plenty.
using Rational = boost::rational<std::int64_t>;

/// Stable identifier of a point inside one ambient space. Never reused.
using PointId = std::uint32_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_string(Rational const& r);
Rational parse_rational(std::string const& text);

/// Least k/m with k/m >= d.
Rational ceil_to_grid(Rational const& d, int m);

struct DistanceSpec {
  enum class Kind { IntegerRange, RationalGrid, RationalUnitInterval };

  Kind kind = Kind::IntegerRange;
  int param = 1;  // p for IntegerRange, m for RationalGrid, unused otherwise

  static DistanceSpec integer_range(int p);
  static DistanceSpec rational_grid(int m);
  static DistanceSpec unit_interval();

  /// Whether `d` may appear off the diagonal.
  bool permits(Rational const& d) const;

  /// The off-diagonal value set, ascending. Throws for the (infinite) unit interval.
  std::vector<Rational> values() const;

  /// Largest permitted off-diagonal value.
  Rational cap() const;

  std::string name() const;

  bool operator==(DistanceSpec const&) const = default;
};

/// Dense, immutable finite metric space (not validated on construction; see validate_metric).
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  FiniteMetricSpace(DistanceSpec spec, std::vector<PointId> points,
                    std::vector<std::vector<Rational>> dist);

  DistanceSpec const& spec() const { return spec_; }
  std::vector<PointId> const& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  bool contains(PointId x) const { return index_.contains(x); }
  /// Throws forge::Error on unknown ids.
  std::size_t index_of(PointId x) const;

  Rational const& at(std::size_t i, std::size_t j) const { return dist_[i * points_.size() + j]; }
  Rational const& distance(PointId x, PointId y) const { return at(index_of(x), index_of(y)); }

  /// Induced subspace on `subset`, in the given order.
  FiniteMetricSpace induced(std::span<PointId const> subset) const;

  /// Copy with one extra point `id` whose distance to points()[i] is row[i].
  FiniteMetricSpace with_point(PointId id, std::span<Rational const> row) const;

  /// Same matrix under a different distance spec.
  FiniteMetricSpace with_spec(DistanceSpec spec) const;

  std::vector<std::vector<Rational>> matrix() const;

  bool operator==(FiniteMetricSpace const& other) const;

 private:
  DistanceSpec spec_;
  std::vector<PointId> points_;
  std::vector<Rational> dist_;
  std::unordered_map<PointId, std::size_t> index_;
};

struct Violation {
  enum class Kind { Diagonal, Asymmetric, DistanceSet, Triangle };
  Kind kind;
  std::vector<PointId> witnesses;  // offending pair or triple
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::size_t triangle_failures = 0;  // total count; only the first few are listed

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate_metric(FiniteMetricSpace const& space);

/// Rounds every distance up to the grid {k/m}. Rejects m = 0 and distances outside [0,1].
FiniteMetricSpace ceiling_metric(FiniteMetricSpace const& space, int m);

/// (dist(x,b))_{b in base}, in base order.
std::vector<Rational> distance_vector(FiniteMetricSpace const& space, PointId x,
                                      std::span<PointId const> base);

/// Divides an integer-range(p) space by p, giving a rational-grid(p) space.
FiniteMetricSpace scale_to_unit(FiniteMetricSpace const& space);

}  // namespace forge
