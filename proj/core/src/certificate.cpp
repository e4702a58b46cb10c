#include "forge/certificate.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace forge {

Certificate make_certificate(AmbientSpace const& ambient, ColorId target, KatetovMap const& f,
                             CopyId copy, std::vector<PointId> copy_prefix,
                             std::vector<PointId> orbit_prefix, int audit_k, std::size_t audit_n) {
  if (!ambient.coloring()) throw Error("certificate needs a coloured ambient");
  Certificate c;
  c.p = ambient.p();
  c.seed = ambient.seed();
  c.coloring = *ambient.coloring();
  c.target = target;
  c.f = f;
  c.copy = copy;
  c.copy_prefix = std::move(copy_prefix);
  c.orbit_prefix = std::move(orbit_prefix);
  for (auto x : c.orbit_prefix) c.orbit_colors.push_back(ambient.color(x));
  std::vector<PointId> ids = c.copy_prefix;
  std::set<PointId> seen(ids.begin(), ids.end());
  for (auto x : f.domain)
    if (seen.insert(x).second) ids.push_back(x);
  for (auto b : c.coloring.base())
    if (seen.insert(b).second) ids.push_back(b);
  c.snapshot = ambient.snapshot(ids);
  c.ambient_digest = ambient.digest();
  c.audit_k = audit_k;
  c.audit_n = audit_n;
  return c;
}

std::string to_string(FaultCode c) {
  switch (c) {
    case FaultCode::MetricInvalid: return "metric-invalid";
    case FaultCode::NotRealizing: return "not-realizing";
    case FaultCode::WrongColor: return "wrong-color";
    case FaultCode::DomainNotInCopy: return "domain-not-in-copy";
    case FaultCode::MemberMissing: return "member-missing";
    case FaultCode::AuditUnmet: return "audit-unmet";
    case FaultCode::Malformed: return "malformed";
  }
  return "unknown";
}

bool VerificationReport::has(FaultCode c) const {
  return std::any_of(faults.begin(), faults.end(), [c](Fault const& f) { return f.code == c; });
}

std::string VerificationReport::summary() const {
  if (faults.empty()) return "ok";
  std::ostringstream os;
  for (std::size_t i = 0; i < faults.size() && i < 5; ++i) {
    if (i) os << "; ";
    os << to_string(faults[i].code) << ": " << faults[i].message;
  }
  if (faults.size() > 5) os << "; ... (" << faults.size() << " faults)";
  return os.str();
}

namespace {

std::string ids_text(std::vector<PointId> const& ids) {
  std::string s;
  for (auto x : ids) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

}  // namespace

VerificationReport verify_certificate(Certificate const& cert, int depth) {
  VerificationReport rep;
  auto fault = [&](FaultCode code, std::vector<PointId> pts, std::string msg) {
    rep.faults.push_back({code, std::move(pts), std::move(msg)});
  };
  auto const& S = cert.snapshot;
  if (!(S.spec() == DistanceSpec::integer_range(cert.p))) {
    fault(FaultCode::Malformed, {}, "snapshot spec is " + S.spec().name());
    return rep;
  }
  if (cert.f.empty()) {
    fault(FaultCode::Malformed, {}, "empty pair map");
    return rep;
  }
  if (cert.orbit_colors.size() != cert.orbit_prefix.size()) {
    fault(FaultCode::Malformed, {}, "orbit colour list has the wrong length");
    return rep;
  }
  std::vector<PointId> needed = cert.copy_prefix;
  needed.insert(needed.end(), cert.f.domain.begin(), cert.f.domain.end());
  needed.insert(needed.end(), cert.orbit_prefix.begin(), cert.orbit_prefix.end());
  for (auto b : cert.coloring.base()) needed.push_back(b);
  for (auto x : needed)
    if (!S.contains(x)) {
      fault(FaultCode::Malformed, {x}, "point " + std::to_string(x) + " missing from the snapshot");
      return rep;
    }

  auto metric = validate_metric(S);
  if (!metric.ok()) {
    auto const& v = metric.violations.front();
    fault(FaultCode::MetricInvalid, v.witnesses, v.message);
  }

  std::set<PointId> in_copy(cert.copy_prefix.begin(), cert.copy_prefix.end());
  if (in_copy.size() != cert.copy_prefix.size()) fault(FaultCode::Malformed, {}, "copy prefix repeats a point");
  for (auto x : cert.f.domain)
    if (!in_copy.count(x))
      fault(FaultCode::DomainNotInCopy, {x}, "dom f point " + std::to_string(x) + " is not in the copy prefix");

  auto realizes = [&](PointId y) {
    for (std::size_t i = 0; i < cert.f.size(); ++i)
      if (cert.f.domain[i] == y || S.distance(y, cert.f.domain[i]) != cert.f.values[i]) return false;
    return true;
  };
  auto colour = [&](PointId y) {
    std::vector<int> dists;
    for (auto b : cert.coloring.base()) {
      auto d = S.distance(y, b);
      dists.push_back(static_cast<int>(d.numerator() / d.denominator()));
    }
    return cert.coloring.color_for(dists, y);
  };

  std::set<PointId> orbit;
  for (std::size_t i = 0; i < cert.orbit_prefix.size(); ++i) {
    auto y = cert.orbit_prefix[i];
    ++rep.orbit_checked;
    if (!orbit.insert(y).second) fault(FaultCode::Malformed, {y}, "orbit point " + std::to_string(y) + " repeated");
    if (!in_copy.count(y))
      fault(FaultCode::MemberMissing, {y}, "orbit point " + std::to_string(y) + " is not in the copy prefix");
    if (!realizes(y))
      fault(FaultCode::NotRealizing, {y}, "orbit point " + std::to_string(y) + " does not realize f");
    auto c = colour(y);
    if (c != cert.target || cert.orbit_colors[i] != c)
      fault(FaultCode::WrongColor, {y},
            "orbit point " + std::to_string(y) + " has colour " + std::to_string(c) + ", claimed " +
                std::to_string(cert.orbit_colors[i]) + ", target " + std::to_string(cert.target));
  }
  for (auto y : cert.copy_prefix) {
    if (orbit.count(y) || !realizes(y)) continue;
    if (colour(y) != cert.target)
      fault(FaultCode::WrongColor, {y}, "copy point " + std::to_string(y) + " realizes f outside the target colour");
    else
      fault(FaultCode::MemberMissing, {y}, "copy point " + std::to_string(y) + " realizes f but is not listed");
  }

  int const k = depth >= 0 ? depth : cert.audit_k;
  if (k > 0 && metric.ok()) {
    try {
      int const range = orbit_isometry_type(cert.f, cert.p);
      auto audit = audit_static(S, cert.orbit_prefix, cert.orbit_prefix, k, cert.audit_n, range);
      rep.audit_demands = audit.demands;
      for (auto const& u : audit.unmet) {
        std::string vals;
        for (auto v : u.values) vals += (vals.empty() ? "" : ",") + std::to_string(v);
        fault(FaultCode::AuditUnmet, u.subset,
              "no orbit point realizes (" + vals + ") over {" + ids_text(u.subset) + "}");
      }
    } catch (Error const& e) {
      fault(FaultCode::Malformed, {}, std::string("audit failed: ") + e.what());
    }
  }
  return rep;
}

Certificate inject_fault(Certificate cert, FaultKind kind, std::uint64_t salt) {
  switch (kind) {
    case FaultKind::Color: {
      if (cert.orbit_prefix.empty()) throw Error("no orbit point to recolour");
      auto i = salt % cert.orbit_prefix.size();
      auto n = static_cast<ColorId>(cert.coloring.color_count());
      cert.orbit_colors[i] = n > 1 ? (cert.orbit_colors[i] + 1 + static_cast<ColorId>(salt / 7 % (n - 1))) % n : n;
      return cert;
    }
    case FaultKind::Distance: {
      auto const& S = cert.snapshot;
      if (S.size() < 2) throw Error("snapshot too small for a distance fault");
      auto n = S.size();
      auto i = salt % n;
      auto j = (i + 1 + (salt / n) % (n - 1)) % n;
      auto m = S.matrix();
      auto v = m[i][j].numerator();
      m[i][j] = Rational(cert.p > 1 ? v % cert.p + 1 : 2);
      cert.snapshot = FiniteMetricSpace(S.spec(), S.points(), std::move(m));
      return cert;
    }
    case FaultKind::Membership: {
      auto x = cert.f.domain[salt % cert.f.size()];
      auto it = std::find(cert.copy_prefix.begin(), cert.copy_prefix.end(), x);
      if (it == cert.copy_prefix.end()) throw Error("dom f point already missing");
      cert.copy_prefix.erase(it);
      return cert;
    }
  }
  return cert;
}

}  // namespace forge
