#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "forge/ambient.hpp"

namespace forge {

/// Self-contained evidence that O(f, C) is monochromatic on a finite prefix.
/// Nothing here refers back to a live ambient: the snapshot carries every distance
/// the verifier needs, including the base points of the colouring.
struct Certificate {
  int version = 1;
  int p = 1;
  std::uint64_t seed = 0;
  ColoringOracle coloring = ColoringOracle::constant("c0");
  ColorId target = 0;
  KatetovMap f;
  CopyId copy = kRootCopy;
  std::vector<PointId> copy_prefix;
  std::vector<PointId> orbit_prefix;
  std::vector<ColorId> orbit_colors;  // as claimed by the producer
  FiniteMetricSpace snapshot;
  std::uint64_t ambient_digest = 0;  // generator state when the certificate was cut
  int audit_k = 2;
  std::size_t audit_n = 4;
};

Certificate make_certificate(AmbientSpace const& ambient, ColorId target, KatetovMap const& f,
                             CopyId copy, std::vector<PointId> copy_prefix,
                             std::vector<PointId> orbit_prefix, int audit_k, std::size_t audit_n);

enum class FaultCode {
  MetricInvalid,
  NotRealizing,
  WrongColor,
  DomainNotInCopy,
  MemberMissing,
  AuditUnmet,
  Malformed,
};

std::string to_string(FaultCode c);

struct Fault {
  FaultCode code;
  std::vector<PointId> points;
  std::string message;
};

struct VerificationReport {
  std::vector<Fault> faults;
  std::size_t orbit_checked = 0;
  std::size_t audit_demands = 0;

  bool ok() const { return faults.empty(); }
  bool has(FaultCode c) const;
  std::string summary() const;
};

/// Re-derives everything from the certificate alone. `depth` overrides audit_k when >= 0.
VerificationReport verify_certificate(Certificate const& cert, int depth = -1);

enum class FaultKind { Color, Distance, Membership };

/// Corrupts exactly one field; `salt` picks which entry. Throws if the certificate is
/// too small to carry the requested fault.
Certificate inject_fault(Certificate cert, FaultKind kind, std::uint64_t salt);

}  // namespace forge
