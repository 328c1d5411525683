#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flagkneser/counting.hpp"
#include "flagkneser/flag_universe.hpp"

namespace flagkneser {

struct CheckResult {
  std::string name;
  bool pass = false;
  /// Flag ordinals demonstrating a failure (a pair for adjacency, one flag for
  /// extendability or a missing cover). Empty on success.
  std::vector<FlagId> witness;
  double ms = 0.0;
  nlohmann::json detail = nlohmann::json::object();
};

struct VerificationReport {
  std::string subject;
  int q = 0;
  std::vector<CheckResult> checks;
  std::uint64_t cardinality = 0;
  std::optional<BigInt> expected;

  bool passed() const;
  const CheckResult* find(const std::string& name) const;
  /// Appends the checks of another report.
  void merge(const VerificationReport& other);
};

/// {subject, q, checks:[{name, pass, witness, ms, detail}], cardinality, expected}
nlohmann::json to_json(const VerificationReport& report, bool timings = true);
/// Big integers are emitted as JSON numbers when they fit in 64 bits.
nlohmann::json to_json(const BigInt& value);

/// No two members in general position; a failure carries the smallest
/// adjacent pair (lexicographic in ordinals).
VerificationReport check_independent(const FlagSet& set, int threads = 0);

/// Every non-member has a neighbour in the set; a failure carries the smallest
/// flag that could be added.
VerificationReport check_maximal(const FlagSet& set, int threads = 0);

/// Structure of a (maximal) independent set around each plane and solid.
struct SaturationProfile {
  /// For each plane E: the span U of the member solids through E (E itself if
  /// there are none) when (E,S) ∈ C ⇔ S ⊆ U holds for every solid S on E;
  /// nullopt when the member solids do not form a quotient subspace.
  std::vector<std::optional<Subspace>> plane_span;
  /// For each solid S: the meet W of its member planes (S itself if none)
  /// when (E,S) ∈ C ⇔ W ⊆ E holds for every plane E of S; nullopt otherwise.
  std::vector<std::optional<Subspace>> solid_base;
  std::vector<PlaneId> saturated_planes;
  std::vector<SolidId> saturated_solids;
};

SaturationProfile saturation_profile(const FlagSet& set, int threads = 0);

/// Checks: every plane entry is a quotient subspace, every solid entry a
/// pencil, and saturated solids pairwise meet in at least a line. With a
/// hyperplane, also that the saturated solids are exactly the solids of it.
VerificationReport saturation_report(const FlagSet& set, const SaturationProfile& profile,
                                     const std::optional<Subspace>& hyperplane = std::nullopt);

/// Planes {E : (E,S) ∈ C, S ∩ H = E} pairwise intersect and number at most s(1,4).
VerificationReport check_hyperplane_trace_ekr(const FlagSet& set, const Subspace& hyperplane);
/// Solids {S : (E,S) ∈ C, P ∈ S \ E} pairwise share a line and number at most s(1,4).
VerificationReport check_point_trace_ekr(const FlagSet& set, const Subspace& point);

/// Members (E',S') with E' ∩ E = ∅ and S' ∩ E ≠ ∅, against s(2)*s(1,4)*xi.
/// A solid in more than xi members is reported as a failed precondition.
VerificationReport check_disjoint_plane_bound(const FlagSet& set, FlagId f, std::uint64_t xi);
/// Largest number of members sharing one solid.
std::uint64_t max_flags_per_solid(const FlagSet& set);

/// Every class independent and the union equal to the universe.
VerificationReport check_coloring(const std::vector<FlagSet>& classes, int threads = 0);

/// ceil(|flags| / alpha) next to q^4-q^2+2q+1. Uses the universe for |flags|
/// when given, the closed form otherwise.
VerificationReport chromatic_lower_report(int q, const FlagUniverse* universe = nullptr);

}  // namespace flagkneser
