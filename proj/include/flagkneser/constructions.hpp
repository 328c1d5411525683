#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flagkneser/flag_universe.hpp"
#include "flagkneser/projective.hpp"

namespace flagkneser {

/// The independent flag families Λ. Each is the union of two clauses on the
/// plane E or the solid S of a flag (E,S):
///
///   HyperplaneFamily    Λ(H,𝓔):  S ⊆ H      or  E ∈ 𝓔
///   PointFamily         Λ(P,𝓢):  P ∈ E      or  S ∈ 𝓢
///   PointHyperplane     Λ(P,H):  P ∈ E      or  P ∈ S ⊆ H
///   HyperplanePoint     Λ(H,P):  S ⊆ H      or  P ∈ E ⊆ H
///   PointLine           Λ(P,l):  P ∈ E      or  l ⊆ S
///   HyperplaneFourSpace Λ(H,U):  S ⊆ H      or  E ⊆ U
///   Point               Λ(P,∅):  P ∈ E
///   Hyperplane          Λ(H,∅):  S ⊆ H
enum class LambdaKind {
  HyperplaneFamily,
  PointFamily,
  PointHyperplane,
  HyperplanePoint,
  PointLine,
  HyperplaneFourSpace,
  Point,
  Hyperplane,
};

/// Short names used in files and on the command line: H_E, P_S, P_H, H_P, P_l,
/// H_U, P_empty, H_empty.
std::string_view kind_name(LambdaKind kind);
/// Throws std::invalid_argument for unknown names.
LambdaKind parse_kind(std::string_view name);

struct LambdaSpec {
  LambdaKind kind = LambdaKind::Hyperplane;
  std::optional<Subspace> hyperplane;
  std::optional<Subspace> point;
  std::optional<Subspace> line;
  std::optional<Subspace> four_space;
  std::vector<Subspace> planes;  // 𝓔 for HyperplaneFamily
  std::vector<Subspace> solids;  // 𝓢 for PointFamily
};

/// Throws std::invalid_argument naming the first violated requirement.
void validate(const ProjectiveSpace& space, const LambdaSpec& spec);

/// Flags of the universe satisfying the kind's predicate.
FlagSet build_lambda(const LambdaSpec& spec, const FlagUniverse& universe, int threads = 0);

/// Membership predicate evaluated directly on subspaces.
bool in_lambda(const ProjectiveSpace& space, const LambdaSpec& spec, const Flag& f);

/// Enumerates the family without a universe: the flags of the first clause,
/// then those of the second clause not already in the first. Returns the count.
std::uint64_t enumerate_lambda(const ProjectiveSpace& space, const LambdaSpec& spec,
                               const std::function<void(const Flag&)>& visit = {});

/// Standard frame: P = <e0>, l = <e0,e1>, E = <e0,e1,e2>, U = <e0..e4>,
/// H = <e0..e5> (last coordinate zero).
struct CanonicalFrame {
  Subspace point;
  Subspace line;
  Subspace plane;
  Subspace solid;
  Subspace four_space;
  Subspace hyperplane;
};
CanonicalFrame canonical_frame(const ProjectiveSpace& space);

enum class EkrPlaneKind { PointPencil, FourSpace };
/// Maximal family of pairwise intersecting planes of the hyperplane H: all
/// planes of H through the anchor point, or all planes of the anchor 4-space.
std::vector<Subspace> ekr_plane_family(const ProjectiveSpace& space, EkrPlaneKind kind, const Subspace& anchor,
                                       const Subspace& hyperplane);

enum class EkrSolidKind { HyperplanePencil, LineStar };
/// Dual family: solids through P inside the anchor hyperplane, or solids
/// through the anchor line (which contains P). Any two share at least a line.
std::vector<Subspace> ekr_solid_family(const ProjectiveSpace& space, EkrSolidKind kind, const Subspace& anchor,
                                       const Subspace& point);

enum class LineMeetingKind { LineStar, SolidFull };
/// Planes pairwise meeting in a line: all planes through a line, or all planes
/// of a solid. Requires n >= 5.
std::vector<Subspace> line_meeting_plane_family(const ProjectiveSpace& space, LineMeetingKind kind,
                                                const Subspace& anchor);

/// The improved colouring: P ∈ l ⊆ E ⊆ V, Q ∈ V \ E.
struct ColoringScheme {
  Subspace point;
  Subspace line;
  Subspace plane;
  Subspace four_space;
  Subspace off_point;
  std::vector<Subspace> q_points;            // <P,Q> \ {P}, canonical order
  std::vector<std::vector<Subspace>> m_sets;  // M_i as point lists
  struct ColorClass {
    Subspace x;
    Subspace line;  // <X, Q_i>
  };
  std::vector<ColorClass> classes;  // deduplicated, sorted by (X, line)
};

/// Throws std::invalid_argument on incidence violations.
ColoringScheme make_coloring_scheme(const ProjectiveSpace& space, const Subspace& point, const Subspace& line,
                                    const Subspace& plane, const Subspace& four_space, const Subspace& off_point);
ColoringScheme canonical_coloring_scheme(const ProjectiveSpace& space);

std::vector<FlagSet> build_coloring(const ColoringScheme& scheme, const FlagUniverse& universe, int threads = 0);
/// Λ(P,∅) for every point P of the 4-space V.
std::vector<FlagSet> trivial_coloring(const Subspace& four_space, const FlagUniverse& universe, int threads = 0);

}  // namespace flagkneser
