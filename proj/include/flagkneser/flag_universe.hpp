#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "flagkneser/projective.hpp"

namespace flagkneser {

using FlagId = std::uint32_t;
using PlaneId = std::uint32_t;
using SolidId = std::uint32_t;

/// An incident (plane, solid) pair of PG(6,q).
struct Flag {
  Subspace plane;
  Subspace solid;

  bool operator==(const Flag&) const = default;
};

/// Ambient dimension of the plane-solid flag geometry.
inline constexpr int kFlagAmbientDim = 6;

/// General position by the full definition: every pair of members (U1 from f,
/// U2 from g) is disjoint or spans the whole space.
bool general_position(const ProjectiveSpace& space, const Flag& f, const Flag& g);
/// The plane-solid shortcut: plane(f) ∩ solid(g) = ∅ = plane(g) ∩ solid(f).
bool general_position_shortcut(const ProjectiveSpace& space, const Flag& f, const Flag& g);
bool is_flag(const ProjectiveSpace& space, const Flag& f);
/// (dualize(solid), dualize(plane)).
Flag dualize_flag(const ProjectiveSpace& space, const Flag& f);

/// All type-{2,3} flags of PG(6,q), q in {2,3}, numbered solid-major.
///
/// Flag ordinal = solid id * planes_per_solid + position of the plane among
/// the planes of that solid (both in canonical order). Each plane and solid
/// carries its point bitset; adjacency tests are word-wise ANDs.
class FlagUniverse {
 public:
  /// Throws std::invalid_argument for q outside {2,3}.
  explicit FlagUniverse(int q);

  int order() const noexcept { return space_.order(); }
  const ProjectiveSpace& space() const noexcept { return space_; }

  std::size_t size() const noexcept { return solid_planes_.size(); }
  std::size_t plane_count() const noexcept { return planes_.size(); }
  std::size_t solid_count() const noexcept { return solids_.size(); }
  std::size_t planes_per_solid() const noexcept { return per_solid_; }
  std::size_t solids_per_plane() const noexcept { return per_plane_; }
  std::size_t words() const noexcept { return words_; }

  const Subspace& plane(PlaneId p) const { return planes_[p]; }
  const Subspace& solid(SolidId s) const { return solids_[s]; }
  std::span<const Subspace> planes() const noexcept { return planes_; }
  std::span<const Subspace> solids() const noexcept { return solids_; }

  PlaneId plane_of(FlagId f) const noexcept { return solid_planes_[f]; }
  SolidId solid_of(FlagId f) const noexcept { return static_cast<SolidId>(f / per_solid_); }
  Flag flag(FlagId f) const { return {planes_[plane_of(f)], solids_[solid_of(f)]}; }

  std::optional<PlaneId> find_plane(const Subspace& s) const;
  std::optional<SolidId> find_solid(const Subspace& s) const;
  std::optional<FlagId> find(const Flag& f) const;
  /// Throws std::invalid_argument if f is not a flag of this universe.
  FlagId index(const Flag& f) const;
  std::optional<FlagId> find(PlaneId p, SolidId s) const;

  /// Flags whose plane is p, ascending.
  std::span<const FlagId> flags_on_plane(PlaneId p) const { return {plane_flags_.data() + p * per_plane_, per_plane_}; }
  std::span<const std::uint64_t> plane_points(PlaneId p) const { return {plane_words_.data() + p * words_, words_}; }
  std::span<const std::uint64_t> solid_points(SolidId s) const { return {solid_words_.data() + s * words_, words_}; }

  bool adjacent(FlagId a, FlagId b) const noexcept;
  FlagId dual(FlagId f) const;
  PlaneId dual_of_solid(SolidId s) const noexcept { return solid_dual_[s]; }
  SolidId dual_of_plane(PlaneId p) const noexcept { return plane_dual_[p]; }

 private:
  ProjectiveSpace space_;
  std::size_t words_ = 0;
  std::size_t per_solid_ = 0;
  std::size_t per_plane_ = 0;
  std::vector<Subspace> planes_;
  std::vector<Subspace> solids_;
  std::vector<std::uint64_t> plane_words_;
  std::vector<std::uint64_t> solid_words_;
  std::vector<PlaneId> solid_planes_;  // indexed by FlagId
  std::vector<FlagId> plane_flags_;
  std::vector<SolidId> plane_dual_;
  std::vector<PlaneId> solid_dual_;
};

/// Word-wise test that two point bitsets share no point.
inline bool disjoint(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return false;
  return true;
}

inline bool subset_of(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

/// A set of flags of one universe, held as a membership bitset.
class FlagSet {
 public:
  explicit FlagSet(const FlagUniverse& universe) : universe_(&universe), bits_(universe.size()) {}

  const FlagUniverse& universe() const noexcept { return *universe_; }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool contains(FlagId f) const { return bits_.test(f); }
  void insert(FlagId f) { bits_.set(f); }
  void erase(FlagId f) { bits_.reset(f); }
  std::vector<FlagId> members() const;
  const boost::dynamic_bitset<std::uint64_t>& bits() const noexcept { return bits_; }

  FlagSet& operator|=(const FlagSet& other);
  bool operator==(const FlagSet& other) const { return universe_ == other.universe_ && bits_ == other.bits_; }

 private:
  const FlagUniverse* universe_;
  boost::dynamic_bitset<std::uint64_t> bits_;
};

/// Image of a flag set under flag dualization.
FlagSet dualize(const FlagSet& set);

struct AdjacencyScan {
  std::size_t count = 0;
  std::optional<FlagId> first_witness;  // smallest adjacent member ordinal
};

/// Members of `set` adjacent to `target`.
AdjacencyScan adjacency_scan(const FlagSet& set, FlagId target, int threads = 1);

/// Number of flags adjacent to `target` in the whole universe.
std::size_t degree(const FlagUniverse& universe, FlagId target);

}  // namespace flagkneser
