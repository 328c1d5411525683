#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "flagkneser/galois.hpp"

namespace flagkneser {

/// Coordinates of GF(q)^(n+1); ambient spaces are limited to PG(n,q), n <= 6.
inline constexpr int kMaxCoordinates = 7;
inline constexpr int kMaxProjectiveDim = kMaxCoordinates - 1;

using Vec = std::array<Element, kMaxCoordinates>;

/// Bit i set iff point i (canonical point order) is in the set.
using PointSet = boost::dynamic_bitset<std::uint64_t>;
using PointIndex = std::uint32_t;

/// A projective subspace held as its reduced row echelon basis.
///
/// Two Subspaces are equal iff their canonical matrices are identical, and the
/// ordering (pivot columns, then row-major codes) is the canonical enumeration
/// order. Unused rows are kept zero so defaulted comparison is exact.
class Subspace {
 public:
  Subspace() = default;

  int ambient_dim() const noexcept { return n_; }
  int field_order() const noexcept { return q_; }
  /// Projective dimension; -1 for the empty subspace.
  int dim() const noexcept { return rank_ - 1; }
  int rank() const noexcept { return rank_; }
  bool is_empty() const noexcept { return rank_ == 0; }
  std::span<const Vec> rows() const noexcept { return {rows_.data(), static_cast<std::size_t>(rank_)}; }
  int pivot(int row) const noexcept { return pivots_[row]; }

  /// `d;row1;row2;...`, rows as comma separated element codes.
  std::string to_text() const;

  bool operator==(const Subspace&) const = default;
  auto operator<=>(const Subspace&) const = default;

 private:
  friend class ProjectiveSpace;

  // Member order defines the canonical order.
  std::uint8_t q_ = 0;
  std::int8_t n_ = 0;
  std::int8_t rank_ = 0;
  std::array<std::uint8_t, kMaxCoordinates> pivots_{};
  std::array<Vec, kMaxCoordinates> rows_{};
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept;
};

/// Filters for subspace enumeration. A missing entry means no constraint.
struct SubspaceConstraints {
  std::optional<Subspace> contains;
  std::optional<Subspace> within;
  std::optional<Subspace> skew_to;
};

/// PG(n,q) with its lattice operations and the canonical point numbering.
///
/// Points are numbered by their representative with last nonzero coordinate
/// equal to 1, in lexicographic order of the code vector (coordinate 0 most
/// significant). Point numbering is only available when q^(n+1) <= 2^20.
class ProjectiveSpace {
 public:
  ProjectiveSpace(int n, int q);

  int dim() const noexcept { return n_; }
  int order() const noexcept { return q_; }
  int coordinates() const noexcept { return n_ + 1; }
  const FieldTable& field() const noexcept { return field_; }

  Vec unit(int i) const;
  Subspace empty() const;
  Subspace whole() const;
  Subspace span_of(std::span<const Vec> generators) const;
  Subspace span_of(std::initializer_list<Vec> generators) const;
  /// Span of the unit vectors e_i for the listed coordinates.
  Subspace coordinate_span(std::initializer_list<int> coords) const;
  Subspace point(const Vec& v) const { return span_of({v}); }

  Subspace span(const Subspace& a, const Subspace& b) const;
  Subspace meet(const Subspace& a, const Subspace& b) const;
  /// Orthogonal complement for the standard dot product.
  Subspace dualize(const Subspace& a) const;

  /// Rank of a + b as vector spaces, without canonicalizing the result.
  int span_rank(const Subspace& a, const Subspace& b) const;
  bool contains(const Subspace& outer, const Subspace& inner) const;
  bool contains(const Subspace& outer, const Vec& v) const;
  bool skew(const Subspace& a, const Subspace& b) const { return span_rank(a, b) == a.rank() + b.rank(); }
  /// Projective dimension of a ∩ b.
  int meet_dim(const Subspace& a, const Subspace& b) const { return a.rank() + b.rank() - span_rank(a, b) - 1; }
  bool satisfies(const Subspace& s, const SubspaceConstraints& c) const;

  bool has_point_index() const noexcept { return !point_of_code_.empty(); }
  std::size_t point_count() const noexcept { return point_count_; }
  /// Number of 64-bit words in a point bitset.
  std::size_t point_words() const noexcept { return (point_count_ + 63) / 64; }
  PointIndex point_index(const Vec& v) const;
  Vec point_vector(PointIndex i) const;
  PointSet point_set(const Subspace& s) const;
  /// Sets the bits of the points of s in `words` (which is not cleared).
  void write_point_bits(const Subspace& s, std::span<std::uint64_t> words) const;

  /// Visits every d-subspace satisfying the constraints once, in canonical order.
  void for_each_subspace(int d, const SubspaceConstraints& constraints,
                         const std::function<void(const Subspace&)>& visit) const;
  std::vector<Subspace> subspaces(int d, const SubspaceConstraints& constraints = {}) const;

  Subspace random_subspace(int d, std::mt19937_64& rng) const;
  Vec random_vector(std::mt19937_64& rng) const;

  /// Parses the text form; throws std::invalid_argument on malformed input or
  /// when the declared dimension disagrees with the rank of the rows.
  Subspace parse(std::string_view text) const;

  void require_member(const Subspace& s) const;

 private:
  Subspace canonical(std::span<const Vec> generators) const;
  std::uint32_t pack(const Vec& v) const;

  int n_;
  int q_;
  FieldTable field_;
  std::size_t point_count_ = 0;
  std::vector<PointIndex> point_of_code_;  // packed vector -> point, UINT32_MAX for 0
  std::vector<std::uint32_t> code_of_point_;
};

/// Visits every reduced row echelon matrix of the given rank with `cols`
/// columns over GF(q): pivot sets in lexicographic order, free entries in
/// row-major odometer order.
void for_each_rref(int q, int cols, int rank, const std::function<void(std::span<const Vec>)>& visit);

}  // namespace flagkneser
