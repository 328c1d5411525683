#include "flagkneser/flag_universe.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "flagkneser/counting.hpp"
#include "flagkneser/parallel.hpp"

namespace flagkneser {

bool is_flag(const ProjectiveSpace& space, const Flag& f) {
  return f.plane.dim() == 2 && f.solid.dim() == 3 && space.contains(f.solid, f.plane);
}

bool general_position(const ProjectiveSpace& space, const Flag& f, const Flag& g) {
  const std::array<const Subspace*, 2> fs = {&f.plane, &f.solid};
  const std::array<const Subspace*, 2> gs = {&g.plane, &g.solid};
  const int whole = space.coordinates();
  for (const auto* u1 : fs) {
    for (const auto* u2 : gs) {
      const int rank = space.span_rank(*u1, *u2);
      const bool disjoint_pair = rank == u1->rank() + u2->rank();
      if (!disjoint_pair && rank != whole) return false;
    }
  }
  return true;
}

bool general_position_shortcut(const ProjectiveSpace& space, const Flag& f, const Flag& g) {
  return space.skew(f.plane, g.solid) && space.skew(g.plane, f.solid);
}

Flag dualize_flag(const ProjectiveSpace& space, const Flag& f) { return {space.dualize(f.solid), space.dualize(f.plane)}; }

FlagUniverse::FlagUniverse(int q) : space_(kFlagAmbientDim, q == 2 || q == 3 ? q : 2) {
  if (q != 2 && q != 3) {
    const auto flags = is_supported_order(q) ? flag_count(q) : BigInt(0);
    throw std::invalid_argument("flag universe materialization supports q in {2,3}; q=" + std::to_string(q) + " has " +
                                flags.str() + " flags, beyond the memory bound of a full bitset universe");
  }
  words_ = space_.point_words();
  per_solid_ = static_cast<std::size_t>(q * q * q + q * q + q + 1);
  per_plane_ = per_solid_;

  solids_ = space_.subspaces(3);
  planes_ = space_.subspaces(2);

  plane_words_.assign(planes_.size() * words_, 0);
  solid_words_.assign(solids_.size() * words_, 0);
  for (std::size_t p = 0; p < planes_.size(); ++p)
    space_.write_point_bits(planes_[p], {plane_words_.data() + p * words_, words_});
  for (std::size_t s = 0; s < solids_.size(); ++s)
    space_.write_point_bits(solids_[s], {solid_words_.data() + s * words_, words_});

  solid_planes_.resize(solids_.size() * per_solid_);
  for (std::size_t s = 0; s < solids_.size(); ++s) {
    std::size_t j = 0;
    SubspaceConstraints within;
    within.within = solids_[s];
    space_.for_each_subspace(2, within, [&](const Subspace& e) {
      solid_planes_[s * per_solid_ + j++] = *find_plane(e);
    });
    if (j != per_solid_) throw std::logic_error("solid with an unexpected number of planes");
  }

  plane_flags_.resize(planes_.size() * per_plane_);
  std::vector<std::size_t> fill(planes_.size(), 0);
  for (FlagId f = 0; f < solid_planes_.size(); ++f) {
    const PlaneId p = solid_planes_[f];
    plane_flags_[p * per_plane_ + fill[p]++] = f;
  }

  plane_dual_.resize(planes_.size());
  solid_dual_.resize(solids_.size());
  for (std::size_t p = 0; p < planes_.size(); ++p) plane_dual_[p] = *find_solid(space_.dualize(planes_[p]));
  for (std::size_t s = 0; s < solids_.size(); ++s) solid_dual_[s] = *find_plane(space_.dualize(solids_[s]));
}

std::optional<PlaneId> FlagUniverse::find_plane(const Subspace& s) const {
  auto it = std::lower_bound(planes_.begin(), planes_.end(), s);
  if (it == planes_.end() || *it != s) return std::nullopt;
  return static_cast<PlaneId>(it - planes_.begin());
}

std::optional<SolidId> FlagUniverse::find_solid(const Subspace& s) const {
  auto it = std::lower_bound(solids_.begin(), solids_.end(), s);
  if (it == solids_.end() || *it != s) return std::nullopt;
  return static_cast<SolidId>(it - solids_.begin());
}

std::optional<FlagId> FlagUniverse::find(PlaneId p, SolidId s) const {
  const auto begin = solid_planes_.begin() + static_cast<std::ptrdiff_t>(s * per_solid_);
  const auto it = std::find(begin, begin + static_cast<std::ptrdiff_t>(per_solid_), p);
  if (it == begin + static_cast<std::ptrdiff_t>(per_solid_)) return std::nullopt;
  return static_cast<FlagId>(it - solid_planes_.begin());
}

std::optional<FlagId> FlagUniverse::find(const Flag& f) const {
  auto p = find_plane(f.plane);
  auto s = find_solid(f.solid);
  if (!p || !s) return std::nullopt;
  return find(*p, *s);
}

FlagId FlagUniverse::index(const Flag& f) const {
  auto id = find(f);
  if (!id) throw std::invalid_argument("(" + f.plane.to_text() + ", " + f.solid.to_text() + ") is not a flag of PG(6," +
                                       std::to_string(order()) + ")");
  return *id;
}

bool FlagUniverse::adjacent(FlagId a, FlagId b) const noexcept {
  return disjoint(plane_points(plane_of(a)), solid_points(solid_of(b))) &&
         disjoint(plane_points(plane_of(b)), solid_points(solid_of(a)));
}

FlagId FlagUniverse::dual(FlagId f) const {
  const SolidId s = plane_dual_[plane_of(f)];
  const PlaneId p = solid_dual_[solid_of(f)];
  return *find(p, s);
}

std::vector<FlagId> FlagSet::members() const {
  std::vector<FlagId> out;
  out.reserve(bits_.count());
  for (auto i = bits_.find_first(); i != boost::dynamic_bitset<std::uint64_t>::npos; i = bits_.find_next(i))
    out.push_back(static_cast<FlagId>(i));
  return out;
}

FlagSet& FlagSet::operator|=(const FlagSet& other) {
  if (universe_ != other.universe_) throw std::invalid_argument("flag sets from different universes");
  bits_ |= other.bits_;
  return *this;
}

FlagSet dualize(const FlagSet& set) {
  FlagSet out(set.universe());
  for (FlagId f : set.members()) out.insert(set.universe().dual(f));
  return out;
}

AdjacencyScan adjacency_scan(const FlagSet& set, FlagId target, int threads) {
  const auto members = set.members();
  const FlagUniverse& u = set.universe();
  const auto tp = u.plane_points(u.plane_of(target));
  const auto ts = u.solid_points(u.solid_of(target));
  std::vector<AdjacencyScan> partial(static_cast<std::size_t>(std::max(1, threads <= 0 ? default_threads() : threads)));
  parallel_chunks(members.size(), threads, [&](std::size_t begin, std::size_t end, int worker) {
    AdjacencyScan local;
    for (std::size_t i = begin; i < end; ++i) {
      const FlagId m = members[i];
      if (disjoint(tp, u.solid_points(u.solid_of(m))) && disjoint(u.plane_points(u.plane_of(m)), ts)) {
        ++local.count;
        if (!local.first_witness) local.first_witness = m;
      }
    }
    partial[static_cast<std::size_t>(worker)] = local;
  });
  AdjacencyScan out;
  for (const auto& p : partial) {
    out.count += p.count;
    if (p.first_witness && (!out.first_witness || *p.first_witness < *out.first_witness)) out.first_witness = p.first_witness;
  }
  return out;
}

std::size_t degree(const FlagUniverse& universe, FlagId target) {
  std::size_t count = 0;
  for (FlagId f = 0; f < universe.size(); ++f)
    if (universe.adjacent(target, f)) ++count;
  return count;
}

}  // namespace flagkneser
