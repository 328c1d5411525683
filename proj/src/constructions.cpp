#include "flagkneser/constructions.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <string>

#include "flagkneser/parallel.hpp"

namespace flagkneser {
namespace {

enum class Side { Plane, Solid };

// One disjunct of a Λ predicate: a condition on either the plane or the solid.
struct Clause {
  Side side;
  SubspaceConstraints constraints;
  bool family = false;  // membership in the explicit family instead
};

struct ClauseSet {
  std::vector<Subspace> family;  // sorted copy of 𝓔 or 𝓢
  std::vector<Clause> clauses;
};

SubspaceConstraints containing(const Subspace& s) {
  SubspaceConstraints c;
  c.contains = s;
  return c;
}

SubspaceConstraints inside(const Subspace& s) {
  SubspaceConstraints c;
  c.within = s;
  return c;
}

ClauseSet clauses_of(const LambdaSpec& spec) {
  ClauseSet cs;
  const auto& P = spec.point;
  const auto& H = spec.hyperplane;
  switch (spec.kind) {
    case LambdaKind::HyperplaneFamily:
      cs.family = spec.planes;
      cs.clauses = {{Side::Solid, inside(*H)}, {Side::Plane, {}, true}};
      break;
    case LambdaKind::PointFamily:
      cs.family = spec.solids;
      cs.clauses = {{Side::Plane, containing(*P)}, {Side::Solid, {}, true}};
      break;
    case LambdaKind::PointHyperplane: {
      SubspaceConstraints c = containing(*P);
      c.within = *H;
      cs.clauses = {{Side::Plane, containing(*P)}, {Side::Solid, c}};
      break;
    }
    case LambdaKind::HyperplanePoint: {
      SubspaceConstraints c = containing(*P);
      c.within = *H;
      cs.clauses = {{Side::Solid, inside(*H)}, {Side::Plane, c}};
      break;
    }
    case LambdaKind::PointLine:
      cs.clauses = {{Side::Plane, containing(*P)}, {Side::Solid, containing(*spec.line)}};
      break;
    case LambdaKind::HyperplaneFourSpace:
      cs.clauses = {{Side::Solid, inside(*H)}, {Side::Plane, inside(*spec.four_space)}};
      break;
    case LambdaKind::Point:
      cs.clauses = {{Side::Plane, containing(*P)}};
      break;
    case LambdaKind::Hyperplane:
      cs.clauses = {{Side::Solid, inside(*H)}};
      break;
  }
  std::sort(cs.family.begin(), cs.family.end());
  return cs;
}

bool clause_holds(const ProjectiveSpace& space, const ClauseSet& cs, const Clause& c, const Subspace& s) {
  if (c.family) return std::binary_search(cs.family.begin(), cs.family.end(), s);
  return space.satisfies(s, c.constraints);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_dim(const std::optional<Subspace>& s, int d, const char* role) {
  require(s.has_value(), std::string("missing anchor: ") + role);
  require(s->dim() == d, std::string(role) + " must have dimension " + std::to_string(d) + ", got " +
                             std::to_string(s->dim()));
}

constexpr std::array<std::string_view, 8> kKindNames = {"H_E", "P_S", "P_H", "H_P", "P_l", "H_U", "P_empty", "H_empty"};

std::vector<Subspace> points_of(const ProjectiveSpace& space, const Subspace& s) { return space.subspaces(0, inside(s)); }

}  // namespace

std::string_view kind_name(LambdaKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

LambdaKind parse_kind(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (kKindNames[i] == name) return static_cast<LambdaKind>(i);
  throw std::invalid_argument("unknown family kind '" + std::string(name) + "'; expected one of H_E, P_S, P_H, H_P, P_l, H_U, P_empty, H_empty");
}

void validate(const ProjectiveSpace& space, const LambdaSpec& spec) {
  require(space.dim() == kFlagAmbientDim, "families live in PG(6,q)");
  for (const auto* s : {&spec.hyperplane, &spec.point, &spec.line, &spec.four_space})
    if (*s) space.require_member(**s);
  switch (spec.kind) {
    case LambdaKind::HyperplaneFamily:
      require_dim(spec.hyperplane, 5, "hyperplane H");
      for (std::size_t i = 0; i < spec.planes.size(); ++i) {
        const auto& e = spec.planes[i];
        space.require_member(e);
        require(e.dim() == 2, "family member " + e.to_text() + " is not a plane");
        require(space.contains(*spec.hyperplane, e), "family plane " + e.to_text() + " is not contained in H");
        for (std::size_t j = 0; j < i; ++j)
          require(!space.skew(e, spec.planes[j]),
                  "family planes " + spec.planes[j].to_text() + " and " + e.to_text() + " are disjoint");
      }
      break;
    case LambdaKind::PointFamily:
      require_dim(spec.point, 0, "point P");
      for (std::size_t i = 0; i < spec.solids.size(); ++i) {
        const auto& s = spec.solids[i];
        space.require_member(s);
        require(s.dim() == 3, "family member " + s.to_text() + " is not a solid");
        require(space.contains(s, *spec.point), "family solid " + s.to_text() + " does not contain P");
        for (std::size_t j = 0; j < i; ++j)
          require(space.meet_dim(s, spec.solids[j]) >= 1,
                  "family solids " + spec.solids[j].to_text() + " and " + s.to_text() + " do not share a line");
      }
      break;
    case LambdaKind::PointHyperplane:
    case LambdaKind::HyperplanePoint:
      require_dim(spec.point, 0, "point P");
      require_dim(spec.hyperplane, 5, "hyperplane H");
      require(space.contains(*spec.hyperplane, *spec.point), "P must lie in H");
      break;
    case LambdaKind::PointLine:
      require_dim(spec.point, 0, "point P");
      require_dim(spec.line, 1, "line l");
      require(space.contains(*spec.line, *spec.point), "P must lie on l");
      break;
    case LambdaKind::HyperplaneFourSpace:
      require_dim(spec.hyperplane, 5, "hyperplane H");
      require_dim(spec.four_space, 4, "4-space U");
      require(space.contains(*spec.hyperplane, *spec.four_space), "U must be contained in H");
      break;
    case LambdaKind::Point:
      require_dim(spec.point, 0, "point P");
      break;
    case LambdaKind::Hyperplane:
      require_dim(spec.hyperplane, 5, "hyperplane H");
      break;
  }
}

bool in_lambda(const ProjectiveSpace& space, const LambdaSpec& spec, const Flag& f) {
  const ClauseSet cs = clauses_of(spec);
  for (const auto& c : cs.clauses)
    if (clause_holds(space, cs, c, c.side == Side::Plane ? f.plane : f.solid)) return true;
  return false;
}

FlagSet build_lambda(const LambdaSpec& spec, const FlagUniverse& universe, int threads) {
  const ProjectiveSpace& space = universe.space();
  validate(space, spec);
  const ClauseSet cs = clauses_of(spec);

  std::vector<char> plane_ok(universe.plane_count(), 0);
  std::vector<char> solid_ok(universe.solid_count(), 0);
  for (const auto& c : cs.clauses) {
    auto& marks = c.side == Side::Plane ? plane_ok : solid_ok;
    const auto subs = c.side == Side::Plane ? universe.planes() : universe.solids();
    if (c.family) {
      for (const auto& s : cs.family) {
        auto id = c.side == Side::Plane ? universe.find_plane(s) : universe.find_solid(s);
        if (id) marks[*id] = 1;
      }
      continue;
    }
    parallel_chunks(subs.size(), threads, [&](std::size_t begin, std::size_t end, int) {
      for (std::size_t i = begin; i < end; ++i)
        if (!marks[i] && space.satisfies(subs[i], c.constraints)) marks[i] = 1;
    });
  }

  FlagSet out(universe);
  for (FlagId f = 0; f < universe.size(); ++f)
    if (plane_ok[universe.plane_of(f)] || solid_ok[universe.solid_of(f)]) out.insert(f);
  return out;
}

std::uint64_t enumerate_lambda(const ProjectiveSpace& space, const LambdaSpec& spec,
                               const std::function<void(const Flag&)>& visit) {
  validate(space, spec);
  const ClauseSet cs = clauses_of(spec);
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < cs.clauses.size(); ++i) {
    const Clause& c = cs.clauses[i];
    auto emit = [&](const Flag& f) {
      for (std::size_t j = 0; j < i; ++j) {
        const Clause& earlier = cs.clauses[j];
        if (clause_holds(space, cs, earlier, earlier.side == Side::Plane ? f.plane : f.solid)) return;
      }
      ++count;
      if (visit) visit(f);
    };
    auto drive = [&](const Subspace& s) {
      if (c.side == Side::Plane)
        space.for_each_subspace(3, containing(s), [&](const Subspace& solid) { emit({s, solid}); });
      else
        space.for_each_subspace(2, inside(s), [&](const Subspace& plane) { emit({plane, s}); });
    };
    if (c.family) {
      for (const auto& s : cs.family) drive(s);
    } else {
      space.for_each_subspace(c.side == Side::Plane ? 2 : 3, c.constraints, drive);
    }
  }
  return count;
}

CanonicalFrame canonical_frame(const ProjectiveSpace& space) {
  return {space.coordinate_span({0}),          space.coordinate_span({0, 1}),
          space.coordinate_span({0, 1, 2}),    space.coordinate_span({0, 1, 2, 3}),
          space.coordinate_span({0, 1, 2, 3, 4}), space.coordinate_span({0, 1, 2, 3, 4, 5})};
}

std::vector<Subspace> ekr_plane_family(const ProjectiveSpace& space, EkrPlaneKind kind, const Subspace& anchor,
                                       const Subspace& hyperplane) {
  space.require_member(anchor);
  space.require_member(hyperplane);
  require(hyperplane.dim() == space.dim() - 1, "ambient of the plane family must be a hyperplane");
  require(space.contains(hyperplane, anchor), "anchor " + anchor.to_text() + " is not contained in the hyperplane");
  if (kind == EkrPlaneKind::PointPencil) {
    require(anchor.dim() == 0, "point pencil anchor must be a point");
    SubspaceConstraints c = containing(anchor);
    c.within = hyperplane;
    return space.subspaces(2, c);
  }
  require(anchor.dim() == 4, "4-space family anchor must be a 4-space");
  return space.subspaces(2, inside(anchor));
}

std::vector<Subspace> ekr_solid_family(const ProjectiveSpace& space, EkrSolidKind kind, const Subspace& anchor,
                                       const Subspace& point) {
  space.require_member(anchor);
  space.require_member(point);
  require(point.dim() == 0, "solid family base must be a point");
  require(space.contains(anchor, point), "anchor " + anchor.to_text() + " does not contain P");
  SubspaceConstraints c = containing(point);
  if (kind == EkrSolidKind::HyperplanePencil) {
    require(anchor.dim() == space.dim() - 1, "hyperplane pencil anchor must be a hyperplane");
    c.within = anchor;
  } else {
    require(anchor.dim() == 1, "line star anchor must be a line");
    c.contains = anchor;
  }
  return space.subspaces(3, c);
}

std::vector<Subspace> line_meeting_plane_family(const ProjectiveSpace& space, LineMeetingKind kind,
                                                const Subspace& anchor) {
  space.require_member(anchor);
  require(space.dim() >= 5, "line-meeting plane families need n >= 5, got n=" + std::to_string(space.dim()));
  if (kind == LineMeetingKind::LineStar) {
    require(anchor.dim() == 1, "line star anchor must be a line");
    return space.subspaces(2, containing(anchor));
  }
  require(anchor.dim() == 3, "solid family anchor must be a solid");
  return space.subspaces(2, inside(anchor));
}

ColoringScheme make_coloring_scheme(const ProjectiveSpace& space, const Subspace& point, const Subspace& line,
                                    const Subspace& plane, const Subspace& four_space, const Subspace& off_point) {
  for (const auto* s : {&point, &line, &plane, &four_space, &off_point}) space.require_member(*s);
  require(space.dim() == kFlagAmbientDim, "colourings live in PG(6,q)");
  require(point.dim() == 0 && line.dim() == 1 && plane.dim() == 2 && four_space.dim() == 4 && off_point.dim() == 0,
          "colouring anchors must be a point, a line, a plane, a 4-space and a point");
  require(space.contains(line, point), "P must lie on l");
  require(space.contains(plane, line), "l must lie in E");
  require(space.contains(four_space, plane), "E must lie in V");
  require(space.contains(four_space, off_point), "Q must lie in V");
  require(!space.contains(plane, off_point), "Q must not lie in E");

  ColoringScheme s{point, line, plane, four_space, off_point, {}, {}, {}};
  const Subspace pq = space.span(point, off_point);
  for (const auto& x : points_of(space, pq))
    if (x != point) s.q_points.push_back(x);

  const auto without = [&](std::vector<Subspace> subs, const Subspace& avoid) {
    std::erase_if(subs, [&](const Subspace& x) { return space.contains(x, avoid); });
    return subs;
  };
  SubspaceConstraints lines_c = containing(point);
  lines_c.within = space.span(line, off_point);
  const auto lines = without(space.subspaces(1, lines_c), off_point);
  SubspaceConstraints planes_c = containing(line);
  planes_c.within = space.span(plane, off_point);
  const auto planes = without(space.subspaces(2, planes_c), off_point);
  SubspaceConstraints solids_c = containing(plane);
  solids_c.within = four_space;
  const auto solids = without(space.subspaces(3, solids_c), off_point);

  const std::size_t q = static_cast<std::size_t>(space.order());
  if (lines.size() != q || planes.size() != q || solids.size() != q || s.q_points.size() != q)
    throw std::logic_error("colouring pencils do not have q members");

  std::set<std::pair<Subspace, Subspace>> seen;
  for (std::size_t i = 0; i < q; ++i) {
    std::vector<Subspace> m = points_of(space, lines[i]);
    for (const auto& x : points_of(space, planes[i]))
      if (!space.contains(line, x)) m.push_back(x);
    for (const auto& x : points_of(space, solids[i]))
      if (!space.contains(plane, x)) m.push_back(x);
    std::sort(m.begin(), m.end());
    for (const auto& x : m) {
      const Subspace l = space.span(x, s.q_points[i]);
      if (seen.emplace(x, l).second) s.classes.push_back({x, l});
    }
    s.m_sets.push_back(std::move(m));
  }
  std::sort(s.classes.begin(), s.classes.end(),
            [](const auto& a, const auto& b) { return std::tie(a.x, a.line) < std::tie(b.x, b.line); });
  return s;
}

ColoringScheme canonical_coloring_scheme(const ProjectiveSpace& space) {
  const CanonicalFrame f = canonical_frame(space);
  return make_coloring_scheme(space, f.point, f.line, f.plane, f.four_space, space.coordinate_span({3}));
}

std::vector<FlagSet> build_coloring(const ColoringScheme& scheme, const FlagUniverse& universe, int threads) {
  std::vector<FlagSet> out;
  for (const auto& c : scheme.classes) {
    LambdaSpec spec;
    spec.kind = LambdaKind::PointLine;
    spec.point = c.x;
    spec.line = c.line;
    out.push_back(build_lambda(spec, universe, threads));
  }
  return out;
}

std::vector<FlagSet> trivial_coloring(const Subspace& four_space, const FlagUniverse& universe, int threads) {
  const ProjectiveSpace& space = universe.space();
  space.require_member(four_space);
  require(four_space.dim() == 4, "trivial colouring needs a 4-space");
  std::vector<FlagSet> out;
  for (const auto& p : points_of(space, four_space)) {
    LambdaSpec spec;
    spec.kind = LambdaKind::Point;
    spec.point = p;
    out.push_back(build_lambda(spec, universe, threads));
  }
  return out;
}

}  // namespace flagkneser
