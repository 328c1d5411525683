#include <doctest.h>

#include <stdexcept>

#include "flagkneser/constructions.hpp"
#include "flagkneser/counting.hpp"
#include "flagkneser/flag_universe.hpp"

using namespace flagkneser;

namespace {

const FlagUniverse& universe2() {
  static const FlagUniverse u(2);
  return u;
}

LambdaSpec spec_of(LambdaKind kind, const ProjectiveSpace& space) {
  const CanonicalFrame f = canonical_frame(space);
  LambdaSpec s;
  s.kind = kind;
  switch (kind) {
    case LambdaKind::HyperplaneFamily:
      s.hyperplane = f.hyperplane;
      s.planes = ekr_plane_family(space, EkrPlaneKind::PointPencil, f.point, f.hyperplane);
      break;
    case LambdaKind::PointFamily:
      s.point = f.point;
      s.solids = ekr_solid_family(space, EkrSolidKind::LineStar, f.line, f.point);
      break;
    case LambdaKind::PointHyperplane:
    case LambdaKind::HyperplanePoint:
      s.point = f.point;
      s.hyperplane = f.hyperplane;
      break;
    case LambdaKind::PointLine:
      s.point = f.point;
      s.line = f.line;
      break;
    case LambdaKind::HyperplaneFourSpace:
      s.hyperplane = f.hyperplane;
      s.four_space = f.four_space;
      break;
    case LambdaKind::Point:
      s.point = f.point;
      break;
    case LambdaKind::Hyperplane:
      s.hyperplane = f.hyperplane;
      break;
  }
  return s;
}

constexpr LambdaKind kAllKinds[] = {LambdaKind::HyperplaneFamily, LambdaKind::PointFamily, LambdaKind::PointHyperplane,
                                    LambdaKind::HyperplanePoint,  LambdaKind::PointLine,   LambdaKind::HyperplaneFourSpace,
                                    LambdaKind::Point,            LambdaKind::Hyperplane};

}  // namespace

TEST_CASE("kind names round trip") {
  for (LambdaKind k : kAllKinds) CHECK(parse_kind(kind_name(k)) == k);
  CHECK(kind_name(LambdaKind::PointLine) == "P_l");
  CHECK_THROWS_AS(parse_kind("H_X"), std::invalid_argument);
}

TEST_CASE("family sizes at q = 2") {
  const auto& u = universe2();
  for (LambdaKind k : kAllKinds) {
    CAPTURE(kind_name(k));
    const LambdaSpec spec = spec_of(k, u.space());
    validate(u.space(), spec);
    const FlagSet set = build_lambda(spec, u);
    const bool empty_family = k == LambdaKind::Point || k == LambdaKind::Hyperplane;
    CHECK(BigInt(set.size()) == (empty_family ? hyperplane_family_size(2, 0) : independence_number(2)));
    CHECK(enumerate_lambda(u.space(), spec) == set.size());
  }
}

TEST_CASE("built sets agree with the membership predicate and with enumeration") {
  const auto& u = universe2();
  for (LambdaKind k : kAllKinds) {
    CAPTURE(kind_name(k));
    const LambdaSpec spec = spec_of(k, u.space());
    const FlagSet set = build_lambda(spec, u, 2);
    for (FlagId f = 0; f < u.size(); f += 7) CHECK(set.contains(f) == in_lambda(u.space(), spec, u.flag(f)));
    FlagSet seen(u);
    std::size_t visits = 0;
    enumerate_lambda(u.space(), spec, [&](const Flag& fl) {
      ++visits;
      const FlagId id = u.index(fl);
      CHECK_FALSE(seen.contains(id));
      seen.insert(id);
    });
    CHECK(visits == set.size());
    CHECK(seen == set);
  }
}

TEST_CASE("validation rejects broken anchors") {
  const ProjectiveSpace space(6, 2);
  const CanonicalFrame f = canonical_frame(space);
  const Subspace off = space.coordinate_span({6});

  LambdaSpec s = spec_of(LambdaKind::PointHyperplane, space);
  s.point = off;
  CHECK_THROWS_AS(validate(space, s), std::invalid_argument);

  s = spec_of(LambdaKind::HyperplaneFourSpace, space);
  s.four_space = space.coordinate_span({2, 3, 4, 5, 6});
  CHECK_THROWS_AS(validate(space, s), std::invalid_argument);

  s = spec_of(LambdaKind::PointLine, space);
  s.line = space.coordinate_span({1, 2});
  CHECK_THROWS_AS(validate(space, s), std::invalid_argument);

  s = spec_of(LambdaKind::HyperplaneFamily, space);
  s.planes = {space.coordinate_span({0, 1, 2}), space.coordinate_span({3, 4, 5})};
  CHECK_THROWS_AS(validate(space, s), std::invalid_argument);
  s.planes = {space.coordinate_span({4, 5, 6})};
  CHECK_THROWS_AS(validate(space, s), std::invalid_argument);

  s = spec_of(LambdaKind::PointFamily, space);
  s.solids = {space.coordinate_span({0, 1, 2, 3}), space.coordinate_span({0, 4, 5, 6})};
  CHECK_THROWS_AS(validate(space, s), std::invalid_argument);

  s = spec_of(LambdaKind::Hyperplane, space);
  s.hyperplane = f.four_space;
  CHECK_THROWS_AS(validate(space, s), std::invalid_argument);
  s.hyperplane.reset();
  CHECK_THROWS_AS(validate(space, s), std::invalid_argument);

  const ProjectiveSpace other(6, 3);
  s = spec_of(LambdaKind::Point, space);
  s.point = other.coordinate_span({0});
  CHECK_THROWS_AS(validate(space, s), std::invalid_argument);
}

TEST_CASE("EKR plane and solid families") {
  for (int q : {2, 3}) {
    const ProjectiveSpace space(6, q);
    const CanonicalFrame f = canonical_frame(space);
    const BigInt s14 = subspace_count(1, 4, q);
    for (auto kind : {EkrPlaneKind::PointPencil, EkrPlaneKind::FourSpace}) {
      const auto fam = ekr_plane_family(space, kind, kind == EkrPlaneKind::PointPencil ? f.point : f.four_space,
                                        f.hyperplane);
      CHECK(BigInt(fam.size()) == s14);
      for (std::size_t i = 0; i < fam.size(); i += 5)
        for (std::size_t j = 0; j < fam.size(); ++j) CHECK_FALSE(space.skew(fam[i], fam[j]));
    }
    for (auto kind : {EkrSolidKind::HyperplanePencil, EkrSolidKind::LineStar}) {
      const auto fam = ekr_solid_family(space, kind, kind == EkrSolidKind::LineStar ? f.line : f.hyperplane, f.point);
      CHECK(BigInt(fam.size()) == s14);
      for (std::size_t i = 0; i < fam.size(); i += 5)
        for (std::size_t j = 0; j < fam.size(); ++j) CHECK(space.meet_dim(fam[i], fam[j]) >= 1);
    }
    CHECK_THROWS_AS(ekr_plane_family(space, EkrPlaneKind::PointPencil, space.coordinate_span({6}), f.hyperplane),
                    std::invalid_argument);
    CHECK_THROWS_AS(ekr_solid_family(space, EkrSolidKind::LineStar, space.coordinate_span({1, 2}), f.point),
                    std::invalid_argument);
  }
}

TEST_CASE("line-meeting plane families in PG(5,2)") {
  const ProjectiveSpace space(5, 2);
  const auto star = line_meeting_plane_family(space, LineMeetingKind::LineStar, space.coordinate_span({0, 1}));
  const auto full = line_meeting_plane_family(space, LineMeetingKind::SolidFull, space.coordinate_span({0, 1, 2, 3}));
  for (const auto* fam : {&star, &full}) {
    CHECK(fam->size() == 15);
    for (const auto& a : *fam)
      for (const auto& b : *fam) CHECK(space.meet_dim(a, b) >= 1);
  }
  const ProjectiveSpace small(4, 2);
  CHECK_THROWS_AS(line_meeting_plane_family(small, LineMeetingKind::LineStar, small.coordinate_span({0, 1})),
                  std::invalid_argument);
}

TEST_CASE("colourings cover the universe with the stated number of classes") {
  const auto& u = universe2();
  const ColoringScheme scheme = canonical_coloring_scheme(u.space());
  CHECK(scheme.q_points.size() == 2);
  CHECK(scheme.m_sets.size() == 2);
  const auto classes = build_coloring(scheme, u);
  CHECK(BigInt(classes.size()) == chromatic_upper(2));
  const auto trivial = trivial_coloring(canonical_frame(u.space()).four_space, u);
  CHECK(BigInt(trivial.size()) == chromatic_trivial_upper(2));
  for (const auto* cs : {&classes, &trivial}) {
    FlagSet all(u);
    for (const auto& c : *cs) all |= c;
    CHECK(all.size() == u.size());
  }
  const ProjectiveSpace space3(6, 3);
  const ColoringScheme scheme3 = canonical_coloring_scheme(space3);
  CHECK(BigInt(scheme3.classes.size()) == chromatic_upper(3));
  const CanonicalFrame f = canonical_frame(u.space());
  CHECK_THROWS_AS(make_coloring_scheme(u.space(), f.point, f.line, f.plane, f.four_space, f.point),
                  std::invalid_argument);
}

TEST_CASE("duals of the point-side families are hyperplane-side families") {
  const auto& u = universe2();
  const ProjectiveSpace& space = u.space();
  const CanonicalFrame f = canonical_frame(space);

  LambdaSpec ph = spec_of(LambdaKind::PointHyperplane, space);
  LambdaSpec hp;
  hp.kind = LambdaKind::HyperplanePoint;
  hp.hyperplane = space.dualize(f.point);
  hp.point = space.dualize(f.hyperplane);
  validate(space, hp);
  CHECK(dualize(build_lambda(ph, u)) == build_lambda(hp, u));

  LambdaSpec pl = spec_of(LambdaKind::PointLine, space);
  LambdaSpec hu;
  hu.kind = LambdaKind::HyperplaneFourSpace;
  hu.hyperplane = space.dualize(f.point);
  hu.four_space = space.dualize(f.line);
  validate(space, hu);
  CHECK(dualize(build_lambda(pl, u)) == build_lambda(hu, u));
}
