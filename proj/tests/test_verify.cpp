#include <doctest.h>

#include <random>
#include <set>

#include "flagkneser/constructions.hpp"
#include "flagkneser/counting.hpp"
#include "flagkneser/verify.hpp"

using namespace flagkneser;

namespace {

const FlagUniverse& universe2() {
  static const FlagUniverse u(2);
  return u;
}

FlagSet hyperplane_family(const FlagUniverse& u) {
  const CanonicalFrame f = canonical_frame(u.space());
  LambdaSpec s;
  s.kind = LambdaKind::HyperplaneFamily;
  s.hyperplane = f.hyperplane;
  s.planes = ekr_plane_family(u.space(), EkrPlaneKind::PointPencil, f.point, f.hyperplane);
  return build_lambda(s, u);
}

FlagSet point_line_family(const FlagUniverse& u) {
  const CanonicalFrame f = canonical_frame(u.space());
  LambdaSpec s;
  s.kind = LambdaKind::PointLine;
  s.point = f.point;
  s.line = f.line;
  return build_lambda(s, u);
}

// Smallest adjacent pair among members, by plain double loop.
std::vector<FlagId> naive_min_pair(const FlagSet& set) {
  const auto m = set.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (set.universe().adjacent(m[i], m[j])) return {m[i], m[j]};
  return {};
}

std::optional<FlagId> naive_first_extendable(const FlagSet& set) {
  const auto m = set.members();
  for (FlagId f = 0; f < set.universe().size(); ++f) {
    if (set.contains(f)) continue;
    bool blocked = false;
    for (FlagId g : m)
      if (set.universe().adjacent(f, g)) {
        blocked = true;
        break;
      }
    if (!blocked) return f;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("constructed families are independent and maximal") {
  const auto& u = universe2();
  for (const FlagSet& set : {hyperplane_family(u), point_line_family(u)}) {
    const auto ind = check_independent(set, 2);
    const auto max = check_maximal(set, 2);
    CHECK(ind.passed());
    CHECK(max.passed());
    CHECK(ind.cardinality == 11005);
    CHECK(ind.find("independent")->witness.empty());
  }
}

TEST_CASE("an adjacent pair is reported as the smallest one") {
  const auto& u = universe2();
  std::mt19937_64 rng(3);
  for (int t = 0; t < 3; ++t) {
    FlagSet set(u);
    for (int i = 0; i < 60; ++i) set.insert(static_cast<FlagId>(rng() % u.size()));
    const auto expected = naive_min_pair(set);
    REQUIRE_FALSE(expected.empty());
    for (int threads : {1, 4}) {
      const auto r = check_independent(set, threads);
      CHECK_FALSE(r.passed());
      CHECK(r.find("independent")->witness == expected);
    }
  }
  FlagSet doctored = hyperplane_family(u);
  FlagId outsider = 0;
  while (doctored.contains(outsider)) ++outsider;
  doctored.insert(outsider);
  const auto r = check_independent(doctored);
  CHECK_FALSE(r.passed());
  const auto& w = r.find("independent")->witness;
  REQUIRE(w.size() == 2);
  CHECK(u.adjacent(w[0], w[1]));
  CHECK((w[0] == outsider || w[1] == outsider));
}

TEST_CASE("removing a member exposes the first extendable flag") {
  const auto& u = universe2();
  FlagSet set = point_line_family(u);
  const auto members = set.members();
  set.erase(members[members.size() / 2]);
  const auto r = check_maximal(set, 3);
  CHECK_FALSE(r.passed());
  const auto expected = naive_first_extendable(set);
  REQUIRE(expected.has_value());
  REQUIRE(r.find("maximal")->witness.size() == 1);
  CHECK(r.find("maximal")->witness[0] == *expected);

  FlagSet small(u);
  small.insert(5);
  const auto r2 = check_maximal(small);
  CHECK(r2.find("maximal")->witness == std::vector<FlagId>{naive_first_extendable(small).value()});
}

TEST_CASE("saturation profile of the hyperplane family") {
  const auto& u = universe2();
  const FlagSet set = hyperplane_family(u);
  const auto profile = saturation_profile(set);
  const Subspace h = canonical_frame(u.space()).hyperplane;
  std::set<SolidId> in_h;
  for (SolidId s = 0; s < u.solid_count(); ++s)
    if (u.space().contains(h, u.solid(s))) in_h.insert(s);
  CHECK(in_h.size() == 651);
  CHECK(std::set<SolidId>(profile.saturated_solids.begin(), profile.saturated_solids.end()) == in_h);
  const auto report = saturation_report(set, profile, h);
  CHECK(report.passed());
  CHECK(report.find("saturated_solids_are_hyperplane_solids") != nullptr);

  // Naive saturated planes: every solid through the plane is a member.
  std::vector<PlaneId> sat_planes;
  for (PlaneId p = 0; p < u.plane_count(); ++p) {
    bool all = true;
    for (FlagId f : u.flags_on_plane(p)) all = all && set.contains(f);
    if (all) sat_planes.push_back(p);
  }
  CHECK(profile.saturated_planes == sat_planes);
  for (PlaneId p = 0; p < u.plane_count(); p += 37) {
    REQUIRE(profile.plane_span[p].has_value());
    const Subspace& span = *profile.plane_span[p];
    for (FlagId f : u.flags_on_plane(p))
      CHECK(set.contains(f) == u.space().contains(span, u.solid(u.solid_of(f))));
  }
}

TEST_CASE("saturation report flags a wrong hyperplane and a non-pencil solid") {
  const auto& u = universe2();
  const FlagSet set = hyperplane_family(u);
  const auto profile = saturation_profile(set);
  const auto wrong = saturation_report(set, profile, u.space().coordinate_span({1, 2, 3, 4, 5, 6}));
  CHECK_FALSE(wrong.find("saturated_solids_are_hyperplane_solids")->pass);

  // Two planes of a solid meeting only in a line give a non-pencil (their meet
  // is a line, but a third plane through that line is missing).
  FlagSet odd(u);
  const SolidId s = 0;
  odd.insert(static_cast<FlagId>(s * u.planes_per_solid() + 0));
  odd.insert(static_cast<FlagId>(s * u.planes_per_solid() + 1));
  const auto p2 = saturation_profile(odd);
  CHECK_FALSE(p2.solid_base[s].has_value());
  CHECK_FALSE(saturation_report(odd, p2).find("solid_pencils")->pass);
}

TEST_CASE("hyperplane and point traces") {
  const auto& u = universe2();
  const CanonicalFrame f = canonical_frame(u.space());
  const FlagSet he = hyperplane_family(u);
  const auto tr = check_hyperplane_trace_ekr(he, f.hyperplane);
  CHECK(tr.passed());
  CHECK(tr.find("trace_size_bound")->detail["trace_size"] == 155);

  std::set<PlaneId> naive;
  for (FlagId g : he.members()) {
    const Flag fl = u.flag(g);
    if (u.space().meet(fl.solid, f.hyperplane) == fl.plane) naive.insert(u.plane_of(g));
  }
  CHECK(naive.size() == 155);

  const FlagSet pl = point_line_family(u);
  const auto pt = check_point_trace_ekr(pl, f.point);
  CHECK(pt.passed());
  std::set<SolidId> naive_solids;
  for (FlagId g : pl.members()) {
    const Flag fl = u.flag(g);
    if (u.space().contains(fl.solid, f.point) && !u.space().contains(fl.plane, f.point))
      naive_solids.insert(u.solid_of(g));
  }
  CHECK(pt.find("point_trace_size_bound")->detail["trace_size"] == naive_solids.size());
}

TEST_CASE("bound on members skew to a plane but meeting it through the solid") {
  const auto& u = universe2();
  const FlagSet set = hyperplane_family(u);
  const std::uint64_t xi = max_flags_per_solid(set);
  CHECK(xi == 15);
  const FlagId f = set.members().front();
  const auto r = check_disjoint_plane_bound(set, f, xi);
  CHECK(r.passed());
  const Subspace e = u.flag(f).plane;
  std::uint64_t naive = 0;
  for (FlagId g : set.members()) {
    const Flag fl = u.flag(g);
    if (u.space().skew(fl.plane, e) && !u.space().skew(fl.solid, e)) ++naive;
  }
  CHECK(r.find("disjoint_plane_bound")->detail["count"] == naive);
  CHECK_FALSE(check_disjoint_plane_bound(set, f, 1).find("xi_hypothesis")->pass);
}

TEST_CASE("colouring verification") {
  const auto& u = universe2();
  const auto classes = build_coloring(canonical_coloring_scheme(u.space()), u);
  const auto r = check_coloring(classes);
  CHECK(r.passed());
  CHECK(r.find("classes_independent")->detail["class_sizes"].size() == 29);
  auto broken = classes;
  broken.pop_back();
  FlagSet all(u);
  for (const auto& c : broken) all |= c;
  const auto rb = check_coloring(broken);
  CHECK(rb.find("cover_complete")->pass == (all.size() == u.size()));
  if (!rb.find("cover_complete")->pass) {
    REQUIRE(rb.find("cover_complete")->witness.size() == 1);
    CHECK_FALSE(all.contains(rb.find("cover_complete")->witness[0]));
  }
}

TEST_CASE("chromatic lower bound report") {
  const auto r2 = chromatic_lower_report(2, &universe2());
  CHECK(r2.passed());
  const auto& d = r2.checks.front().detail;
  CHECK(d["ceil_ratio"] == 17);
  CHECK(d["polynomial"] == 17);
  CHECK(d["equal"] == true);
  const auto r3 = chromatic_lower_report(3);
  CHECK(r3.checks.front().detail["polynomial"] == 79);
  CHECK(r3.checks.front().detail["flag_count_source"] == "formula");
}

TEST_CASE("json rendering") {
  const auto& u = universe2();
  FlagSet set(u);
  set.insert(0);
  const auto j = to_json(check_independent(set), false);
  CHECK(j["checks"][0]["ms"] == 0.0);
  CHECK(j["checks"][0]["witness"].is_null());
  CHECK(j["cardinality"] == 1);
  CHECK(to_json(BigInt(5)) == 5);
  CHECK(to_json(int_pow(2, 80)).is_string());
}
