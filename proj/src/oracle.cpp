#include "flagkneser/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "flagkneser/constructions.hpp"
#include "flagkneser/parallel.hpp"

namespace flagkneser {
namespace {

using Words = std::vector<std::uint64_t>;

Words bits_of(const ProjectiveSpace& space, const Subspace& s) {
  Words w(space.point_words(), 0);
  space.write_point_bits(s, w);
  return w;
}

bool words_subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool words_disjoint(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & b[i]) return false;
  return true;
}

int popcount(const Words& a, const Words& b) {
  int n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += __builtin_popcountll(a[i] & b[i]);
  return n;
}

// Point bitsets of every d-subspace of one space, flat.
struct SubspaceTable {
  std::size_t words = 0;
  std::size_t count = 0;
  Words bits;
};

SubspaceTable table_of(const ProjectiveSpace& space, int d) {
  SubspaceTable t;
  t.words = space.point_words();
  space.for_each_subspace(d, {}, [&](const Subspace& s) {
    t.bits.resize((t.count + 1) * t.words, 0);
    space.write_point_bits(s, {t.bits.data() + t.count * t.words, t.words});
    ++t.count;
  });
  return t;
}

std::uint64_t count_through_and_skew(const SubspaceTable& t, const Words& k_bits, const Words& l_bits) {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < t.count; ++i) {
    const std::uint64_t* s = t.bits.data() + i * t.words;
    n += words_subset(k_bits.data(), s, t.words) && words_disjoint(l_bits.data(), s, t.words);
  }
  return n;
}

BigInt registry(const std::string& name, int q, std::initializer_list<long long> params = {}) {
  const std::vector<long long> p(params);
  return FormulaRegistry::instance().eval(name, q, p);
}

Subspace leading_span(const ProjectiveSpace& space, int first, int dim) {
  std::vector<Vec> gens;
  for (int i = 0; i <= dim; ++i) gens.push_back(space.unit(first + i));
  return space.span_of(gens);
}

Subspace random_skew(const ProjectiveSpace& space, int d, const Subspace& other, std::mt19937_64& rng) {
  for (;;) {
    Subspace s = space.random_subspace(d, rng);
    if (space.skew(s, other)) return s;
  }
}

OracleResult skew_result(const ProjectiveSpace& space, const Subspace& l_sub, const Subspace& k_sub, int d,
                         std::uint64_t count) {
  OracleResult r;
  r.name = "skew_count";
  r.parameters = {{"q", space.order()},     {"n", space.dim()},          {"l", l_sub.dim()},
                  {"k", k_sub.dim()},       {"d", d},                    {"l_sub", l_sub.to_text()},
                  {"k_sub", k_sub.to_text()}};
  r.count = count;
  r.formula = "s_count";
  r.reference = registry("s_count", space.order(), {l_sub.dim(), k_sub.dim(), d, space.dim()});
  r.relation = Relation::Equal;
  settle(r);
  return r;
}

Vec random_nonzero(const ProjectiveSpace& space, std::mt19937_64& rng) {
  for (;;) {
    Vec v = space.random_vector(rng);
    if (std::any_of(v.begin(), v.begin() + space.coordinates(), [](Element e) { return e != 0; })) return v;
  }
}

nlohmann::json three_plane_parameters(const ThreePlaneConfig& c) {
  return {{"P1", c.p1.to_text()}, {"P2", c.p2.to_text()}, {"E1", c.e1.to_text()}, {"E2", c.e2.to_text()},
          {"E3", c.e3.to_text()}};
}

nlohmann::json two_solid_parameters(const TwoSolidConfig& c) {
  return {{"P", c.point.to_text()}, {"S1", c.s1.to_text()}, {"S2", c.s2.to_text()}};
}

}  // namespace

std::string_view relation_name(Relation r) {
  switch (r) {
    case Relation::Equal: return "equal";
    case Relation::AtMost: return "<=";
    case Relation::AtLeast: return ">=";
  }
  return "?";
}

void settle(OracleResult& r) {
  switch (r.relation) {
    case Relation::Equal: r.pass = r.count == r.reference; break;
    case Relation::AtMost: r.pass = r.count <= r.reference; break;
    case Relation::AtLeast: r.pass = r.count >= r.reference; break;
  }
}

nlohmann::json to_json(const OracleResult& r) {
  auto num = [](const BigInt& v) -> nlohmann::json {
    if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
    return v.str();
  };
  return {{"name", r.name},
          {"parameters", r.parameters},
          {"count", num(r.count)},
          {"formula", r.formula},
          {"reference", num(r.reference)},
          {"relation", relation_name(r.relation)},
          {"pass", r.pass},
          {"detail", r.detail}};
}

OracleResult count_skew_constrained(const ProjectiveSpace& space, const Subspace& l_sub, const Subspace& k_sub, int d) {
  space.require_member(l_sub);
  space.require_member(k_sub);
  if (!space.skew(l_sub, k_sub))
    throw std::invalid_argument("l-subspace " + l_sub.to_text() + " and k-subspace " + k_sub.to_text() + " are not skew");
  if (d < -1 || d > space.dim()) throw std::invalid_argument("d=" + std::to_string(d) + " outside [-1, n]");
  const SubspaceTable t = table_of(space, d);
  return skew_result(space, l_sub, k_sub, d, count_through_and_skew(t, bits_of(space, k_sub), bits_of(space, l_sub)));
}

std::vector<OracleResult> skew_count_grid(int q, int max_n, int random_configs, std::uint64_t seed, int threads) {
  if (max_n < 0 || max_n > kMaxProjectiveDim) throw std::invalid_argument("grid dimension out of range");
  struct Job {
    int n, d;
    Subspace l_sub, k_sub;
    std::string config;
    std::uint64_t seed;
  };
  std::vector<ProjectiveSpace> spaces;
  std::vector<std::vector<SubspaceTable>> tables;
  std::vector<Job> jobs;
  for (int n = 0; n <= max_n; ++n) {
    spaces.emplace_back(n, q);
    const ProjectiveSpace& space = spaces.back();
    tables.emplace_back();
    for (int d = -1; d <= n; ++d) tables.back().push_back(table_of(space, d));
    for (int l = -1; l <= n; ++l)
      for (int k = -1; l + k <= n - 1; ++k) {
        std::vector<std::pair<Subspace, Subspace>> configs;
        configs.emplace_back(leading_span(space, 0, l), leading_span(space, n - k, k));
        for (int c = 0; c < random_configs; ++c) {
          std::mt19937_64 rng(seed + static_cast<std::uint64_t>(c));
          Subspace ls = space.random_subspace(l, rng);
          configs.emplace_back(ls, random_skew(space, k, ls, rng));
        }
        for (int d = -1; d <= n; ++d)
          for (std::size_t c = 0; c < configs.size(); ++c)
            jobs.push_back({n, d, configs[c].first, configs[c].second, c == 0 ? "canonical" : "random",
                            c == 0 ? 0 : seed + c - 1});
      }
  }
  std::vector<OracleResult> out(jobs.size());
  parallel_chunks(jobs.size(), threads, [&](std::size_t b, std::size_t e, int) {
    for (std::size_t i = b; i < e; ++i) {
      const Job& j = jobs[i];
      const ProjectiveSpace& space = spaces[static_cast<std::size_t>(j.n)];
      const auto count = count_through_and_skew(tables[static_cast<std::size_t>(j.n)][static_cast<std::size_t>(j.d + 1)],
                                                bits_of(space, j.k_sub), bits_of(space, j.l_sub));
      out[i] = skew_result(space, j.l_sub, j.k_sub, j.d, count);
      out[i].parameters["config"] = j.config;
      if (j.config != "canonical") out[i].parameters["seed"] = j.seed;
    }
  });
  return out;
}

void validate(const ProjectiveSpace& space, const ThreePlaneConfig& c) {
  for (const auto* s : {&c.p1, &c.p2, &c.e1, &c.e2, &c.e3}) space.require_member(*s);
  if (c.p1.dim() != 0 || c.p2.dim() != 0) throw std::invalid_argument("P1 and P2 must be points");
  const std::array<const Subspace*, 3> planes = {&c.e1, &c.e2, &c.e3};
  for (int i = 0; i < 3; ++i)
    if (planes[i]->dim() != 2) throw std::invalid_argument("E" + std::to_string(i + 1) + " is not a plane");
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const std::string pair = std::to_string(i + 1) + std::to_string(j + 1);
      if (space.meet(*planes[i], *planes[j]) != c.p1) throw std::invalid_argument("E" + pair + ": planes do not meet exactly in P1");
      if (space.contains(space.span(*planes[i], *planes[j]), c.p2))
        throw std::invalid_argument("E" + pair + ": P2 lies in the span of the two planes");
    }
}

ThreePlaneConfig canonical_three_plane_config(const ProjectiveSpace& space) {
  Vec p2{};
  p2[1] = p2[3] = p2[5] = 1;
  return {space.coordinate_span({0}), space.point(p2), space.coordinate_span({0, 1, 2}), space.coordinate_span({0, 3, 4}),
          space.coordinate_span({0, 5, 6})};
}

ThreePlaneConfig random_three_plane_config(const ProjectiveSpace& space, std::mt19937_64& rng) {
  for (;;) {
    const Vec p1 = random_nonzero(space, rng);
    ThreePlaneConfig c;
    c.p1 = space.point(p1);
    for (Subspace* e : {&c.e1, &c.e2, &c.e3})
      do *e = space.span_of({p1, space.random_vector(rng), space.random_vector(rng)});
      while (e->dim() != 2);
    c.p2 = space.point(random_nonzero(space, rng));
    try {
      validate(space, c);
      return c;
    } catch (const std::invalid_argument&) {
    }
  }
}

OracleResult count_solids_meeting_three_planes(const ProjectiveSpace& space, const ThreePlaneConfig& c) {
  validate(space, c);
  std::uint64_t count = 0;
  std::uint64_t through = 0;
  SubspaceConstraints on_p2;
  on_p2.contains = c.p2;
  space.for_each_subspace(3, on_p2, [&](const Subspace& s) {
    ++through;
    count += space.meet_dim(s, c.e1) >= 0 && space.meet_dim(s, c.e2) >= 0 && space.meet_dim(s, c.e3) >= 0;
  });
  OracleResult r;
  r.name = "a0b3";
  r.parameters = three_plane_parameters(c);
  r.parameters["q"] = space.order();
  r.count = count;
  r.formula = "a0b3_bound";
  r.reference = registry("a0b3_bound", space.order());
  r.relation = Relation::AtMost;
  r.detail = {{"solids_through_p2", through}};
  settle(r);
  return r;
}

std::vector<OracleResult> three_plane_sweep(int q, int sweeps, std::uint64_t seed, int threads) {
  const ProjectiveSpace space(6, q);
  std::vector<ThreePlaneConfig> configs{canonical_three_plane_config(space)};
  for (int i = 0; i < sweeps; ++i) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
    configs.push_back(random_three_plane_config(space, rng));
  }
  std::vector<OracleResult> out(configs.size());
  parallel_chunks(configs.size(), threads, [&](std::size_t b, std::size_t e, int) {
    for (std::size_t i = b; i < e; ++i) {
      out[i] = count_solids_meeting_three_planes(space, configs[i]);
      out[i].parameters["config"] = i == 0 ? "canonical" : "random";
      if (i > 0) out[i].parameters["seed"] = seed + i - 1;
    }
  });
  BigInt best = 0;
  for (const auto& r : out) best = std::max(best, r.count);
  for (auto& r : out) r.detail["sweep_max"] = best.convert_to<std::uint64_t>();
  return out;
}

void validate(const ProjectiveSpace& space, const TwoSolidConfig& c) {
  for (const auto* s : {&c.point, &c.s1, &c.s2}) space.require_member(*s);
  if (c.point.dim() != 0) throw std::invalid_argument("P must be a point");
  if (c.s1.dim() != 3 || c.s2.dim() != 3) throw std::invalid_argument("S1 and S2 must be solids");
  if (space.meet_dim(c.s1, c.s2) > 1) throw std::invalid_argument("S1 and S2 meet in more than a line");
  if (space.contains(c.s1, c.point)) throw std::invalid_argument("P lies in S1");
  if (space.contains(c.s2, c.point)) throw std::invalid_argument("P lies in S2");
}

int two_solid_u(const ProjectiveSpace& space, const TwoSolidConfig& c) {
  return space.meet(space.span(c.point, c.s2), c.s1).dim();
}

TwoSolidConfig canonical_two_solid_config(const ProjectiveSpace& space, int u) {
  Vec a{};
  if (u == 2) {
    a[3] = a[4] = 1;
    return {space.coordinate_span({4}), space.coordinate_span({0, 1, 2, 3}),
            space.span_of({space.unit(0), space.unit(1), a, space.unit(5)})};
  }
  if (u == 1) {
    a[0] = a[4] = 1;
    return {space.point(a), space.coordinate_span({0, 1, 2, 3}), space.coordinate_span({3, 4, 5, 6})};
  }
  throw std::invalid_argument("u must be 1 or 2, got " + std::to_string(u));
}

TwoSolidConfig random_two_solid_config(const ProjectiveSpace& space, std::mt19937_64& rng) {
  for (;;) {
    TwoSolidConfig c{space.point(random_nonzero(space, rng)), space.random_subspace(3, rng), space.random_subspace(3, rng)};
    try {
      validate(space, c);
      return c;
    } catch (const std::invalid_argument&) {
    }
  }
}

OracleResult count_planes_meeting_two_solids(const ProjectiveSpace& space, const TwoSolidConfig& c) {
  validate(space, c);
  const Subspace u1 = space.meet(space.span(c.point, c.s2), c.s1);
  const int u = u1.dim();
  const Subspace v = space.span(u1, c.point);
  std::array<std::uint64_t, 3> parts{};
  std::uint64_t on_p = 0;
  SubspaceConstraints through;
  through.contains = c.point;
  space.for_each_subspace(2, through, [&](const Subspace& e) {
    ++on_p;
    if (space.meet_dim(e, c.s1) < 0 || space.meet_dim(e, c.s2) < 0) return;
    ++parts[static_cast<std::size_t>(space.meet_dim(e, v))];
  });
  const std::uint64_t total = parts[0] + parts[1] + parts[2];

  OracleResult r;
  r.name = "hilfslemma";
  r.parameters = two_solid_parameters(c);
  r.parameters["q"] = space.order();
  r.parameters["u"] = u;
  r.parameters["s1_meet_s2_dim"] = space.meet_dim(c.s1, c.s2);
  r.count = total;
  r.formula = "hilfslemma_exact";
  r.reference = registry("hilfslemma_exact", space.order(), {u});
  r.relation = Relation::Equal;
  settle(r);

  const BigInt bound = registry("hilfslemma_bound", space.order());
  const auto expected_parts = planes_meeting_two_solids_parts(u, space.order());
  bool parts_ok = true;
  for (std::size_t i = 0; i < 3; ++i) parts_ok = parts_ok && BigInt(parts[i]) == expected_parts[i];
  r.detail = {{"planes_on_p", on_p},
              {"parts", {{"meet_v_in_p", parts[0]}, {"meet_v_in_line", parts[1]}, {"inside_v", parts[2]}}},
              {"expected_parts",
               {expected_parts[0].convert_to<std::uint64_t>(), expected_parts[1].convert_to<std::uint64_t>(),
                expected_parts[2].convert_to<std::uint64_t>()}},
              {"parts_match", parts_ok},
              {"bound", bound.convert_to<std::uint64_t>()},
              {"within_bound", r.count <= bound}};
  r.pass = r.pass && parts_ok && r.count <= bound;
  return r;
}

std::vector<OracleResult> two_solid_sweep(int q, int sweeps, std::uint64_t seed, int threads) {
  const ProjectiveSpace space(6, q);
  std::vector<TwoSolidConfig> configs{canonical_two_solid_config(space, 1), canonical_two_solid_config(space, 2)};
  for (int i = 0; i < sweeps; ++i) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
    configs.push_back(random_two_solid_config(space, rng));
  }
  std::vector<OracleResult> out(configs.size());
  parallel_chunks(configs.size(), threads, [&](std::size_t b, std::size_t e, int) {
    for (std::size_t i = b; i < e; ++i) {
      out[i] = count_planes_meeting_two_solids(space, configs[i]);
      out[i].parameters["config"] = i < 2 ? "canonical" : "random";
      if (i >= 2) out[i].parameters["seed"] = seed + i - 2;
    }
  });
  return out;
}

std::vector<OracleResult> max_line_meeting_family_check(int n, int q, int sweeps, std::uint64_t seed) {
  if (n != 5 || q != 2) throw std::invalid_argument("line-meeting family search runs at n=5, q=2 only");
  const ProjectiveSpace space(n, q);
  const std::vector<Subspace> planes = space.subspaces(2);
  std::vector<Words> bits;
  for (const auto& p : planes) bits.push_back(bits_of(space, p));
  const int line_points = q + 1;
  auto meet_in_line = [&](std::size_t a, std::size_t b) { return popcount(bits[a], bits[b]) >= line_points; };
  auto index_of = [&](const Subspace& s) {
    return static_cast<std::size_t>(std::lower_bound(planes.begin(), planes.end(), s) - planes.begin());
  };
  const BigInt bound = registry("line_meeting_planes_bound", q, {n});
  std::vector<OracleResult> out;

  const CanonicalFrame frame = canonical_frame(space);
  for (auto [kind, anchor, name] :
       {std::tuple{LineMeetingKind::LineStar, frame.line, "line_star"}, std::tuple{LineMeetingKind::SolidFull, frame.solid, "solid_full"}}) {
    const auto family = line_meeting_plane_family(space, kind, anchor);
    std::vector<std::size_t> ids;
    for (const auto& f : family) ids.push_back(index_of(f));
    bool pairwise = true;
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j) pairwise = pairwise && meet_in_line(ids[i], ids[j]);
    std::vector<bool> member(planes.size(), false);
    for (auto i : ids) member[i] = true;
    std::uint64_t extensions = 0;
    nlohmann::json first_extension = nullptr;
    for (std::size_t x = 0; x < planes.size(); ++x) {
      if (member[x]) continue;
      if (std::all_of(ids.begin(), ids.end(), [&](std::size_t m) { return meet_in_line(x, m); })) {
        if (extensions++ == 0) first_extension = planes[x].to_text();
      }
    }
    OracleResult r;
    r.name = std::string("b78_") + name;
    r.parameters = {{"n", n}, {"q", q}, {"anchor", anchor.to_text()}};
    r.count = family.size();
    r.formula = "line_meeting_planes_bound";
    r.reference = bound;
    r.relation = Relation::Equal;
    settle(r);
    r.detail = {{"planes_tried", planes.size()},
                {"pairwise_line", pairwise},
                {"extensions", extensions},
                {"first_extension", first_extension},
                {"maximal", extensions == 0}};
    r.pass = r.pass && pairwise && extensions == 0;
    out.push_back(std::move(r));
  }

  // Three planes pairwise meeting in lines, not all through one line, span a solid.
  {
    const std::size_t a = index_of(frame.plane);
    std::uint64_t triples = 0;
    std::uint64_t violations = 0;
    nlohmann::json first_violation = nullptr;
    for (std::size_t b = 0; b < planes.size(); ++b) {
      if (b == a || !meet_in_line(a, b)) continue;
      for (std::size_t c = b + 1; c < planes.size(); ++c) {
        if (c == a || !meet_in_line(a, c) || !meet_in_line(b, c)) continue;
        int common = 0;
        for (std::size_t w = 0; w < bits[a].size(); ++w) common += __builtin_popcountll(bits[a][w] & bits[b][w] & bits[c][w]);
        if (common >= line_points) continue;
        ++triples;
        if (space.span(space.span(planes[a], planes[b]), planes[c]).dim() != 3 && violations++ == 0)
          first_violation = {planes[a].to_text(), planes[b].to_text(), planes[c].to_text()};
      }
    }
    OracleResult r;
    r.name = "b78_dichotomy";
    r.parameters = {{"n", n}, {"q", q}, {"first_plane", frame.plane.to_text()}};
    r.count = violations;
    r.formula = "";
    r.reference = 0;
    r.relation = Relation::Equal;
    r.detail = {{"triples_without_common_line", triples}, {"first_violation", first_violation}};
    settle(r);
    out.push_back(std::move(r));
  }

  {
    std::uint64_t largest = 0;
    std::uint64_t non_standard = 0;
    nlohmann::json sizes = nlohmann::json::array();
    std::vector<std::size_t> order(planes.size());
    for (int s = 0; s < sweeps; ++s) {
      std::mt19937_64 rng(seed + static_cast<std::uint64_t>(s));
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<std::size_t> fam;
      for (auto x : order)
        if (std::all_of(fam.begin(), fam.end(), [&](std::size_t m) { return meet_in_line(x, m); })) fam.push_back(x);
      Words common(bits[0].size(), ~std::uint64_t{0});
      Subspace span = space.empty();
      for (auto m : fam) {
        for (std::size_t w = 0; w < common.size(); ++w) common[w] &= bits[m][w];
        span = space.span(span, planes[m]);
      }
      int common_points = 0;
      for (auto w : common) common_points += __builtin_popcountll(w);
      if (common_points < line_points && span.dim() > 3) ++non_standard;
      largest = std::max<std::uint64_t>(largest, fam.size());
      sizes.push_back(fam.size());
    }
    OracleResult r;
    r.name = "b78_greedy";
    r.parameters = {{"n", n}, {"q", q}, {"sweeps", sweeps}, {"seed", seed}};
    r.count = largest;
    r.formula = "line_meeting_planes_bound";
    r.reference = bound;
    r.relation = Relation::AtMost;
    settle(r);
    r.detail = {{"sizes", sizes}, {"neither_star_nor_solid", non_standard}};
    r.pass = r.pass && non_standard == 0;
    out.push_back(std::move(r));
  }
  return out;
}

OracleResult complement_count_check(int d, int n, int q) {
  if (n < 1 || n > kMaxCoordinates) throw std::invalid_argument("vector dimension n=" + std::to_string(n) + " outside [1, 7]");
  if (d < 0 || d > n) throw std::invalid_argument("d=" + std::to_string(d) + " outside [0, n]");
  const ProjectiveSpace space(n - 1, q);
  std::vector<Vec> gens;
  for (int i = 0; i < d; ++i) gens.push_back(space.unit(i));
  const Subspace fixed = space.span_of(gens);
  std::uint64_t candidates = 0;
  std::uint64_t count = 0;
  space.for_each_subspace(n - d - 1, {}, [&](const Subspace& w) {
    ++candidates;
    count += space.skew(fixed, w);
  });
  OracleResult r;
  r.name = "complement_count";
  r.parameters = {{"d", d}, {"n", n}, {"q", q}, {"subspace", fixed.to_text()}};
  r.count = count;
  r.formula = "complement_count";
  r.reference = registry("complement_count", q, {d, n});
  r.relation = Relation::Equal;
  r.detail = {{"candidates", candidates}};
  settle(r);
  return r;
}

}  // namespace flagkneser
