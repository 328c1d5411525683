#include "flagkneser/verify.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>

#include "flagkneser/parallel.hpp"

namespace flagkneser {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::size_t popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::size_t>(__builtin_popcountll(a[i] & b[i]));
  return n;
}

// Member point data laid out contiguously: plane words then solid words.
struct PackedMembers {
  std::vector<FlagId> ids;
  std::vector<std::uint64_t> words;
  std::size_t w = 0;

  explicit PackedMembers(const FlagSet& set) : ids(set.members()), w(set.universe().words()) {
    const FlagUniverse& u = set.universe();
    words.resize(ids.size() * 2 * w);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      auto p = u.plane_points(u.plane_of(ids[i]));
      auto s = u.solid_points(u.solid_of(ids[i]));
      std::copy(p.begin(), p.end(), words.begin() + static_cast<std::ptrdiff_t>(2 * w * i));
      std::copy(s.begin(), s.end(), words.begin() + static_cast<std::ptrdiff_t>(2 * w * i + w));
    }
  }
  const std::uint64_t* plane(std::size_t i) const { return words.data() + 2 * w * i; }
  const std::uint64_t* solid(std::size_t i) const { return words.data() + 2 * w * i + w; }
};

template <std::size_t W>
inline bool disjoint_n(const std::uint64_t* a, const std::uint64_t* b, std::size_t w) {
  if constexpr (W != 0) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < W; ++i) acc |= a[i] & b[i];
    return acc == 0;
  } else {
    for (std::size_t i = 0; i < w; ++i)
      if (a[i] & b[i]) return false;
    return true;
  }
}

template <std::size_t W>
std::optional<std::pair<FlagId, FlagId>> first_adjacent_pair(const PackedMembers& m, std::size_t begin, std::size_t end) {
  const std::size_t n = m.ids.size();
  for (std::size_t i = begin; i < end; ++i) {
    const auto* pi = m.plane(i);
    const auto* si = m.solid(i);
    for (std::size_t j = i + 1; j < n; ++j)
      if (disjoint_n<W>(pi, m.solid(j), m.w) && disjoint_n<W>(m.plane(j), si, m.w)) return std::make_pair(m.ids[i], m.ids[j]);
  }
  return std::nullopt;
}

template <std::size_t W>
std::optional<FlagId> first_extendable(const FlagUniverse& u, const FlagSet& set, const PackedMembers& m,
                                       std::size_t begin, std::size_t end) {
  const std::size_t n = m.ids.size();
  std::size_t hint = 0;
  for (std::size_t f = begin; f < end; ++f) {
    if (set.contains(static_cast<FlagId>(f))) continue;
    const auto* fp = u.plane_points(u.plane_of(static_cast<FlagId>(f))).data();
    const auto* fs = u.solid_points(u.solid_of(static_cast<FlagId>(f))).data();
    bool found = false;
    for (std::size_t k = 0; k < n && !found; ++k) {
      const std::size_t j = hint + k < n ? hint + k : hint + k - n;
      if (disjoint_n<W>(fp, m.solid(j), m.w) && disjoint_n<W>(m.plane(j), fs, m.w)) {
        found = true;
        hint = j;
      }
    }
    if (!found) return static_cast<FlagId>(f);
  }
  return std::nullopt;
}

std::string describe(const FlagSet& set) {
  return "flag set of PG(6," + std::to_string(set.universe().order()) + "), " + std::to_string(set.size()) + " flags";
}

VerificationReport make_report(const FlagSet& set) {
  VerificationReport r;
  r.subject = describe(set);
  r.q = set.universe().order();
  r.cardinality = set.size();
  return r;
}

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void VerificationReport::merge(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  if (!expected && other.expected) expected = other.expected;
}

nlohmann::json to_json(const BigInt& value) {
  if (value >= 0 && value <= std::numeric_limits<std::uint64_t>::max()) return value.convert_to<std::uint64_t>();
  return value.str();
}

nlohmann::json to_json(const VerificationReport& report, bool timings) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json witness = c.witness.empty() ? nlohmann::json(nullptr) : nlohmann::json(c.witness);
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", witness}, {"ms", timings ? c.ms : 0.0}, {"detail", c.detail.is_null() ? nlohmann::json::object() : c.detail}});
  }
  return {{"subject", report.subject},
          {"q", report.q},
          {"checks", checks},
          {"cardinality", report.cardinality},
          {"expected", report.expected ? to_json(*report.expected) : nlohmann::json(nullptr)}};
}

VerificationReport check_independent(const FlagSet& set, int threads) {
  const auto start = Clock::now();
  const PackedMembers m(set);
  const int workers = threads <= 0 ? default_threads() : threads;
  std::vector<std::optional<std::pair<FlagId, FlagId>>> found(static_cast<std::size_t>(workers));
  parallel_chunks(m.ids.size(), workers, [&](std::size_t b, std::size_t e, int w) {
    found[static_cast<std::size_t>(w)] = m.w == 2 ? first_adjacent_pair<2>(m, b, e) : first_adjacent_pair<0>(m, b, e);
  });
  std::optional<std::pair<FlagId, FlagId>> best;
  for (const auto& f : found)
    if (f && (!best || *f < *best)) best = f;

  VerificationReport r = make_report(set);
  CheckResult c{"independent", !best, {}, elapsed_ms(start), {}};
  if (best) c.witness = {best->first, best->second};
  r.checks.push_back(std::move(c));
  return r;
}

VerificationReport check_maximal(const FlagSet& set, int threads) {
  const auto start = Clock::now();
  const FlagUniverse& u = set.universe();
  const PackedMembers m(set);
  const int workers = threads <= 0 ? default_threads() : threads;
  std::vector<std::optional<FlagId>> found(static_cast<std::size_t>(workers));
  parallel_chunks(u.size(), workers, [&](std::size_t b, std::size_t e, int w) {
    found[static_cast<std::size_t>(w)] = m.w == 2 ? first_extendable<2>(u, set, m, b, e) : first_extendable<0>(u, set, m, b, e);
  });
  std::optional<FlagId> best;
  for (const auto& f : found)
    if (f && (!best || *f < *best)) best = f;

  VerificationReport r = make_report(set);
  CheckResult c{"maximal", !best, {}, elapsed_ms(start), {}};
  if (best) c.witness = {*best};
  r.checks.push_back(std::move(c));
  return r;
}

SaturationProfile saturation_profile(const FlagSet& set, int threads) {
  const FlagUniverse& u = set.universe();
  const ProjectiveSpace& space = u.space();
  const std::size_t w = u.words();
  SaturationProfile prof;
  prof.plane_span.resize(u.plane_count());
  prof.solid_base.resize(u.solid_count());
  std::vector<char> plane_sat(u.plane_count(), 0);
  std::vector<char> solid_sat(u.solid_count(), 0);

  parallel_chunks(u.plane_count(), threads, [&](std::size_t b, std::size_t e, int) {
    std::vector<std::uint64_t> span_bits(w);
    for (std::size_t p = b; p < e; ++p) {
      Subspace span = u.plane(static_cast<PlaneId>(p));
      std::size_t members = 0;
      for (FlagId f : u.flags_on_plane(static_cast<PlaneId>(p))) {
        if (!set.contains(f)) continue;
        ++members;
        span = space.span(span, u.solid(u.solid_of(f)));
      }
      std::fill(span_bits.begin(), span_bits.end(), 0);
      space.write_point_bits(span, span_bits);
      bool ok = true;
      for (FlagId f : u.flags_on_plane(static_cast<PlaneId>(p)))
        ok = ok && (set.contains(f) == subset_of(u.solid_points(u.solid_of(f)), span_bits));
      if (ok) prof.plane_span[p] = span;
      plane_sat[p] = members == u.solids_per_plane();
    }
  });

  parallel_chunks(u.solid_count(), threads, [&](std::size_t b, std::size_t e, int) {
    std::vector<std::uint64_t> base_bits(w);
    for (std::size_t s = b; s < e; ++s) {
      const auto sp = u.solid_points(static_cast<SolidId>(s));
      std::copy(sp.begin(), sp.end(), base_bits.begin());
      Subspace base = u.solid(static_cast<SolidId>(s));
      const FlagId first = static_cast<FlagId>(s * u.planes_per_solid());
      std::size_t members = 0;
      for (FlagId f = first; f < first + u.planes_per_solid(); ++f) {
        if (!set.contains(f)) continue;
        ++members;
        const auto pp = u.plane_points(u.plane_of(f));
        for (std::size_t i = 0; i < w; ++i) base_bits[i] &= pp[i];
        base = space.meet(base, u.plane(u.plane_of(f)));
      }
      bool ok = true;
      for (FlagId f = first; f < first + u.planes_per_solid(); ++f)
        ok = ok && (set.contains(f) == subset_of(base_bits, u.plane_points(u.plane_of(f))));
      if (ok) prof.solid_base[s] = base;
      solid_sat[s] = members == u.planes_per_solid();
    }
  });

  for (std::size_t p = 0; p < plane_sat.size(); ++p)
    if (plane_sat[p]) prof.saturated_planes.push_back(static_cast<PlaneId>(p));
  for (std::size_t s = 0; s < solid_sat.size(); ++s)
    if (solid_sat[s]) prof.saturated_solids.push_back(static_cast<SolidId>(s));
  return prof;
}

VerificationReport saturation_report(const FlagSet& set, const SaturationProfile& profile,
                                     const std::optional<Subspace>& hyperplane) {
  const auto start = Clock::now();
  const FlagUniverse& u = set.universe();
  VerificationReport r = make_report(set);

  auto first_flag_of_plane = [&](PlaneId p) { return u.flags_on_plane(p)[0]; };
  CheckResult planes{"plane_quotient_subspaces", true, {}, 0.0, {}};
  for (std::size_t p = 0; p < profile.plane_span.size() && planes.pass; ++p)
    if (!profile.plane_span[p]) {
      planes.pass = false;
      planes.witness = {first_flag_of_plane(static_cast<PlaneId>(p))};
    }
  planes.ms = elapsed_ms(start);
  r.checks.push_back(planes);

  CheckResult solids{"solid_pencils", true, {}, 0.0, {}};
  for (std::size_t s = 0; s < profile.solid_base.size() && solids.pass; ++s)
    if (!profile.solid_base[s]) {
      solids.pass = false;
      solids.witness = {static_cast<FlagId>(s * u.planes_per_solid())};
    }
  solids.ms = elapsed_ms(start);
  r.checks.push_back(solids);

  CheckResult meets{"saturated_solids_share_line", true, {}, 0.0, {}};
  const std::size_t line_points = static_cast<std::size_t>(u.order() + 1);
  const auto& sat = profile.saturated_solids;
  for (std::size_t i = 0; i < sat.size() && meets.pass; ++i)
    for (std::size_t j = i + 1; j < sat.size() && meets.pass; ++j)
      if (popcount(u.solid_points(sat[i]), u.solid_points(sat[j])) < line_points) {
        meets.pass = false;
        meets.witness = {static_cast<FlagId>(sat[i] * u.planes_per_solid()), static_cast<FlagId>(sat[j] * u.planes_per_solid())};
      }
  meets.detail = {{"saturated_solids", sat.size()}, {"saturated_planes", profile.saturated_planes.size()}};
  meets.ms = elapsed_ms(start);
  r.checks.push_back(meets);

  if (hyperplane) {
    const ProjectiveSpace& space = u.space();
    space.require_member(*hyperplane);
    std::vector<SolidId> in_h;
    for (std::size_t s = 0; s < u.solid_count(); ++s)
      if (space.contains(*hyperplane, u.solid(static_cast<SolidId>(s)))) in_h.push_back(static_cast<SolidId>(s));
    CheckResult exact{"saturated_solids_are_hyperplane_solids", in_h == sat, {}, 0.0, {}};
    if (!exact.pass) {
      std::vector<SolidId> diff;
      std::set_symmetric_difference(in_h.begin(), in_h.end(), sat.begin(), sat.end(), std::back_inserter(diff));
      exact.witness = {static_cast<FlagId>(diff.front() * u.planes_per_solid())};
    }
    exact.detail = {{"hyperplane_solids", in_h.size()}};
    exact.ms = elapsed_ms(start);
    r.checks.push_back(exact);
  }
  return r;
}

VerificationReport check_hyperplane_trace_ekr(const FlagSet& set, const Subspace& hyperplane) {
  const auto start = Clock::now();
  const FlagUniverse& u = set.universe();
  u.space().require_member(hyperplane);
  if (hyperplane.dim() != kFlagAmbientDim - 1) throw std::invalid_argument("trace check needs a hyperplane");
  const PointSet hbits = u.space().point_set(hyperplane);
  std::vector<std::uint64_t> h(u.words(), 0);
  boost::to_block_range(hbits, h.begin());

  std::vector<FlagId> first_flag(u.plane_count(), std::numeric_limits<FlagId>::max());
  std::vector<PlaneId> trace;
  for (FlagId f : set.members()) {
    const PlaneId p = u.plane_of(f);
    if (subset_of(u.plane_points(p), h) && !subset_of(u.solid_points(u.solid_of(f)), h)) {
      if (first_flag[p] == std::numeric_limits<FlagId>::max()) trace.push_back(p);
      first_flag[p] = std::min(first_flag[p], f);
    }
  }
  std::sort(trace.begin(), trace.end());

  VerificationReport r = make_report(set);
  CheckResult pairwise{"trace_pairwise_intersecting", true, {}, 0.0, {}};
  for (std::size_t i = 0; i < trace.size() && pairwise.pass; ++i)
    for (std::size_t j = i + 1; j < trace.size() && pairwise.pass; ++j)
      if (disjoint(u.plane_points(trace[i]), u.plane_points(trace[j]))) {
        pairwise.pass = false;
        pairwise.witness = {first_flag[trace[i]], first_flag[trace[j]]};
      }
  pairwise.ms = elapsed_ms(start);
  r.checks.push_back(pairwise);

  const BigInt bound = subspace_count(1, 4, u.order());
  CheckResult size{"trace_size_bound", BigInt(trace.size()) <= bound, {}, elapsed_ms(start),
                   {{"trace_size", trace.size()}, {"bound", to_json(bound)}}};
  r.checks.push_back(size);
  r.expected = bound;
  return r;
}

VerificationReport check_point_trace_ekr(const FlagSet& set, const Subspace& point) {
  const auto start = Clock::now();
  const FlagUniverse& u = set.universe();
  u.space().require_member(point);
  if (point.dim() != 0) throw std::invalid_argument("point trace check needs a point");
  const PointIndex pi = u.space().point_index(point.rows()[0]);
  auto has = [&](std::span<const std::uint64_t> bits) { return (bits[pi >> 6] >> (pi & 63)) & 1u; };

  std::vector<FlagId> first_flag(u.solid_count(), std::numeric_limits<FlagId>::max());
  std::vector<SolidId> trace;
  for (FlagId f : set.members()) {
    const SolidId s = u.solid_of(f);
    if (has(u.solid_points(s)) && !has(u.plane_points(u.plane_of(f)))) {
      if (first_flag[s] == std::numeric_limits<FlagId>::max()) trace.push_back(s);
      first_flag[s] = std::min(first_flag[s], f);
    }
  }
  std::sort(trace.begin(), trace.end());

  VerificationReport r = make_report(set);
  const std::size_t line_points = static_cast<std::size_t>(u.order() + 1);
  CheckResult pairwise{"point_trace_share_line", true, {}, 0.0, {}};
  for (std::size_t i = 0; i < trace.size() && pairwise.pass; ++i)
    for (std::size_t j = i + 1; j < trace.size() && pairwise.pass; ++j)
      if (popcount(u.solid_points(trace[i]), u.solid_points(trace[j])) < line_points) {
        pairwise.pass = false;
        pairwise.witness = {first_flag[trace[i]], first_flag[trace[j]]};
      }
  pairwise.ms = elapsed_ms(start);
  r.checks.push_back(pairwise);

  const BigInt bound = subspace_count(1, 4, u.order());
  r.checks.push_back({"point_trace_size_bound", BigInt(trace.size()) <= bound, {}, elapsed_ms(start),
                      {{"trace_size", trace.size()}, {"bound", to_json(bound)}}});
  r.expected = bound;
  return r;
}

std::uint64_t max_flags_per_solid(const FlagSet& set) {
  const FlagUniverse& u = set.universe();
  std::uint64_t best = 0;
  for (SolidId s = 0; s < u.solid_count(); ++s) {
    std::uint64_t n = 0;
    const FlagId first = static_cast<FlagId>(s * u.planes_per_solid());
    for (FlagId f = first; f < first + u.planes_per_solid(); ++f) n += set.contains(f);
    best = std::max(best, n);
  }
  return best;
}

VerificationReport check_disjoint_plane_bound(const FlagSet& set, FlagId f, std::uint64_t xi) {
  const auto start = Clock::now();
  const FlagUniverse& u = set.universe();
  VerificationReport r = make_report(set);

  CheckResult pre{"xi_hypothesis", true, {}, 0.0, {}};
  pre.pass = set.contains(f);
  if (!pre.pass) pre.witness = {f};
  for (SolidId s = 0; s < u.solid_count() && pre.pass; ++s) {
    std::uint64_t n = 0;
    const FlagId first = static_cast<FlagId>(s * u.planes_per_solid());
    for (FlagId g = first; g < first + u.planes_per_solid(); ++g) n += set.contains(g);
    if (n > xi) {
      pre.pass = false;
      pre.witness = {first};
    }
  }
  pre.detail = {{"xi", xi}, {"member", set.contains(f)}};
  pre.ms = elapsed_ms(start);
  r.checks.push_back(pre);

  const auto e = u.plane_points(u.plane_of(f));
  std::uint64_t count = 0;
  for (FlagId g : set.members())
    if (disjoint(u.plane_points(u.plane_of(g)), e) && !disjoint(u.solid_points(u.solid_of(g)), e)) ++count;
  const BigInt bound = disjoint_plane_bound(u.order(), xi);
  r.checks.push_back({"disjoint_plane_bound", BigInt(count) <= bound, {}, elapsed_ms(start),
                      {{"count", count}, {"bound", to_json(bound)}}});
  r.expected = bound;
  return r;
}

VerificationReport check_coloring(const std::vector<FlagSet>& classes, int threads) {
  const auto start = Clock::now();
  if (classes.empty()) throw std::invalid_argument("colouring has no classes");
  const FlagUniverse& u = classes.front().universe();
  VerificationReport r;
  r.subject = "colouring of PG(6," + std::to_string(u.order()) + ") flags, " + std::to_string(classes.size()) + " classes";
  r.q = u.order();
  r.cardinality = classes.size();

  CheckResult indep{"classes_independent", true, {}, 0.0, {}};
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    sizes.push_back(classes[i].size());
    if (!indep.pass) continue;
    const auto rep = check_independent(classes[i], threads);
    if (!rep.passed()) {
      indep.pass = false;
      indep.witness = rep.checks.front().witness;
      indep.detail["class"] = i;
    }
  }
  indep.detail["class_sizes"] = sizes;
  indep.ms = elapsed_ms(start);
  r.checks.push_back(indep);

  boost::dynamic_bitset<std::uint64_t> cover(u.size());
  for (const auto& c : classes) cover |= c.bits();
  CheckResult covered{"cover_complete", cover.all(), {}, 0.0, {{"covered", cover.count()}, {"flags", u.size()}}};
  if (!covered.pass) covered.witness = {static_cast<FlagId>((~cover).find_first())};
  covered.ms = elapsed_ms(start);
  r.checks.push_back(covered);
  return r;
}

VerificationReport chromatic_lower_report(int q, const FlagUniverse* universe) {
  const auto start = Clock::now();
  if (universe && universe->order() != q) throw std::invalid_argument("universe order does not match q");
  const BigInt flags = universe ? BigInt(universe->size()) : flag_count(q);
  const BigInt alpha = independence_number(q);
  const BigInt ratio = (flags + alpha - 1) / alpha;
  const BigInt poly = chromatic_lower_polynomial(q);

  VerificationReport r;
  r.subject = "chromatic lower bound for PG(6," + std::to_string(q) + ") flags";
  r.q = q;
  r.cardinality = flags.convert_to<std::uint64_t>();
  r.expected = poly;
  r.checks.push_back({"ceil_flags_over_alpha_at_least_polynomial", ratio >= poly, {}, elapsed_ms(start),
                      {{"flags", to_json(flags)},
                       {"alpha", to_json(alpha)},
                       {"ceil_ratio", to_json(ratio)},
                       {"polynomial", to_json(poly)},
                       {"equal", ratio == poly},
                       {"flag_count_source", universe ? "universe" : "formula"}}});
  return r;
}

}  // namespace flagkneser
