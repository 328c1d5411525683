#include "cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "flagkneser/constructions.hpp"
#include "flagkneser/counting.hpp"
#include "flagkneser/oracle.hpp"
#include "flagkneser/parallel.hpp"
#include "flagkneser/verify.hpp"
#include "flagset_io.hpp"

#ifndef FLAGKNESER_VERSION
#define FLAGKNESER_VERSION "0.0.0"
#endif

namespace flagkneser::cli {
namespace {

using nlohmann::json;

// Usage and input errors, reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  int threads = 0;
  bool no_timing = false;
  std::string out_dir;
  std::string csv;
};

// Collects outputs and the manifest of one run.
class Run {
 public:
  Run(std::string command, const Globals& g, std::ostream& out, std::ostream& err)
      : command_(std::move(command)), g_(g), out_(out), err_(err), start_(std::chrono::steady_clock::now()),
        wall_(std::chrono::system_clock::now()) {}

  json parameters = json::object();
  std::optional<int> q;
  std::optional<std::uint64_t> seed;

  std::ostream& err() { return err_; }
  bool timings() const { return !g_.no_timing; }

  // Writes to the output directory when one is set; returns the path or "".
  std::string write_file(const std::string& name, const std::function<void(std::ostream&)>& body) {
    if (g_.out_dir.empty()) return {};
    std::filesystem::create_directories(g_.out_dir);
    const std::string path = (std::filesystem::path(g_.out_dir) / name).string();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    body(f);
    outputs_.push_back(path);
    return path;
  }

  void write_explicit(const std::string& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    body(f);
    outputs_.push_back(path);
  }

  // Prints the result document and stores it under `name` in the output directory.
  void result(const std::string& name, const json& doc) {
    out_ << doc.dump(2) << '\n';
    write_file(name, [&](std::ostream& f) { f << doc.dump(2) << '\n'; });
    if (!g_.csv.empty()) write_explicit(g_.csv, [&](std::ostream& f) { write_csv(f, doc); });
  }

  void finish() {
    json m = {{"command", command_},
              {"q", q ? json(*q) : json(nullptr)},
              {"parameters", parameters},
              {"seed", seed ? json(*seed) : json(nullptr)},
              {"tool_version", FLAGKNESER_VERSION},
              {"started", timings() ? json(iso_time()) : json(nullptr)},
              {"elapsed_ms", timings() ? std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count() : 0.0},
              {"outputs", outputs_}};
    if (!g_.out_dir.empty()) {
      const std::string path = (std::filesystem::path(g_.out_dir) / "manifest.json").string();
      m["outputs"].push_back(path);
      std::ofstream f(path, std::ios::binary);
      f << m.dump(2) << '\n';
    } else {
      err_ << "manifest " << m.dump() << '\n';
    }
  }

 private:
  std::string iso_time() const {
    const std::time_t t = std::chrono::system_clock::to_time_t(wall_);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
  }

  static std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    std::string s = v.dump();
    if (s.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      return quoted + "\"";
    }
    return s;
  }

  // Tabular view: one row per check, oracle result or formula value.
  static void write_csv(std::ostream& f, const json& doc) {
    if (doc.contains("checks")) {
      f << "name,pass,witness,ms\n";
      for (const auto& c : doc["checks"]) f << cell(c["name"]) << ',' << cell(c["pass"]) << ',' << cell(c["witness"]) << ',' << cell(c["ms"]) << '\n';
    } else if (doc.contains("results")) {
      f << "name,count,relation,reference,pass\n";
      for (const auto& r : doc["results"])
        f << cell(r["name"]) << ',' << cell(r["count"]) << ',' << cell(r["relation"]) << ',' << cell(r["reference"]) << ','
          << cell(r["pass"]) << '\n';
    } else if (doc.contains("formulas")) {
      f << "formula,q,value\n";
      for (const auto& [key, entry] : doc["formulas"].items())
        for (const auto& [q, value] : entry["values"].items()) f << cell(json(key)) << ',' << q << ',' << cell(value) << '\n';
    } else {
      f << "key,value\n";
      for (const auto& [key, value] : doc.items())
        if (!value.is_structured()) f << key << ',' << cell(value) << '\n';
    }
  }

  std::string command_;
  const Globals& g_;
  std::ostream& out_;
  std::ostream& err_;
  std::chrono::steady_clock::time_point start_;
  std::chrono::system_clock::time_point wall_;
  std::vector<std::string> outputs_;
};

void record_options(const CLI::App* sub, json& params) {
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    std::string name = opt->get_name(false, true);
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    const auto& raw = opt->results();
    if (opt->get_type_size() == 0) params[name] = true;
    else if (raw.size() == 1) params[name] = raw.front();
    else params[name] = raw;
  }
}

std::unique_ptr<FlagUniverse> universe_for(int q) {
  if (q != 2 && q != 3)
    throw UsageError("a full flag universe exists for q in {2,3} only (q=" + std::to_string(q) + ")");
  return std::make_unique<FlagUniverse>(q);
}

ProjectiveSpace flag_space(int q) {
  if (!is_supported_order(q)) throw UsageError("unsupported field order q=" + std::to_string(q));
  return ProjectiveSpace(kFlagAmbientDim, q);
}

std::vector<long long> parse_params(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("malformed formula parameter '" + item + "'");
    }
  }
  return out;
}

// ---- count ---------------------------------------------------------------

struct CountOpts {
  std::vector<int> qs;
  std::vector<std::string> names;
};

int cmd_count(const CountOpts& o, Run& run) {
  const auto& reg = FormulaRegistry::instance();
  std::vector<std::string> names = o.names;
  if (names.empty())
    for (const auto& n : reg.names())
      if (reg.find(n).params.empty()) names.push_back(n);
  for (int q : o.qs)
    if (!is_supported_order(q)) throw UsageError("unsupported field order q=" + std::to_string(q));
  if (o.qs.size() == 1) run.q = o.qs.front();

  json formulas = json::object();
  for (const auto& key : names) {
    const auto colon = key.find(':');
    const std::string base = key.substr(0, colon);
    const std::vector<long long> params = colon == std::string::npos ? std::vector<long long>{} : parse_params(key.substr(colon + 1));
    const auto& entry = reg.find(base);
    json p = json::object();
    for (std::size_t i = 0; i < entry.params.size() && i < params.size(); ++i) p[entry.params[i]] = params[i];
    json values = json::object();
    for (int q : o.qs) values[std::to_string(q)] = to_json(reg.eval(base, q, params));
    formulas[key] = {{"formula", base}, {"params", p}, {"anchor", entry.anchor}, {"values", values}};
  }
  run.result("formulas.json", {{"q", o.qs}, {"formulas", formulas}});
  return 0;
}

// ---- construct -------------------------------------------------------------

struct ConstructOpts {
  std::string kind;
  int q = 2;
  bool canonical = false;
  std::string hyperplane, point, line, four_space;
  std::string ekr, ekr_anchor;
  std::string out;
  bool count_only = false;
};

struct BuiltSpec {
  LambdaSpec spec;
  FlagFileHeader header;
  std::string formula;
  BigInt expected;
};

BuiltSpec make_spec(const ConstructOpts& o, const ProjectiveSpace& space) {
  BuiltSpec b;
  b.spec.kind = parse_kind(o.kind);
  b.header.kind = std::string(kind_name(b.spec.kind));
  const CanonicalFrame frame = canonical_frame(space);
  auto pick = [&](const std::string& text, const Subspace& fallback, const char* role) {
    Subspace s;
    if (!text.empty()) s = space.parse(text);
    else if (o.canonical) s = fallback;
    else throw UsageError(std::string("missing anchor ") + role + " (give --" + role + " or --canonical)");
    b.header.anchors.emplace_back(role, s.to_text());
    return s;
  };
  const auto k = b.spec.kind;
  const bool wants_h = k == LambdaKind::HyperplaneFamily || k == LambdaKind::PointHyperplane || k == LambdaKind::HyperplanePoint ||
                       k == LambdaKind::HyperplaneFourSpace || k == LambdaKind::Hyperplane;
  const bool wants_p = k == LambdaKind::PointFamily || k == LambdaKind::PointHyperplane || k == LambdaKind::HyperplanePoint ||
                       k == LambdaKind::PointLine || k == LambdaKind::Point;
  if (wants_h) b.spec.hyperplane = pick(o.hyperplane, frame.hyperplane, "hyperplane");
  if (wants_p) b.spec.point = pick(o.point, frame.point, "point");
  if (k == LambdaKind::PointLine) b.spec.line = pick(o.line, frame.line, "line");
  if (k == LambdaKind::HyperplaneFourSpace) b.spec.four_space = pick(o.four_space, frame.four_space, "four-space");

  if (k == LambdaKind::HyperplaneFamily || k == LambdaKind::PointFamily) {
    if (o.ekr.empty()) throw UsageError(o.kind + " needs --ekr");
    const bool planes = k == LambdaKind::HyperplaneFamily;
    Subspace anchor;
    std::vector<Subspace> family;
    auto anchor_or = [&](const Subspace& fallback) {
      if (!o.ekr_anchor.empty()) return space.parse(o.ekr_anchor);
      if (o.canonical) return fallback;
      throw UsageError("missing --ekr-anchor (or --canonical)");
    };
    if (planes && o.ekr == "point_pencil") {
      anchor = anchor_or(frame.point);
      family = ekr_plane_family(space, EkrPlaneKind::PointPencil, anchor, *b.spec.hyperplane);
    } else if (planes && o.ekr == "four_space") {
      anchor = anchor_or(frame.four_space);
      family = ekr_plane_family(space, EkrPlaneKind::FourSpace, anchor, *b.spec.hyperplane);
    } else if (!planes && o.ekr == "hyperplane_pencil") {
      anchor = anchor_or(frame.hyperplane);
      family = ekr_solid_family(space, EkrSolidKind::HyperplanePencil, anchor, *b.spec.point);
    } else if (!planes && o.ekr == "line_star") {
      anchor = anchor_or(frame.line);
      family = ekr_solid_family(space, EkrSolidKind::LineStar, anchor, *b.spec.point);
    } else {
      throw UsageError("unknown --ekr '" + o.ekr + "' for " + o.kind +
                       (planes ? " (point_pencil, four_space)" : " (hyperplane_pencil, line_star)"));
    }
    b.header.anchors.emplace_back("ekr-" + o.ekr, anchor.to_text());
    for (const auto& f : family) b.header.family.push_back(f.to_text());
    (planes ? b.spec.planes : b.spec.solids) = std::move(family);
  }
  validate(space, b.spec);

  const auto& reg = FormulaRegistry::instance();
  switch (k) {
    case LambdaKind::HyperplaneFamily:
    case LambdaKind::PointFamily: {
      const long long n = static_cast<long long>(b.header.family.size());
      b.formula = "lambda_h_family";
      b.expected = reg.eval(b.formula, space.order(), std::vector<long long>{n});
      break;
    }
    case LambdaKind::Point:
    case LambdaKind::Hyperplane:
      b.formula = "lambda_h_empty";
      b.expected = reg.eval(b.formula, space.order());
      break;
    default:
      b.formula = "independence_number";
      b.expected = reg.eval(b.formula, space.order());
  }
  return b;
}

int cmd_construct(const ConstructOpts& o, Run& run, const Globals& g) {
  run.q = o.q;
  const ProjectiveSpace space = flag_space(o.q);
  const BuiltSpec b = make_spec(o, space);
  std::uint64_t cardinality = 0;
  std::unique_ptr<FlagUniverse> universe;
  std::optional<FlagSet> set;
  if (o.count_only) {
    cardinality = enumerate_lambda(space, b.spec);
  } else {
    universe = universe_for(o.q);
    set.emplace(build_lambda(b.spec, *universe, g.threads));
    cardinality = set->size();
  }
  json anchors = json::object();
  for (const auto& [role, text] : b.header.anchors) anchors[role] = text;
  const bool match = BigInt(cardinality) == b.expected;
  json doc = {{"kind", b.header.kind},
              {"q", o.q},
              {"anchors", anchors},
              {"family_size", b.header.family.size()},
              {"cardinality", cardinality},
              {"formula", b.formula},
              {"expected", to_json(b.expected)},
              {"match", match},
              {"method", o.count_only ? "enumeration" : "universe"}};
  if (set) {
    auto body = [&](std::ostream& f) { write_flag_file(f, b.header, *set); };
    if (!o.out.empty()) run.write_explicit(o.out, body);
    const std::string in_dir = run.write_file("set.flags", body);
    doc["file"] = !o.out.empty() ? o.out : in_dir;
  }
  run.result("construct.json", doc);
  if (!match) run.err() << "FAIL cardinality " << cardinality << " != " << b.expected << '\n';
  return match ? 0 : 1;
}

// ---- verify ----------------------------------------------------------------

struct VerifyOpts {
  std::string file;
  bool independent = false, maximal = false, saturation = false, trace = false, point_trace = false;
  std::optional<FlagId> disjoint_plane_flag;
  std::optional<std::uint64_t> xi;
  std::string hyperplane, point;
};

std::optional<BigInt> expected_size(const FlagFileHeader& h, int q) {
  if (h.kind.empty()) return std::nullopt;
  const auto k = parse_kind(h.kind);
  if (k == LambdaKind::HyperplaneFamily || k == LambdaKind::PointFamily) return hyperplane_family_size(q, h.family.size());
  if (k == LambdaKind::Point || k == LambdaKind::Hyperplane) return hyperplane_family_size(q, 0);
  return independence_number(q);
}

int cmd_verify(const VerifyOpts& o, Run& run, const Globals& g) {
  const FlagFile file = read_flag_file(o.file);
  run.q = file.header.q;
  const auto universe = universe_for(file.header.q);
  const FlagSet set = to_flag_set(file, *universe);
  const ProjectiveSpace& space = universe->space();
  const CanonicalFrame frame = canonical_frame(space);

  auto role = [&](const std::string& text, const char* name, const Subspace& fallback) {
    if (!text.empty()) return space.parse(text);
    if (auto a = anchor(file.header, name, space)) return *a;
    return fallback;
  };

  const bool any = o.independent || o.maximal || o.saturation || o.trace || o.point_trace || o.disjoint_plane_flag;
  VerificationReport report;
  report.q = universe->order();
  report.cardinality = set.size();
  report.subject = o.file + " (" + (file.header.kind.empty() ? std::string("unlabelled") : file.header.kind) + ", q=" +
                   std::to_string(report.q) + ")";
  report.expected = expected_size(file.header, report.q);
  if (report.expected)
    report.checks.push_back({"cardinality", BigInt(set.size()) == *report.expected, {}, 0.0,
                             {{"cardinality", set.size()}, {"expected", to_json(*report.expected)}}});
  if (!any || o.independent) report.merge(check_independent(set, g.threads));
  if (!any || o.maximal) report.merge(check_maximal(set, g.threads));
  if (o.saturation) {
    std::optional<Subspace> h;
    if (!o.hyperplane.empty()) h = space.parse(o.hyperplane);
    else if (!file.header.kind.empty() && file.header.kind[0] == 'H') h = anchor(file.header, "hyperplane", space);
    report.merge(saturation_report(set, saturation_profile(set, g.threads), h));
  }
  if (o.trace) report.merge(check_hyperplane_trace_ekr(set, role(o.hyperplane, "hyperplane", frame.hyperplane)));
  if (o.point_trace) report.merge(check_point_trace_ekr(set, role(o.point, "point", frame.point)));
  if (o.disjoint_plane_flag) {
    if (*o.disjoint_plane_flag >= universe->size()) throw UsageError("flag ordinal " + std::to_string(*o.disjoint_plane_flag) + " out of range");
    report.merge(check_disjoint_plane_bound(set, *o.disjoint_plane_flag, o.xi ? *o.xi : max_flags_per_solid(set)));
  }

  run.result("report.json", to_json(report, run.timings()));
  for (const auto& c : report.checks) {
    if (c.pass) continue;
    run.err() << "FAIL " << c.name;
    if (!c.witness.empty()) {
      run.err() << " witness";
      for (FlagId f : c.witness) run.err() << ' ' << f;
    }
    run.err() << '\n';
  }
  return report.passed() ? 0 : 1;
}

// ---- color -----------------------------------------------------------------

struct ColorOpts {
  std::string scheme = "mi";
  int q = 2;
  std::optional<bool> cover;
};

int cmd_color(const ColorOpts& o, Run& run, const Globals& g) {
  run.q = o.q;
  const ProjectiveSpace space = flag_space(o.q);
  const bool cover = o.cover.value_or(o.q == 2);
  const CanonicalFrame frame = canonical_frame(space);
  const auto& reg = FormulaRegistry::instance();

  json classes = json::array();
  std::optional<ColoringScheme> scheme;
  std::string formula;
  if (o.scheme == "mi") {
    scheme = canonical_coloring_scheme(space);
    for (const auto& c : scheme->classes) classes.push_back({{"point", c.x.to_text()}, {"line", c.line.to_text()}});
    formula = "chromatic_upper";
  } else if (o.scheme == "trivial") {
    SubspaceConstraints in_v;
    in_v.within = frame.four_space;
    space.for_each_subspace(0, in_v, [&](const Subspace& p) { classes.push_back({{"point", p.to_text()}}); });
    formula = "chromatic_trivial_upper";
  } else {
    throw UsageError("unknown colouring scheme '" + o.scheme + "' (mi, trivial)");
  }
  const BigInt expected = reg.eval(formula, o.q);
  const bool count_ok = BigInt(classes.size()) == expected;
  bool ok = count_ok;

  json doc = {{"scheme", o.scheme}, {"q", o.q}, {"class_count", classes.size()}, {"formula", formula},
              {"expected", to_json(expected)}, {"match", count_ok}, {"classes", classes}};
  std::unique_ptr<FlagUniverse> universe;
  if (cover) {
    universe = universe_for(o.q);
    const auto sets = o.scheme == "mi" ? build_coloring(*scheme, *universe, g.threads)
                                       : trivial_coloring(frame.four_space, *universe, g.threads);
    const auto report = check_coloring(sets, g.threads);
    ok = ok && report.passed();
    doc["cover_report"] = to_json(report, run.timings());
  } else {
    doc["cover_report"] = nullptr;
  }
  const auto lower = chromatic_lower_report(o.q, universe.get());
  ok = ok && lower.passed();
  doc["lower_bound"] = to_json(lower, run.timings());
  run.result("coloring.json", doc);
  return ok ? 0 : 1;
}

// ---- oracle ----------------------------------------------------------------

struct OracleOpts {
  std::string name;
  int q = 2;
  std::uint64_t seed = 1;
  int sweeps = 0;
  std::optional<int> u, n, l, k, d;
  std::string grid;
  std::string p1, p2, e1, e2, e3;
  std::string point, s1, s2;
  std::string l_sub, k_sub;
};

int cmd_oracle(const OracleOpts& o, Run& run, const Globals& g) {
  run.q = o.q;
  run.seed = o.seed;
  if (!is_supported_order(o.q)) throw UsageError("unsupported field order q=" + std::to_string(o.q));
  if (o.sweeps < 0) throw UsageError("--sweeps must be non-negative");
  std::vector<OracleResult> results;
  if (o.name == "hilfslemma") {
    const ProjectiveSpace space(6, o.q);
    if (!o.point.empty() || !o.s1.empty() || !o.s2.empty()) {
      if (o.point.empty() || o.s1.empty() || o.s2.empty()) throw UsageError("give all of --point, --s1, --s2");
      results.push_back(count_planes_meeting_two_solids(space, {space.parse(o.point), space.parse(o.s1), space.parse(o.s2)}));
    } else if (o.u) {
      results.push_back(count_planes_meeting_two_solids(space, canonical_two_solid_config(space, *o.u)));
      results.back().parameters["config"] = "canonical";
      auto more = two_solid_sweep(o.q, o.sweeps, o.seed, g.threads);
      results.insert(results.end(), more.begin() + 2, more.end());
    } else {
      results = two_solid_sweep(o.q, o.sweeps, o.seed, g.threads);
    }
  } else if (o.name == "a0b3") {
    if (!o.p1.empty() || !o.p2.empty() || !o.e1.empty() || !o.e2.empty() || !o.e3.empty()) {
      if (o.p1.empty() || o.p2.empty() || o.e1.empty() || o.e2.empty() || o.e3.empty())
        throw UsageError("give all of --p1, --p2, --e1, --e2, --e3");
      const ProjectiveSpace space(6, o.q);
      results.push_back(count_solids_meeting_three_planes(
          space, {space.parse(o.p1), space.parse(o.p2), space.parse(o.e1), space.parse(o.e2), space.parse(o.e3)}));
    } else {
      results = three_plane_sweep(o.q, o.sweeps, o.seed, g.threads);
    }
  } else if (o.name == "skew-count") {
    if (!o.grid.empty()) {
      if (o.grid == "small") results = skew_count_grid(o.q, 5, 10, o.seed, g.threads);
      else if (o.grid == "tiny") results = skew_count_grid(o.q, 3, 2, o.seed, g.threads);
      else throw UsageError("unknown grid '" + o.grid + "' (small, tiny)");
    } else {
      if (!o.n || !o.d) throw UsageError("skew-count needs --grid or --n and --d");
      const ProjectiveSpace space(*o.n, o.q);
      const int l = o.l.value_or(-1);
      const int k = o.k.value_or(-1);
      auto lead = [&](int first, int dim) {
        std::vector<Vec> gens;
        for (int i = 0; i <= dim; ++i) gens.push_back(space.unit(first + i));
        return space.span_of(gens);
      };
      if (l < -1 || k < -1 || l + k > *o.n - 1) throw UsageError("need -1 <= l,k and l+k <= n-1 for skew subspaces");
      const Subspace ls = o.l_sub.empty() ? lead(0, l) : space.parse(o.l_sub);
      const Subspace ks = o.k_sub.empty() ? lead(*o.n - k, k) : space.parse(o.k_sub);
      results.push_back(count_skew_constrained(space, ls, ks, *o.d));
    }
  } else if (o.name == "b78") {
    results = max_line_meeting_family_check(o.n.value_or(5), o.q, o.sweeps, o.seed);
  } else if (o.name == "complement") {
    if (o.n && o.d) {
      results.push_back(complement_count_check(*o.d, *o.n, o.q));
    } else {
      for (int n = 1; n <= 6; ++n)
        for (int d = 0; d <= n; ++d) results.push_back(complement_count_check(d, n, o.q));
    }
  } else {
    throw UsageError("unknown oracle '" + o.name + "' (hilfslemma, a0b3, skew-count, b78, complement)");
  }

  json arr = json::array();
  std::size_t passed = 0;
  BigInt max_count = 0;
  for (const auto& r : results) {
    arr.push_back(to_json(r));
    passed += r.pass;
    max_count = std::max(max_count, r.count);
  }
  json doc = {{"oracle", o.name},
              {"q", o.q},
              {"seed", o.seed},
              {"sweeps", o.sweeps},
              {"results", arr},
              {"summary", {{"total", results.size()}, {"passed", passed}, {"failed", results.size() - passed}, {"max_count", to_json(max_count)}}}};
  run.result("oracle.json", doc);
  for (const auto& r : results)
    if (!r.pass) run.err() << "FAIL " << r.name << " count " << r.count << ' ' << relation_name(r.relation) << ' ' << r.reference << '\n';
  return passed == results.size() ? 0 : 1;
}

// ---- export ----------------------------------------------------------------

struct ExportOpts {
  std::string format = "dimacs";
  int q = 2;
  bool confirm_size = false;
  bool header_only = false;
  std::string induced;
  std::string out;
};

int cmd_export(const ExportOpts& o, Run& run) {
  run.q = o.q;
  if (o.format != "dimacs") throw UsageError("unknown export format '" + o.format + "' (dimacs)");
  if (!is_supported_order(o.q)) throw UsageError("unsupported field order q=" + std::to_string(o.q));

  if (o.induced.empty() && (o.header_only || !o.confirm_size)) {
    // Every flag has degree q^15.
    const BigInt vertices = flag_count(o.q);
    const BigInt degree_value = int_pow(o.q, 15);
    const BigInt edges = vertices * degree_value / 2;
    const BigInt bytes = edges * 16;
    json doc = {{"format", "dimacs"}, {"q", o.q}, {"vertices", to_json(vertices)}, {"edges", to_json(edges)},
                {"header", "p edge " + vertices.str() + " " + edges.str()}, {"estimated_bytes", to_json(bytes)}};
    if (o.header_only) {
      std::unique_ptr<FlagUniverse> u;
      if (o.q == 2 || o.q == 3) {
        u = universe_for(o.q);
        const BigInt measured = BigInt(u->size()) * degree(*u, 0) / 2;
        doc["measured_degree"] = degree(*u, 0);
        doc["match"] = measured == edges && BigInt(u->size()) == vertices;
      }
      run.result("export.json", doc);
      return doc.value("match", true) ? 0 : 1;
    }
    throw UsageError("full DIMACS export of PG(6," + std::to_string(o.q) + ") flags writes " + vertices.str() + " vertices and " +
                     edges.str() + " edges (about " + BigInt(bytes / 1000000000).str() + " GB); pass --confirm-size to proceed");
  }

  const auto universe = universe_for(o.q);
  std::vector<FlagId> vertices;
  if (!o.induced.empty()) {
    const FlagFile file = read_flag_file(o.induced);
    vertices = to_flag_set(file, *universe).members();
  } else {
    vertices.resize(universe->size());
    for (FlagId f = 0; f < vertices.size(); ++f) vertices[f] = f;
  }

  std::uint64_t edges = 0;
  if (!o.induced.empty()) {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (std::size_t j = i + 1; j < vertices.size(); ++j) edges += universe->adjacent(vertices[i], vertices[j]);
  } else {
    edges = static_cast<std::uint64_t>(universe->size()) * degree(*universe, 0) / 2;
  }

  auto body = [&](std::ostream& f) {
    f << "c plane-solid flag Kneser graph of PG(6," << o.q << ")";
    if (!o.induced.empty()) f << ", induced on " << o.induced;
    f << "\nc vertex i is flag ordinal " << (o.induced.empty() ? "i-1" : "listed below") << '\n';
    if (!o.induced.empty())
      for (std::size_t i = 0; i < vertices.size(); ++i) f << "c v " << i + 1 << ' ' << vertices[i] << '\n';
    f << "p edge " << vertices.size() << ' ' << edges << '\n';
    std::string buf;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      for (std::size_t j = i + 1; j < vertices.size(); ++j) {
        if (!universe->adjacent(vertices[i], vertices[j])) continue;
        buf += "e " + std::to_string(i + 1) + ' ' + std::to_string(j + 1) + '\n';
        if (buf.size() > (1u << 20)) {
          f << buf;
          buf.clear();
        }
      }
    }
    f << buf;
  };
  json doc = {{"format", "dimacs"}, {"q", o.q}, {"vertices", vertices.size()}, {"edges", edges},
              {"header", "p edge " + std::to_string(vertices.size()) + " " + std::to_string(edges)}};
  if (!o.out.empty()) {
    run.write_explicit(o.out, body);
    doc["file"] = o.out;
  } else if (!run.write_file("graph.dimacs", body).empty()) {
    doc["file"] = "graph.dimacs";
  } else {
    throw UsageError("export needs --out or --out-dir");
  }
  run.result("export.json", doc);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Plane-solid flags of PG(6,q): constructions, verification, counts and oracles", "flagkneser"};
  app.set_version_flag("--version", FLAGKNESER_VERSION);
  app.require_subcommand(1);
  Globals g;
  app.add_option("--threads", g.threads, "worker threads (0: FLAGKNESER_THREADS or hardware)")->check(CLI::NonNegativeNumber);
  app.add_flag("--no-timing", g.no_timing, "zero all timing fields so reports are byte-stable");
  app.add_option("--out-dir", g.out_dir, "write result files and manifest.json here");
  app.add_option("--csv", g.csv, "also write a CSV view of the result");

  CountOpts count;
  auto* c = app.add_subcommand("count", "evaluate registered formulas");
  c->fallthrough();
  c->add_option("--q", count.qs, "field orders")->required()->delimiter(',')->allow_extra_args(false);
  c->add_option("formulas", count.names, "formula names, parameters after a colon (gaussian:7,4)");

  ConstructOpts con;
  auto* k = app.add_subcommand("construct", "build a Λ family");
  k->fallthrough();
  k->add_option("--kind", con.kind, "H_E, P_S, P_H, H_P, P_l, H_U, P_empty, H_empty")->required();
  k->add_option("--q", con.q, "field order");
  k->add_flag("--canonical", con.canonical, "use the standard frame for missing anchors");
  k->add_option("--hyperplane", con.hyperplane);
  k->add_option("--point", con.point);
  k->add_option("--line", con.line);
  k->add_option("--four-space", con.four_space);
  k->add_option("--ekr", con.ekr, "family: point_pencil, four_space (H_E); hyperplane_pencil, line_star (P_S)");
  k->add_option("--ekr-anchor", con.ekr_anchor);
  k->add_option("--out", con.out, "flag set file");
  k->add_flag("--count-only", con.count_only, "count by enumeration without a flag universe");

  VerifyOpts ver;
  auto* v = app.add_subcommand("verify", "check a flag set file");
  v->fallthrough();
  v->add_option("file", ver.file)->required();
  v->add_flag("--independent", ver.independent);
  v->add_flag("--maximal", ver.maximal);
  v->add_flag("--saturation", ver.saturation);
  v->add_flag("--trace", ver.trace, "hyperplane trace");
  v->add_flag("--point-trace", ver.point_trace);
  v->add_option("--disjoint-plane-flag", ver.disjoint_plane_flag, "flag ordinal for the disjoint-plane count");
  v->add_option("--xi", ver.xi, "flags per solid bound (default: observed maximum)");
  v->add_option("--hyperplane", ver.hyperplane);
  v->add_option("--point", ver.point);

  ColorOpts col;
  auto* cl = app.add_subcommand("color", "build and check a colouring");
  cl->fallthrough();
  cl->add_option("--scheme", col.scheme, "mi or trivial");
  cl->add_option("--q", col.q);
  cl->add_flag("--cover,!--no-cover", col.cover, "verify classes and cover on the flag universe (default at q=2)");

  OracleOpts ora;
  auto* o = app.add_subcommand("oracle", "run a brute-force oracle");
  o->fallthrough();
  o->add_option("name", ora.name, "hilfslemma, a0b3, skew-count, b78, complement")->required();
  o->add_option("--q", ora.q);
  o->add_option("--seed", ora.seed);
  o->add_option("--sweeps", ora.sweeps, "random configurations");
  o->add_option("--u", ora.u);
  o->add_option("--grid", ora.grid, "small (n<=5, 10 random) or tiny (n<=3, 2 random)");
  o->add_option("--n", ora.n);
  o->add_option("--l", ora.l);
  o->add_option("--k", ora.k);
  o->add_option("--d", ora.d);
  o->add_option("--l-sub", ora.l_sub);
  o->add_option("--k-sub", ora.k_sub);
  o->add_option("--p1", ora.p1);
  o->add_option("--p2", ora.p2);
  o->add_option("--e1", ora.e1);
  o->add_option("--e2", ora.e2);
  o->add_option("--e3", ora.e3);
  o->add_option("--point", ora.point);
  o->add_option("--s1", ora.s1);
  o->add_option("--s2", ora.s2);

  ExportOpts exp;
  auto* e = app.add_subcommand("export", "write the graph in DIMACS format");
  e->fallthrough();
  e->add_option("--format", exp.format);
  e->add_option("--q", exp.q);
  e->add_flag("--confirm-size", exp.confirm_size, "allow the full graph");
  e->add_flag("--header-only", exp.header_only, "report vertex and edge counts only");
  e->add_option("--induced", exp.induced, "flag set file; export the induced subgraph");
  e->add_option("--out", exp.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    return app.exit(ex, out, err) == 0 ? 0 : 2;
  }

  if (g.threads > 0) set_default_threads(g.threads);
  CLI::App* sub = app.get_subcommands().front();
  Run run(sub->get_name(), g, out, err);
  record_options(sub, run.parameters);
  int code = 2;
  try {
    if (sub == c) code = cmd_count(count, run);
    else if (sub == k) code = cmd_construct(con, run, g);
    else if (sub == v) code = cmd_verify(ver, run, g);
    else if (sub == cl) code = cmd_color(col, run, g);
    else if (sub == o) code = cmd_oracle(ora, run, g);
    else if (sub == e) code = cmd_export(exp, run);
    run.finish();
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 2;
  }
  return code;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"flagkneser"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace flagkneser::cli
