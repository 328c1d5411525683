#include "flagkneser/counting.hpp"

#include <stdexcept>

namespace flagkneser {

BigInt int_pow(int base, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent " + std::to_string(exponent));
  BigInt r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

BigInt polynomial(int q, std::initializer_list<long long> coeffs_high_to_low) {
  BigInt acc = 0;
  for (long long c : coeffs_high_to_low) acc = acc * q + c;
  return acc;
}

BigInt gaussian(int n, int d, int q) {
  if (d < 0 || d > n) return 0;
  BigInt num = 1;
  BigInt den = 1;
  for (int i = 1; i <= d; ++i) {
    num *= int_pow(q, n + 1 - i) - 1;
    den *= int_pow(q, i) - 1;
  }
  if (num % den != 0) throw std::logic_error("gaussian(" + std::to_string(n) + "," + std::to_string(d) + ") is not integral");
  return num / den;
}

BigInt s_count(int l, int k, int d, int n, int q) {
  const BigInt g = gaussian(n - k - l - 1, d - k, q);
  if (g == 0) return 0;
  return int_pow(q, (l + 1) * (d - k)) * g;
}

BigInt flag_count(int q) { return gaussian(7, 4, q) * gaussian(4, 3, q); }

BigInt independence_number(int q) { return gaussian(6, 4, q) * gaussian(4, 3, q) + gaussian(5, 3, q) * int_pow(q, 3); }

BigInt independence_number_expanded(int q) { return polynomial(q, {1, 2, 5, 7, 10, 11, 11, 9, 7, 4, 2, 1}); }

BigInt hyperplane_family_size(int q, const BigInt& family_size) {
  return subspace_count(3, 5, q) * point_count(3, q) + family_size * int_pow(q, 3);
}

std::array<BigInt, 3> planes_meeting_two_solids_parts(int u, int q) {
  if (u != 1 && u != 2) throw std::invalid_argument("u must be 1 or 2, got " + std::to_string(u));
  const BigInt off = point_count(3, q) - point_count(u, q);
  return {off * off, s_count(0, 1, u + 1, q) * (s_count(1, 2, 6, q) - s_count(1, 2, u + 1, q)), s_count(0, 2, u + 1, q)};
}

BigInt planes_meeting_two_solids(int u, int q) {
  auto parts = planes_meeting_two_solids_parts(u, q);
  return parts[0] + parts[1] + parts[2];
}

BigInt planes_meeting_two_solids_bound(int q) { return polynomial(q, {2, 2, 3, 2, 2, 1, 1}); }

BigInt solids_meeting_three_planes_bound(int q) { return polynomial(q, {3, 6, 7, 4, 2, 1, 1}); }

BigInt disjoint_plane_bound(int q, const BigInt& xi) { return point_count(2, q) * subspace_count(1, 4, q) * xi; }

BigInt disjoint_plane_bound_expanded(int q, const BigInt& xi) { return polynomial(q, {1, 2, 4, 5, 6, 5, 4, 2, 1}) * xi; }

BigInt chromatic_lower_polynomial(int q) { return polynomial(q, {1, 0, -1, 2, 1}); }

BigInt chromatic_upper(int q) { return polynomial(q, {1, 1, 1, 0, 1}); }

BigInt chromatic_trivial_upper(int q) { return point_count(4, q); }

BigInt complement_count(int d, int n, int q) {
  if (d < 0 || d > n) return 0;
  return int_pow(q, d * (n - d));
}

namespace {

long long param(std::span<const long long> p, std::size_t i) { return p[i]; }

}  // namespace

FormulaRegistry::FormulaRegistry() {
  add({"gaussian", {"n", "d"}, "Gaussian coefficient: d-dimensional subspaces of an n-dimensional space",
       [](int q, auto p) { return gaussian(int(param(p, 0)), int(param(p, 1)), q); }});
  add({"s_count", {"l", "k", "d", "n"}, "d-subspaces of PG(n,q) through a k-subspace and skew to an l-subspace",
       [](int q, auto p) { return s_count(int(param(p, 0)), int(param(p, 1)), int(param(p, 2)), int(param(p, 3)), q); }});
  add({"flag_count", {}, "vertices of the plane-solid flag Kneser graph: [7 4][4 3]", [](int q, auto) { return flag_count(q); }});
  add({"independence_number", {}, "independence number of the plane-solid flag Kneser graph: [6 4][4 3]+[5 3]q^3",
       [](int q, auto) { return independence_number(q); }});
  add({"independence_number_expanded", {},
       "|Λ(H,E)| at |E|=s(1,4): q^11+2q^10+5q^9+7q^8+10q^7+11q^6+11q^5+9q^4+7q^3+4q^2+2q+1",
       [](int q, auto) { return independence_number_expanded(q); }});
  add({"lambda_h_empty", {}, "|Λ(H,∅)| = s(3,5)*s(3)", [](int q, auto) { return hyperplane_family_size(q, 0); }});
  add({"lambda_h_family", {"family_size"}, "|Λ(H,E)| = s(3,5)*s(3)+|E|*q^3",
       [](int q, auto p) { return hyperplane_family_size(q, BigInt(param(p, 0))); }});
  add({"ekr_planes_bound", {}, "mutually intersecting planes of PG(5,q): at most s(1,4)",
       [](int q, auto) { return subspace_count(1, 4, q); }});
  add({"line_meeting_planes_bound", {"n"}, "planes of PG(n,q) pairwise meeting in a line: at most s(n-2)",
       [](int q, auto p) { return point_count(int(param(p, 0)) - 2, q); }});
  add({"type3_independence", {}, "independence number of the Kneser graph of solids of PG(6,q): s(3,5)",
       [](int q, auto) { return subspace_count(3, 5, q); }});
  add({"type3_independence_expanded", {}, "s(3,5) = q^8+q^7+2q^6+2q^5+3q^4+2q^3+2q^2+q+1",
       [](int q, auto) { return polynomial(q, {1, 1, 2, 2, 3, 2, 2, 1, 1}); }});
  add({"type3_second_bound", {}, "other maximal solid families: at most q^6+2q^5+3q^4+3q^3+2q^2+q+1 (recorded only)",
       [](int q, auto) { return polynomial(q, {1, 2, 3, 3, 2, 1, 1}); }});
  add({"disjoint_plane_bound", {"xi"}, "flags (E',S') with E'∩E=∅, S'∩E≠∅: at most s(2)*s(1,4)*xi",
       [](int q, auto p) { return disjoint_plane_bound(q, BigInt(param(p, 0))); }});
  add({"disjoint_plane_bound_expanded", {"xi"}, "(q^8+2q^7+4q^6+5q^5+6q^4+5q^3+4q^2+2q+1)*xi",
       [](int q, auto p) { return disjoint_plane_bound_expanded(q, BigInt(param(p, 0))); }});
  add({"a0b3_bound", {}, "solids on P2 meeting three planes through P1: at most 3q^6+6q^5+7q^4+4q^3+2q^2+q+1",
       [](int q, auto) { return solids_meeting_three_planes_bound(q); }});
  add({"hilfslemma_bound", {}, "planes on P meeting two solids: at most 2q^6+2q^5+3q^4+2q^3+2q^2+q+1",
       [](int q, auto) { return planes_meeting_two_solids_bound(q); }});
  add({"hilfslemma_exact", {"u"}, "planes on P meeting two solids: (s(3)-s(u))^2+s(0,1,u+1)(s(1,2,6)-s(1,2,u+1))+s(0,2,u+1)",
       [](int q, auto p) { return planes_meeting_two_solids(int(param(p, 0)), q); }});
  add({"chromatic_lower", {}, "chromatic number lower bound q^4-q^2+2q+1 from n/alpha",
       [](int q, auto) { return chromatic_lower_polynomial(q); }});
  add({"chromatic_upper", {}, "chromatic number upper bound q^4+q^3+q^2+1 from the M_i colouring",
       [](int q, auto) { return chromatic_upper(q); }});
  add({"chromatic_trivial_upper", {}, "chromatic number upper bound s(4) from Λ(P,∅), P in a 4-space",
       [](int q, auto) { return chromatic_trivial_upper(q); }});
  add({"complement_count", {"d", "n"}, "complements of a d-dimensional subspace of an n-dimensional space: q^(d(n-d))",
       [](int q, auto p) { return complement_count(int(param(p, 0)), int(param(p, 1)), q); }});
}

void FormulaRegistry::add(Entry e) {
  const std::string name = e.name;
  if (!entries_.emplace(name, std::move(e)).second) throw std::logic_error("formula registered twice: " + name);
}

const FormulaRegistry& FormulaRegistry::instance() {
  static const FormulaRegistry registry;
  return registry;
}

const FormulaRegistry::Entry& FormulaRegistry::find(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    std::string known;
    for (const auto& [n, _] : entries_) known += (known.empty() ? "" : ", ") + n;
    throw std::out_of_range("unknown formula '" + name + "'; available: " + known);
  }
  return it->second;
}

BigInt FormulaRegistry::eval(const std::string& name, int q, std::span<const long long> params) const {
  const Entry& e = find(name);
  if (params.size() != e.params.size())
    throw std::invalid_argument("formula '" + name + "' takes " + std::to_string(e.params.size()) + " parameter(s), got " +
                                std::to_string(params.size()));
  return e.eval(q, params);
}

std::vector<std::string> FormulaRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [n, _] : entries_) out.push_back(n);
  return out;
}

}  // namespace flagkneser
