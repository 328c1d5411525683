#pragma once

#include <array>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace flagkneser {

/// Exact integer used for every closed-form count.
using BigInt = boost::multiprecision::cpp_int;

BigInt int_pow(int base, int exponent);

/// Evaluates sum coeffs[i] * q^(deg - i), highest degree first.
BigInt polynomial(int q, std::initializer_list<long long> coeffs_high_to_low);

/// Number of d-dimensional subspaces of an n-dimensional GF(q) vector space;
/// 0 unless 0 <= d <= n. Throws std::logic_error if the product is not exact.
BigInt gaussian(int n, int d, int q);

/// d-subspaces of PG(n,q) through a fixed k-subspace and skew to a fixed
/// l-subspace disjoint from it: q^((l+1)(d-k)) * gaussian(n-k-l-1, d-k).
BigInt s_count(int l, int k, int d, int n, int q);
inline BigInt s_count(int k, int d, int n, int q) { return s_count(-1, k, d, n, q); }
/// d-subspaces of PG(n,q).
inline BigInt subspace_count(int d, int n, int q) { return s_count(-1, -1, d, n, q); }
/// Points of PG(n,q).
inline BigInt point_count(int n, int q) { return subspace_count(0, n, q); }

/// Number of type-{2,3} flags of PG(6,q).
BigInt flag_count(int q);

/// gaussian(6,4)*gaussian(4,3) + gaussian(5,3)*q^3.
BigInt independence_number(int q);
/// The same value as a degree-11 polynomial in q.
BigInt independence_number_expanded(int q);
/// |Λ(H,E)| = s(3,5)*s(3) + |E|*q^3.
BigInt hyperplane_family_size(int q, const BigInt& family_size);

/// Planes through P meeting two solids, as a function of u = dim(<P,S2> ∩ S1).
BigInt planes_meeting_two_solids(int u, int q);
BigInt planes_meeting_two_solids_bound(int q);
/// The three parts: planes meeting V=<U1,P> in P only, in a line, or inside V.
std::array<BigInt, 3> planes_meeting_two_solids_parts(int u, int q);

BigInt solids_meeting_three_planes_bound(int q);
BigInt disjoint_plane_bound(int q, const BigInt& xi);
BigInt disjoint_plane_bound_expanded(int q, const BigInt& xi);
BigInt chromatic_lower_polynomial(int q);
BigInt chromatic_upper(int q);
BigInt chromatic_trivial_upper(int q);
BigInt complement_count(int d, int n, int q);

/// Named closed forms with their parameter signature and a short statement of
/// where the expression comes from.
class FormulaRegistry {
 public:
  struct Entry {
    std::string name;
    std::vector<std::string> params;  // extra integer parameters beyond q
    std::string anchor;
    std::function<BigInt(int q, std::span<const long long> params)> eval;
  };

  static const FormulaRegistry& instance();

  /// Throws std::out_of_range listing the known names.
  const Entry& find(const std::string& name) const;
  bool contains(const std::string& name) const { return entries_.count(name) != 0; }
  BigInt eval(const std::string& name, int q, std::span<const long long> params = {}) const;
  std::vector<std::string> names() const;

 private:
  FormulaRegistry();
  void add(Entry e);

  std::map<std::string, Entry> entries_;
};

}  // namespace flagkneser
