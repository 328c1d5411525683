#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace flagkneser {

/// Element code of GF(q). For q = p^e the code is the base-p digit vector of
/// the polynomial representative, constant term in the least significant digit.
using Element = std::uint8_t;

/// Dense lookup tables for GF(q), q <= 16.
///
/// Extension fields are built modulo a pinned Conway polynomial, so the same q
/// always produces the same codes. Tables are immutable after construction.
class FieldTable {
 public:
  int order() const noexcept { return q_; }
  int characteristic() const noexcept { return p_; }
  int degree() const noexcept { return e_; }

  Element add(Element a, Element b) const noexcept { return add_[a * q_ + b]; }
  Element mul(Element a, Element b) const noexcept { return mul_[a * q_ + b]; }
  Element neg(Element a) const noexcept { return neg_[a]; }
  Element sub(Element a, Element b) const noexcept { return add_[a * q_ + neg_[b]]; }
  /// Throws std::domain_error for the zero code.
  Element inv(Element a) const;
  Element pow(Element a, unsigned k) const noexcept;

  /// Monic modulus over GF(p), constant term first.
  std::span<const int> modulus() const noexcept { return modulus_; }

  bool operator==(const FieldTable&) const = default;

 private:
  friend FieldTable build_field(int q);

  int q_ = 0;
  int p_ = 0;
  int e_ = 0;
  std::vector<Element> add_;
  std::vector<Element> mul_;
  std::vector<Element> neg_;
  std::vector<Element> inv_;
  std::vector<int> modulus_;
};

/// Orders accepted by build_field.
std::span<const int> supported_orders() noexcept;
bool is_supported_order(int q) noexcept;

/// Throws std::invalid_argument for non prime powers and for orders outside
/// supported_orders().
FieldTable build_field(int q);

}  // namespace flagkneser
