#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>

#include "complab/errors.hpp"

namespace complab {

// Exact arbitrary-precision integers and rationals. Rationals are kept in
// canonical form (reduced, positive denominator) by mpq_class itself as long
// as arithmetic goes through operators; explicit canonicalize() is only
// needed after raw constructor use.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// binomial(n, k) as an exact integer, n may be any integer (falling
// factorial over k! definition, so negative n is fine).
Int binomial(const Int& n, unsigned long k);

bool is_prime_u64(std::uint64_t n);  // deterministic trial division

// The coefficient field: F_p for a prime 2 <= p < 2^31, or Q.
class FieldSpec {
 public:
  enum class Kind { Prime, Rationals };

  static FieldSpec prime(std::uint64_t p);
  static FieldSpec rationals();
  // "F2", "F3", ..., "Q"
  static FieldSpec parse(const std::string& flag);

  Kind kind() const { return kind_; }
  bool is_prime_field() const { return kind_ == Kind::Prime; }
  std::uint64_t p() const { return p_; }
  std::string name() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(Kind k, std::uint64_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint64_t p_;
};

// One exact scalar value. Prime-field values are canonical residues in
// [0, p); rational values are reduced fractions with positive denominator.
class Scalar {
 public:
  Scalar() : v_(std::uint64_t{0}) {}
  static Scalar residue(std::uint64_t r) { return Scalar(r); }
  static Scalar rational(Rat q) { return Scalar(std::move(q)); }

  bool is_residue() const { return std::holds_alternative<std::uint64_t>(v_); }
  std::uint64_t as_residue() const;
  const Rat& as_rational() const;

  bool matches(const FieldSpec& f) const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_residue() != b.is_residue()) return false;
    if (a.is_residue()) return a.as_residue() == b.as_residue();
    return a.as_rational() == b.as_rational();
  }

  std::string str() const;

 private:
  explicit Scalar(std::uint64_t r) : v_(r) {}
  explicit Scalar(Rat q) : v_(std::move(q)) {}
  std::variant<std::uint64_t, Rat> v_;
};

// Scalar arithmetic in a given field.
Scalar scalar_zero(const FieldSpec& f);
Scalar scalar_one(const FieldSpec& f);
Scalar scalar_from_int(const FieldSpec& f, long v);
Scalar scalar_add(const FieldSpec& f, const Scalar& a, const Scalar& b);
Scalar scalar_sub(const FieldSpec& f, const Scalar& a, const Scalar& b);
Scalar scalar_mul(const FieldSpec& f, const Scalar& a, const Scalar& b);
Scalar scalar_inv(const FieldSpec& f, const Scalar& a);
bool scalar_is_zero(const FieldSpec& f, const Scalar& a);

std::uint64_t inv_mod_u64(std::uint64_t a, std::uint64_t p);
std::uint64_t pow_mod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p);

}  // namespace complab
