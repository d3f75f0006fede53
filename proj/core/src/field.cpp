#include "complab/field.hpp"

#include <sstream>

namespace complab {

Int binomial(const Int& n, unsigned long k) {
  // falling factorial / k!, valid for any integer n
  Int num = 1;
  Int t;
  for (unsigned long i = 0; i < k; ++i) {
    t = n - static_cast<long>(i);
    num *= t;
  }
  Int den;
  mpz_fac_ui(den.get_mpz_t(), k);
  return num / den;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p < 2 || p >= (std::uint64_t{1} << 31) || !is_prime_u64(p))
    throw SpecError("field characteristic must be a prime in [2, 2^31): " + std::to_string(p));
  return FieldSpec(Kind::Prime, p);
}

FieldSpec FieldSpec::rationals() { return FieldSpec(Kind::Rationals, 0); }

FieldSpec FieldSpec::parse(const std::string& flag) {
  if (flag == "Q") return rationals();
  if (flag.size() >= 2 && flag[0] == 'F') {
    std::uint64_t p = 0;
    for (std::size_t i = 1; i < flag.size(); ++i) {
      if (flag[i] < '0' || flag[i] > '9') throw SpecError("bad field flag: " + flag);
      p = p * 10 + static_cast<std::uint64_t>(flag[i] - '0');
      if (p >= (std::uint64_t{1} << 32)) throw SpecError("bad field flag: " + flag);
    }
    return prime(p);
  }
  throw SpecError("bad field flag: " + flag + " (expected F<p> or Q)");
}

std::string FieldSpec::name() const {
  if (kind_ == Kind::Rationals) return "Q";
  return "F" + std::to_string(p_);
}

std::uint64_t Scalar::as_residue() const {
  if (!is_residue()) throw FieldMismatch("rational scalar used as prime-field residue");
  return std::get<std::uint64_t>(v_);
}

const Rat& Scalar::as_rational() const {
  if (is_residue()) throw FieldMismatch("prime-field scalar used as rational");
  return std::get<Rat>(v_);
}

bool Scalar::matches(const FieldSpec& f) const {
  if (f.is_prime_field()) return is_residue() && as_residue() < f.p();
  return !is_residue();
}

std::string Scalar::str() const {
  if (is_residue()) return std::to_string(as_residue());
  std::ostringstream os;
  os << as_rational();
  return os.str();
}

namespace {
void check(const FieldSpec& f, const Scalar& a) {
  if (!a.matches(f)) throw FieldMismatch("scalar does not lie in " + f.name());
}
}  // namespace

Scalar scalar_zero(const FieldSpec& f) {
  return f.is_prime_field() ? Scalar::residue(0) : Scalar::rational(Rat(0));
}

Scalar scalar_one(const FieldSpec& f) {
  return f.is_prime_field() ? Scalar::residue(1 % f.p()) : Scalar::rational(Rat(1));
}

Scalar scalar_from_int(const FieldSpec& f, long v) {
  if (!f.is_prime_field()) return Scalar::rational(Rat(v));
  long long m = static_cast<long long>(f.p());
  long long r = static_cast<long long>(v) % m;
  if (r < 0) r += m;
  return Scalar::residue(static_cast<std::uint64_t>(r));
}

Scalar scalar_add(const FieldSpec& f, const Scalar& a, const Scalar& b) {
  check(f, a);
  check(f, b);
  if (f.is_prime_field()) {
    std::uint64_t s = a.as_residue() + b.as_residue();
    if (s >= f.p()) s -= f.p();
    return Scalar::residue(s);
  }
  return Scalar::rational(a.as_rational() + b.as_rational());
}

Scalar scalar_sub(const FieldSpec& f, const Scalar& a, const Scalar& b) {
  check(f, a);
  check(f, b);
  if (f.is_prime_field()) {
    std::uint64_t x = a.as_residue(), y = b.as_residue();
    return Scalar::residue(x >= y ? x - y : x + f.p() - y);
  }
  return Scalar::rational(a.as_rational() - b.as_rational());
}

Scalar scalar_mul(const FieldSpec& f, const Scalar& a, const Scalar& b) {
  check(f, a);
  check(f, b);
  if (f.is_prime_field()) return Scalar::residue((a.as_residue() * b.as_residue()) % f.p());
  return Scalar::rational(a.as_rational() * b.as_rational());
}

Scalar scalar_inv(const FieldSpec& f, const Scalar& a) {
  check(f, a);
  if (f.is_prime_field()) return Scalar::residue(inv_mod_u64(a.as_residue(), f.p()));
  if (a.as_rational() == 0) throw Error("division by zero");
  return Scalar::rational(Rat(1) / a.as_rational());
}

bool scalar_is_zero(const FieldSpec& f, const Scalar& a) {
  check(f, a);
  if (f.is_prime_field()) return a.as_residue() == 0;
  return a.as_rational() == 0;
}

std::uint64_t pow_mod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = (r * a) % p;
    a = (a * a) % p;
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod_u64(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) throw Error("division by zero in F" + std::to_string(p));
  // extended euclid; p < 2^31 so signed intermediates are safe
  std::int64_t t = 0, newt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a);
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

}  // namespace complab
