#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "complab/field.hpp"

namespace complab {

// Polynomials over Q in one or two variables, stored sparsely by exponent
// tuple. Zero coefficients are never stored.
class RationalPolynomial {
 public:
  using Exp = std::array<std::uint32_t, 2>;  // (e_alpha, e_beta); e_beta = 0 when univariate

  explicit RationalPolynomial(int vars = 1);
  static RationalPolynomial constant(int vars, Rat c);
  static RationalPolynomial variable(int vars, int which);  // 0 = alpha, 1 = beta

  int vars() const { return vars_; }
  const std::map<Exp, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const;  // total degree, 0 for the zero polynomial

  Rat coeff(Exp e) const;
  void add_term(Exp e, const Rat& c);

  RationalPolynomial operator+(const RationalPolynomial& o) const;
  RationalPolynomial operator-(const RationalPolynomial& o) const;
  RationalPolynomial operator*(const RationalPolynomial& o) const;

  bool operator==(const RationalPolynomial& o) const = default;

  Rat eval(const Rat& alpha, const Rat& beta = Rat(0)) const;

  // Univariate p(alpha) viewed as the bivariate p(alpha + beta).
  RationalPolynomial substitute_alpha_plus_beta() const;
  // Univariate p(alpha) reread as a polynomial in beta.
  RationalPolynomial rename_to_beta() const;

  std::string str() const;  // deterministic rendering, e.g. "-1/2*a + 1/2*a^2"

 private:
  void check_compatible(const RationalPolynomial& o) const;
  int vars_;
  std::map<Exp, Rat> terms_;
};

// Product with all terms of total degree > bound dropped.
RationalPolynomial truncated_poly_multiply(const RationalPolynomial& a,
                                           const RationalPolynomial& b, unsigned bound);

}  // namespace complab
