#include "complab/poly.hpp"

#include <sstream>

namespace complab {

RationalPolynomial::RationalPolynomial(int vars) : vars_(vars) {
  if (vars != 1 && vars != 2) throw SpecError("RationalPolynomial supports 1 or 2 variables");
}

RationalPolynomial RationalPolynomial::constant(int vars, Rat c) {
  RationalPolynomial p(vars);
  p.add_term({0, 0}, c);
  return p;
}

RationalPolynomial RationalPolynomial::variable(int vars, int which) {
  RationalPolynomial p(vars);
  if (which < 0 || which >= vars) throw SpecError("variable index out of range");
  Exp e{0, 0};
  e[static_cast<std::size_t>(which)] = 1;
  p.add_term(e, Rat(1));
  return p;
}

unsigned RationalPolynomial::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1]);
  return d;
}

Rat RationalPolynomial::coeff(Exp e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

void RationalPolynomial::add_term(Exp e, const Rat& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void RationalPolynomial::check_compatible(const RationalPolynomial& o) const {
  if (vars_ != o.vars_) throw DimensionMismatch("mixed variable counts in polynomial arithmetic");
}

RationalPolynomial RationalPolynomial::operator+(const RationalPolynomial& o) const {
  check_compatible(o);
  RationalPolynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

RationalPolynomial RationalPolynomial::operator-(const RationalPolynomial& o) const {
  check_compatible(o);
  RationalPolynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

RationalPolynomial RationalPolynomial::operator*(const RationalPolynomial& o) const {
  check_compatible(o);
  RationalPolynomial r(vars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) r.add_term({ea[0] + eb[0], ea[1] + eb[1]}, ca * cb);
  return r;
}

Rat RationalPolynomial::eval(const Rat& alpha, const Rat& beta) const {
  Rat acc(0);
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (std::uint32_t i = 0; i < e[0]; ++i) t *= alpha;
    for (std::uint32_t i = 0; i < e[1]; ++i) t *= beta;
    acc += t;
  }
  return acc;
}

RationalPolynomial RationalPolynomial::substitute_alpha_plus_beta() const {
  if (vars_ != 1) throw DimensionMismatch("substitute_alpha_plus_beta expects a univariate polynomial");
  RationalPolynomial r(2);
  for (const auto& [e, c] : terms_) {
    const std::uint32_t n = e[0];
    for (std::uint32_t k = 0; k <= n; ++k) {
      Rat b(binomial(Int(n), k));
      r.add_term({n - k, k}, c * b);
    }
  }
  return r;
}

RationalPolynomial RationalPolynomial::rename_to_beta() const {
  if (vars_ != 1) throw DimensionMismatch("rename_to_beta expects a univariate polynomial");
  RationalPolynomial r(2);
  for (const auto& [e, c] : terms_) r.add_term({0, e[0]}, c);
  return r;
}

std::string RationalPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (int v = 0; v < 2; ++v) {
      if (e[static_cast<std::size_t>(v)] == 0) continue;
      os << (v == 0 ? "*a" : "*b");
      if (e[static_cast<std::size_t>(v)] > 1) os << "^" << e[static_cast<std::size_t>(v)];
    }
  }
  return os.str();
}

RationalPolynomial truncated_poly_multiply(const RationalPolynomial& a,
                                           const RationalPolynomial& b, unsigned bound) {
  RationalPolynomial r(a.vars());
  if (a.vars() != b.vars()) throw DimensionMismatch("mixed variable counts in polynomial arithmetic");
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      const std::uint32_t d = ea[0] + eb[0] + ea[1] + eb[1];
      if (d > bound) continue;
      r.add_term({ea[0] + eb[0], ea[1] + eb[1]}, ca * cb);
    }
  return r;
}

}  // namespace complab
