#include "complab/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "complab/field.hpp"

namespace complab {

BinomialPolynomial binomial_poly(unsigned i) {
  BinomialPolynomial b;
  b.index = i;
  // c_0 = 1; c_i = c_{i-1} * (alpha - (i-1)) / i
  RationalPolynomial c = RationalPolynomial::constant(1, Rat(1));
  for (unsigned k = 1; k <= i; ++k) {
    RationalPolynomial factor(1);
    factor.add_term({1, 0}, Rat(1));
    factor.add_term({0, 0}, Rat(-static_cast<long>(k - 1)));
    c = c * factor;
    RationalPolynomial scaled(1);
    for (const auto& [e, q] : c.terms()) scaled.add_term(e, q / static_cast<long>(k));
    c = scaled;
  }
  b.poly = c;
  return b;
}

bool VandermondeReport::all() const {
  return std::all_of(holds.begin(), holds.end(), [](bool b) { return b; });
}

VandermondeReport vandermonde_check(unsigned l) {
  if (l > 16) throw SpecError("vandermonde_check is capped at l = 16");
  VandermondeReport r;
  r.max_index = l;
  std::vector<RationalPolynomial> c;
  for (unsigned i = 0; i <= l; ++i) c.push_back(binomial_poly(i).poly);
  for (unsigned i = 0; i <= l; ++i) {
    RationalPolynomial lhs = c[i].substitute_alpha_plus_beta();
    RationalPolynomial rhs(2);
    for (unsigned a = 0; a <= i; ++a) {
      RationalPolynomial ca(2);
      for (const auto& [e, q] : c[a].terms()) ca.add_term(e, q);
      rhs = rhs + ca * c[i - a].rename_to_beta();
    }
    r.holds.push_back(lhs == rhs);
  }
  return r;
}

namespace {

std::vector<std::uint64_t> shift_identity(unsigned n) {
  std::vector<std::uint64_t> m(static_cast<std::size_t>(n) * n, 0);
  for (unsigned i = 0; i < n; ++i) m[i * n + i] = 1;
  return m;
}

std::vector<std::uint64_t> mat_mul_mod(const std::vector<std::uint64_t>& a,
                                       const std::vector<std::uint64_t>& b, unsigned n,
                                       std::uint64_t p) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(n) * n, 0);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned k = 0; k < n; ++k) {
      const std::uint64_t aik = a[i * n + k];
      if (!aik) continue;
      for (unsigned j = 0; j <= k; ++j)  // lower triangular
        out[i * n + j] = (out[i * n + j] + aik * b[k * n + j]) % p;
    }
  return out;
}

std::uint64_t binom_mod(std::uint64_t k, unsigned i, std::uint64_t p) {
  Int b = binomial(Int(static_cast<unsigned long>(k)), i);
  Int r = b % static_cast<unsigned long>(p);
  return mpz_get_ui(r.get_mpz_t());
}

}  // namespace

ShiftOrbit shift_matrix_orbit(std::uint64_t p, unsigned l, std::uint64_t orbit_cap) {
  if (!is_prime_u64(p)) throw SpecError("shift orbit needs a prime p");
  if (l < 1) throw SpecError("shift orbit needs l >= 1");
  ShiftOrbit so;
  so.p = p;
  so.l = l;
  const unsigned n = l + 1;
  std::vector<std::uint64_t> m = shift_identity(n);
  for (unsigned i = 1; i < n; ++i) m[i * n + (i - 1)] = 1;  // I + subdiagonal

  std::vector<std::uint64_t> acc = shift_identity(n);
  while (true) {
    so.orbit.push_back(acc);
    if (so.orbit.size() > orbit_cap) throw EnumerationLimit(orbit_cap);
    acc = mat_mul_mod(acc, m, n, p);
    if (acc == so.orbit.front()) break;
  }
  so.order = so.orbit.size();

  // entry certification: (M^k)_{r,c} = c_{r-c}(k) mod p
  for (std::uint64_t k = 0; k < so.order; ++k)
    for (unsigned r = 0; r < n; ++r)
      for (unsigned c = 0; c < n; ++c) {
        const std::uint64_t expect = (c > r) ? 0 : binom_mod(k, r - c, p);
        if (so.entry(k, r, c) != expect) throw Error("orbit entry certification failed");
      }
  return so;
}

OrderProfile order_profile(std::uint64_t p, unsigned l_max) {
  if (l_max > 64) throw SpecError("order_profile is capped at l = 64");
  OrderProfile prof;
  prof.p = p;
  for (unsigned l = 1; l <= l_max; ++l) {
    ShiftOrbit so = shift_matrix_orbit(p, l);
    prof.orders.push_back(so.order);
    std::uint64_t cf = 1;
    while (cf < l + 1) cf *= p;
    prof.closed_form.push_back(cf);
    prof.closed_form_match.push_back(cf == so.order);
    std::uint64_t band = 1;
    while (band * p <= l) band *= p;
    prof.band_sentence_value.push_back(band);
    prof.band_sentence_match.push_back(band == so.order);
  }
  return prof;
}

LaurentTower laurent_tower(std::uint64_t p, unsigned l_max) {
  OrderProfile prof = order_profile(p, l_max);
  LaurentTower t;
  t.p = p;
  for (unsigned l = 1; l <= l_max; ++l) {
    LaurentTowerLevel lv;
    lv.l = l;
    lv.order = prof.orders[l - 1];
    if (l < l_max) lv.transition_identity = prof.orders[l] == prof.orders[l - 1];
    t.levels.push_back(lv);
  }
  t.stable_description = "inverse limit of cyclic p-power quotients (pro-p completion of Z)";
  return t;
}

std::vector<GradedPvsJRow> graded_p_vs_j(std::uint64_t p, unsigned l_max) {
  if (l_max > 32) throw SpecError("graded_p_vs_j is capped at l = 32");
  // e_i = least k >= 1 with (1+T)^k = 1 mod T^i, by direct truncated powering
  auto minimal_exponent = [&](unsigned i) -> std::uint64_t {
    if (i <= 1) return 1;
    std::vector<std::uint64_t> pow(i, 0);  // coefficients of (1+T)^k mod T^i
    pow[0] = 1;
    for (std::uint64_t k = 1;; ++k) {
      // multiply by (1+T)
      for (unsigned j = i - 1; j >= 1; --j) pow[j] = (pow[j] + pow[j - 1]) % p;
      bool is_one = pow[0] == 1;
      for (unsigned j = 1; j < i && is_one; ++j) is_one = pow[j] == 0;
      if (is_one) return k;
      if (k > (std::uint64_t{1} << 32)) throw EnumerationLimit(k);
    }
  };
  std::vector<std::uint64_t> e;
  for (unsigned i = 1; i <= l_max + 1; ++i) e.push_back(minimal_exponent(i));
  std::vector<GradedPvsJRow> rows;
  for (unsigned i = 1; i <= l_max; ++i) {
    GradedPvsJRow row;
    row.index = i;
    row.minimal_exponent = e[i - 1];
    row.p_graded_order = e[i] / e[i - 1];
    row.j_graded_order = p;  // dim T^i/T^{i+1} = 1
    row.match = row.p_graded_order == row.j_graded_order;
    rows.push_back(row);
  }
  return rows;
}

CharZeroReport char_zero_injectivity(unsigned l) {
  if (l < 2) throw SpecError("char_zero_injectivity needs l >= 2");
  CharZeroReport r;
  r.l = l;
  // c_1 = alpha exactly, and c_i(0) = 0 for 1 <= i <= l
  RationalPolynomial alpha = RationalPolynomial::variable(1, 0);
  bool ok = binomial_poly(1).poly == alpha;
  for (unsigned i = 1; i <= l && ok; ++i) ok = binomial_poly(i).poly.eval(Rat(0)) == 0;
  r.confirmed = ok;
  return r;
}

std::string Monomial::str() const {
  if (!a) return "1";
  std::ostringstream os;
  os << "T" << a->first << a->second;
  if (b) os << "*T" << b->first << b->second;
  return os.str();
}

std::optional<std::size_t> RelationBasis::monomial_index(const Monomial& m) const {
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    if (monomials[i].a == m.a && monomials[i].b == m.b) return i;
  }
  return std::nullopt;
}

bool RelationBasis::contains(const std::vector<std::pair<std::size_t, long>>& poly) const {
  std::vector<Scalar> v(monomials.size(), Scalar::residue(0));
  const FieldSpec f = FieldSpec::prime(p);
  for (const auto& [idx, coeff] : poly)
    v[idx] = scalar_add(f, v[idx], scalar_from_int(f, coeff));
  return subspace_contains(relations, v).has_value();
}

RelationBasis vanishing_relations(std::uint64_t p, unsigned l, unsigned degree_bound) {
  if (p != 2 && p != 3) throw SpecError("vanishing_relations supports p = 2 or 3");
  if (l > 8) throw SpecError("vanishing_relations is capped at l = 8");
  if (degree_bound < 1 || degree_bound > 2) throw SpecError("degree bound must be 1 or 2");

  RelationBasis rb;
  rb.p = p;
  rb.l = l;
  rb.degree_bound = degree_bound;
  ShiftOrbit so = shift_matrix_orbit(p, l);
  rb.orbit_size = so.order;

  const unsigned n = l + 1;
  rb.monomials.push_back(Monomial{});  // constant
  std::vector<std::pair<unsigned, unsigned>> linear;
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j) linear.push_back({i, j});
  for (auto [i, j] : linear) rb.monomials.push_back(Monomial{std::make_pair(i, j), std::nullopt});
  if (degree_bound == 2) {
    for (std::size_t a = 0; a < linear.size(); ++a)
      for (std::size_t b = a; b < linear.size(); ++b)
        rb.monomials.push_back(Monomial{linear[a], linear[b]});
  }
  if (rb.monomials.size() > 100000) throw SearchSpaceTooLarge("monomial count exceeds 1e5");

  const FieldSpec f = FieldSpec::prime(p);
  DenseMatrix ev(so.order, rb.monomials.size());
  for (std::uint64_t k = 0; k < so.order; ++k) {
    for (std::size_t mi = 0; mi < rb.monomials.size(); ++mi) {
      const Monomial& m = rb.monomials[mi];
      std::uint64_t val = 1;
      if (m.a) val = so.entry(k, m.a->first - 1, m.a->second - 1);
      if (m.b) val = (val * so.entry(k, m.b->first - 1, m.b->second - 1)) % p;
      ev.at(k, mi) = Scalar::residue(val % p);
    }
  }
  rb.relations = nullspace(ev, f);

  // every relation re-evaluates to zero on every orbit point
  for (const auto& row : rb.relations.rows) {
    for (std::uint64_t k = 0; k < so.order; ++k) {
      std::uint64_t acc = 0;
      for (std::size_t mi = 0; mi < row.size(); ++mi) {
        if (row[mi].as_residue() == 0) continue;
        acc = (acc + row[mi].as_residue() * ev.at(k, mi).as_residue()) % p;
      }
      if (acc != 0) throw Error("vanishing relation failed re-evaluation");
    }
  }
  return rb;
}

namespace {

struct LinearGenerator {
  std::string label;
  // sum of coeff * T_ij plus a constant, mod p
  std::vector<std::tuple<unsigned, unsigned, long>> terms;
  long constant = 0;
};

std::vector<LinearGenerator> paper_generators(unsigned l) {
  std::vector<LinearGenerator> gens;
  const unsigned n = l + 1;
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = i + 1; j <= n; ++j)
      gens.push_back({"T" + std::to_string(i) + std::to_string(j), {{i, j, 1}}, 0});
  for (unsigned i = 1; i <= n; ++i)
    gens.push_back({"T" + std::to_string(i) + std::to_string(i) + "-1", {{i, i, 1}}, -1});
  auto diff = [&](unsigned a1, unsigned a2, unsigned b1, unsigned b2) {
    gens.push_back({"T" + std::to_string(a1) + std::to_string(a2) + "-T" + std::to_string(b1) +
                        std::to_string(b2),
                    {{a1, a2, 1}, {b1, b2, -1}},
                    0});
  };
  if (l == 2) {
    diff(2, 1, 3, 2);
  } else if (l == 3) {
    diff(2, 1, 3, 2);
    diff(3, 2, 4, 3);
    diff(3, 1, 4, 2);
    diff(2, 1, 4, 1);
  } else if (l == 4) {
    diff(2, 1, 4, 1);
    diff(2, 1, 3, 2);
    diff(3, 2, 4, 3);
    diff(4, 3, 5, 4);
    diff(3, 1, 4, 2);
    diff(4, 2, 5, 3);
    diff(4, 1, 5, 2);
  }
  return gens;
}

}  // namespace

bool IdealAuditLevel::all_vanish() const {
  return std::all_of(generators.begin(), generators.end(),
                     [](const IdealGeneratorVerdict& g) { return g.vanishes; });
}

std::vector<IdealAuditLevel> paper_ideal_audit() {
  std::vector<IdealAuditLevel> out;
  const std::uint64_t p = 2;
  for (unsigned l = 1; l <= 4; ++l) {
    ShiftOrbit so = shift_matrix_orbit(p, l);
    IdealAuditLevel level;
    level.l = l;
    level.orbit_size = so.order;

    for (const LinearGenerator& g : paper_generators(l)) {
      IdealGeneratorVerdict v;
      v.label = g.label;
      v.vanishes = true;
      for (std::uint64_t k = 0; k < so.order; ++k) {
        long acc = g.constant;
        for (auto [i, j, c] : g.terms)
          acc += c * static_cast<long>(so.entry(k, i - 1, j - 1));
        if (((acc % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p) != 0) {
          v.vanishes = false;
          v.witness_k = k;
          break;
        }
      }
      level.generators.push_back(std::move(v));
    }

    // rank of {1} union {T_ij} evaluated on the orbit, minus the constant
    const unsigned n = l + 1;
    const FieldSpec f2 = FieldSpec::prime(2);
    DenseMatrix ev(so.order, 1 + static_cast<std::size_t>(n) * n);
    for (std::uint64_t k = 0; k < so.order; ++k) {
      ev.at(k, 0) = Scalar::residue(1);
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
          ev.at(k, 1 + i * n + j) = Scalar::residue(so.entry(k, i, j));
    }
    // columns are functions on the orbit: transpose so rows = functions
    DenseMatrix tr(ev.cols, ev.rows);
    for (std::size_t i = 0; i < ev.rows; ++i)
      for (std::size_t j = 0; j < ev.cols; ++j) tr.at(j, i) = ev.at(i, j);
    auto [basis, rank] = echelonize(tr, f2);
    level.independent_linear_coordinates = rank - 1;
    out.push_back(std::move(level));
  }
  return out;
}

}  // namespace complab
