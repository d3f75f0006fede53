#include <doctest.h>

#include "complab/laurent.hpp"

using namespace complab;

TEST_CASE("binomial coefficient polynomials") {
  CHECK(binomial_poly(1).poly == RationalPolynomial::variable(1, 0));

  RationalPolynomial c2(1);
  c2.add_term({2, 0}, make_rat(1, 2));
  c2.add_term({1, 0}, make_rat(-1, 2));
  CHECK(binomial_poly(2).poly == c2);

  RationalPolynomial c3(1);
  c3.add_term({1, 0}, make_rat(1, 3));
  c3.add_term({2, 0}, make_rat(-1, 2));
  c3.add_term({3, 0}, make_rat(1, 6));
  CHECK(binomial_poly(3).poly == c3);

  // c_i(m) = binomial(m, i) integrally: cross-check against the Pascal
  // recurrence for 0 <= m, i <= 12
  std::vector<std::vector<Int>> pascal(13, std::vector<Int>(13, 0));
  for (int m = 0; m <= 12; ++m) {
    pascal[m][0] = 1;
    for (int i = 1; i <= m; ++i)
      pascal[m][i] = (i <= m - 1 ? pascal[m - 1][i] : Int(0)) + pascal[m - 1][i - 1];
  }
  for (unsigned i = 0; i <= 12; ++i) {
    RationalPolynomial ci = binomial_poly(i).poly;
    for (long m = 0; m <= 12; ++m) {
      Rat v = ci.eval(Rat(m));
      CHECK(v == Rat(pascal[static_cast<std::size_t>(m)][i]));
    }
  }
  // c_0 = 1 and c_i(0) = 0
  CHECK(binomial_poly(0).poly == RationalPolynomial::constant(1, Rat(1)));
  for (unsigned i = 1; i <= 6; ++i) CHECK(binomial_poly(i).poly.eval(Rat(0)) == 0);
}

TEST_CASE("vandermonde identity, exact bivariate expansion") {
  VandermondeReport r = vandermonde_check(12);
  CHECK(r.holds.size() == 13);
  CHECK(r.all());
  // spot formula at i = 2: c2(a+b) = c2(a) + ab + c2(b)
  RationalPolynomial lhs = binomial_poly(2).poly.substitute_alpha_plus_beta();
  RationalPolynomial ab(2);
  ab.add_term({1, 1}, Rat(1));
  RationalPolynomial a2(2);
  for (const auto& [e, c] : binomial_poly(2).poly.terms()) a2.add_term(e, c);
  CHECK(lhs == a2 + ab + binomial_poly(2).poly.rename_to_beta());
}

TEST_CASE("shift orbits and orders") {
  CHECK(shift_matrix_orbit(2, 1).order == 2);
  CHECK(shift_matrix_orbit(2, 2).order == 4);
  CHECK(shift_matrix_orbit(2, 3).order == 4);
  CHECK(shift_matrix_orbit(2, 4).order == 8);
  CHECK(shift_matrix_orbit(5, 4).order == 5);

  OrderProfile p2 = order_profile(2, 7);
  CHECK(p2.orders == std::vector<std::uint64_t>{2, 4, 4, 8, 8, 8, 8});
  for (bool m : p2.closed_form_match) CHECK(m);
  OrderProfile p3 = order_profile(3, 8);
  CHECK(p3.orders == std::vector<std::uint64_t>{3, 3, 9, 9, 9, 9, 9, 9});
  for (bool m : p3.closed_form_match) CHECK(m);
  // the literal band sentence disagrees with the computed orders (the
  // explicit l = 2 value already contradicts it)
  CHECK_FALSE(p2.band_sentence_match[1]);

  // homomorphism over the orbit: M^a M^b = M^{a+b}
  ShiftOrbit so = shift_matrix_orbit(2, 4);
  const unsigned n = so.l + 1;
  for (std::uint64_t a = 0; a < so.order; ++a)
    for (std::uint64_t b = 0; b < so.order; ++b) {
      const auto& prod = so.orbit[(a + b) % so.order];
      // multiply so.orbit[a] * so.orbit[b] mod 2
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
          std::uint64_t acc = 0;
          for (unsigned k = 0; k < n; ++k) acc += so.entry(a, i, k) * so.entry(b, k, j);
          REQUIRE(acc % 2 == prod[i * n + j]);
        }
    }
}

TEST_CASE("laurent tower bands") {
  LaurentTower t = laurent_tower(2, 7);
  CHECK(t.levels[0].order == 2);
  CHECK(t.levels[1].order == 4);
  CHECK_FALSE(t.levels[0].transition_identity);  // Z/4 ->> Z/2
  CHECK(t.levels[1].transition_identity);        // Z/4 -> Z/4
  CHECK(t.levels[4].transition_identity);        // inside the order-8 band

  LaurentTower t3 = laurent_tower(3, 8);
  for (unsigned l = 3; l <= 7; ++l) CHECK(t3.levels[l - 1].order == 9);
}

TEST_CASE("graded P vs J rows") {
  auto rows = graded_p_vs_j(2, 8);
  REQUIRE(rows.size() == 8);
  for (const auto& r : rows) {
    const bool expect_match = (r.index == 1 || r.index == 2 || r.index == 4 || r.index == 8);
    CHECK(r.match == expect_match);
    CHECK(r.j_graded_order == 2);
  }
  CHECK(rows[2].p_graded_order == 1);  // i = 3
  CHECK(rows[3].p_graded_order == 2);  // i = 4
}

TEST_CASE("char zero injectivity") {
  CHECK(char_zero_injectivity(2).confirmed);
  CHECK(char_zero_injectivity(5).confirmed);
}

TEST_CASE("vanishing relations") {
  // l=1, d=1: exactly the span of {T12, T11-1, T22-1}
  RelationBasis r1 = vanishing_relations(2, 1, 1);
  CHECK(r1.orbit_size == 2);
  CHECK(r1.relations.dim() == 3);
  auto idx = [&](unsigned i, unsigned j) {
    return *r1.monomial_index(Monomial{std::make_pair(i, j), std::nullopt});
  };
  CHECK(r1.contains({{idx(1, 2), 1}}));
  CHECK(r1.contains({{idx(1, 1), 1}, {0, -1}}));
  CHECK(r1.contains({{idx(2, 2), 1}, {0, -1}}));
  CHECK_FALSE(r1.contains({{idx(2, 1), 1}}));

  // l=2, d=1 contains T21 - T32
  RelationBasis r2 = vanishing_relations(2, 2, 1);
  auto idx2 = [&](unsigned i, unsigned j) {
    return *r2.monomial_index(Monomial{std::make_pair(i, j), std::nullopt});
  };
  CHECK(r2.contains({{idx2(2, 1), 1}, {idx2(3, 2), -1}}));

  // l=3, d=2 contains T41 - T21*T31
  RelationBasis r3 = vanishing_relations(2, 3, 2);
  auto lin = [&](unsigned i, unsigned j) {
    return *r3.monomial_index(Monomial{std::make_pair(i, j), std::nullopt});
  };
  auto quad = *r3.monomial_index(Monomial{std::make_pair(2u, 1u), std::make_pair(3u, 1u)});
  CHECK(r3.contains({{lin(4, 1), 1}, {quad, -1}}));
  CHECK_FALSE(r3.contains({{lin(2, 1), 1}, {lin(4, 1), -1}}));
}

TEST_CASE("paper ideal audit") {
  auto audit = paper_ideal_audit();
  REQUIRE(audit.size() == 4);
  CHECK(audit[0].all_vanish());
  CHECK(audit[1].all_vanish());
  CHECK_FALSE(audit[2].all_vanish());
  CHECK_FALSE(audit[3].all_vanish());
  for (unsigned li : {2u, 3u}) {
    bool found = false;
    for (const auto& g : audit[li].generators) {
      if (g.label == "T21-T41") {
        found = true;
        CHECK_FALSE(g.vanishes);
        CHECK(g.witness_k == 1);
      } else {
        CHECK(g.vanishes);
      }
    }
    CHECK(found);
  }
  CHECK(audit[0].orbit_size == 2);
  CHECK(audit[1].orbit_size == 4);
  CHECK(audit[3].orbit_size == 8);
  // both readings of "dimension": free linear coordinates vs orbit size
  CHECK(audit[1].independent_linear_coordinates == 2);
  CHECK(audit[2].independent_linear_coordinates == 3);
  CHECK(audit[3].independent_linear_coordinates == 4);
}
