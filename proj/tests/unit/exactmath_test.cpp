#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "complab/field.hpp"
#include "complab/linalg.hpp"
#include "complab/poly.hpp"

using namespace complab;

namespace {

DenseMatrix matrix_from(std::size_t rows, std::size_t cols, const FieldSpec& f,
                        const std::vector<long>& vals) {
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < vals.size(); ++i) m.entries[i] = scalar_from_int(f, vals[i]);
  return m;
}

// independent rank oracle: the largest k with a nonzero k x k minor
std::uint64_t det_mod_p(const std::vector<std::uint64_t>& m, std::size_t n, std::uint64_t p,
                        const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  const std::size_t k = rows.size();
  if (k == 1) return m[rows[0] * n + cols[0]] % p;
  std::uint64_t acc = 0;
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t c = 0; c < k; ++c) {
    const std::uint64_t pivot = m[rows[0] * n + cols[c]] % p;
    if (!pivot) continue;
    std::vector<std::size_t> sub_cols;
    for (std::size_t cc = 0; cc < k; ++cc)
      if (cc != c) sub_cols.push_back(cols[cc]);
    const std::uint64_t minor = det_mod_p(m, n, p, sub_rows, sub_cols);
    const std::uint64_t term = (pivot * minor) % p;
    acc = (c % 2 == 0) ? (acc + term) % p : (acc + p - term) % p;
  }
  return acc;
}

std::size_t rank_by_minors(const std::vector<std::uint64_t>& m, std::size_t n, std::uint64_t p) {
  for (std::size_t k = n; k >= 1; --k) {
    // all k-subsets of rows and columns
    std::vector<std::size_t> ridx(k), cidx(k);
    std::vector<char> rsel(n, 0), csel(n, 0);
    std::fill(rsel.begin(), rsel.begin() + static_cast<std::ptrdiff_t>(k), 1);
    do {
      std::size_t ri = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (rsel[i]) ridx[ri++] = i;
      std::fill(csel.begin(), csel.end(), 0);
      std::fill(csel.begin(), csel.begin() + static_cast<std::ptrdiff_t>(k), 1);
      do {
        std::size_t ci = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (csel[i]) cidx[ci++] = i;
        if (det_mod_p(m, n, p, ridx, cidx) != 0) return k;
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
  }
  return 0;
}

}  // namespace

TEST_CASE("echelonize: identity, zero, and a dependent F2 triple") {
  const FieldSpec f2 = FieldSpec::prime(2);
  auto [b1, r1] = echelonize(matrix_from(3, 3, f2, {1, 0, 0, 0, 1, 0, 0, 0, 1}), f2);
  CHECK(r1 == 3);
  CHECK(b1.pivots == std::vector<std::size_t>{0, 1, 2});

  const FieldSpec q = FieldSpec::rationals();
  auto [b2, r2] = echelonize(matrix_from(2, 4, q, {0, 0, 0, 0, 0, 0, 0, 0}), q);
  CHECK(r2 == 0);
  CHECK(b2.rows.empty());

  // oracle: span size of {(1,1,0),(0,1,1),(1,0,1)} over F_2 by enumerating
  // all 2^3 combinations
  const std::vector<std::vector<int>> rows = {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
  std::set<std::vector<int>> span;
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<int> v(3, 0);
    for (int i = 0; i < 3; ++i)
      if (mask & (1 << i))
        for (int j = 0; j < 3; ++j) v[j] ^= rows[i][j];
    span.insert(v);
  }
  std::size_t expected_rank = 0;
  while ((std::size_t{1} << expected_rank) < span.size()) ++expected_rank;
  CHECK(expected_rank == 2);  // frozen from the oracle
  auto [b3, r3] = echelonize(matrix_from(3, 3, f2, {1, 1, 0, 0, 1, 1, 1, 0, 1}), f2);
  CHECK(r3 == expected_rank);
}

TEST_CASE("echelonize is idempotent") {
  const FieldSpec f3 = FieldSpec::prime(3);
  auto [b, r] = echelonize(matrix_from(3, 4, f3, {1, 2, 0, 1, 2, 1, 1, 0, 0, 0, 2, 2}), f3);
  DenseMatrix again(b.rows.size(), 4);
  for (std::size_t i = 0; i < b.rows.size(); ++i)
    for (std::size_t j = 0; j < 4; ++j) again.at(i, j) = b.rows[i][j];
  auto [b2, r2] = echelonize(again, f3);
  CHECK(r2 == r);
  CHECK(b2.pivots == b.pivots);
  for (std::size_t i = 0; i < b.rows.size(); ++i) CHECK(b2.rows[i] == b.rows[i]);
}

TEST_CASE("rank agrees with the minor-expansion oracle") {
  // exhaustive over F_2 up to 4x4 and F_3 up to 3x3; fixed-seed sample of
  // 4x4 over F_3
  for (std::size_t n = 1; n <= 4; ++n) {
    const FieldSpec f2 = FieldSpec::prime(2);
    const std::size_t cells = n * n;
    if (n <= 3 || true) {
      const std::uint64_t total = std::uint64_t{1} << cells;
      for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<std::uint64_t> m(cells);
        std::vector<long> vals(cells);
        for (std::size_t i = 0; i < cells; ++i) {
          m[i] = (mask >> i) & 1;
          vals[i] = static_cast<long>(m[i]);
        }
        auto [b, r] = echelonize(matrix_from(n, n, f2, vals), f2);
        REQUIRE(r == rank_by_minors(m, n, 2));
      }
    }
  }
  for (std::size_t n = 1; n <= 3; ++n) {
    const FieldSpec f3 = FieldSpec::prime(3);
    const std::size_t cells = n * n;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < cells; ++i) total *= 3;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<std::uint64_t> m(cells);
      std::vector<long> vals(cells);
      std::uint64_t rest = code;
      for (std::size_t i = 0; i < cells; ++i) {
        m[i] = rest % 3;
        rest /= 3;
        vals[i] = static_cast<long>(m[i]);
      }
      auto [b, r] = echelonize(matrix_from(n, n, f3, vals), f3);
      REQUIRE(r == rank_by_minors(m, n, 3));
    }
  }
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 2000; ++trial) {
    const FieldSpec f3 = FieldSpec::prime(3);
    std::vector<std::uint64_t> m(16);
    std::vector<long> vals(16);
    for (std::size_t i = 0; i < 16; ++i) {
      m[i] = rng() % 3;
      vals[i] = static_cast<long>(m[i]);
    }
    auto [b, r] = echelonize(matrix_from(4, 4, f3, vals), f3);
    REQUIRE(r == rank_by_minors(m, 4, 3));
  }
}

TEST_CASE("nullspace: trivial kernels and the l=3 orbit relation") {
  const FieldSpec f3 = FieldSpec::prime(3);
  CHECK(nullspace(matrix_from(2, 2, f3, {1, 0, 0, 1}), f3).dim() == 0);

  const FieldSpec f2 = FieldSpec::prime(2);
  SubspaceBasis b = nullspace(matrix_from(1, 2, f2, {1, 1}), f2);
  REQUIRE(b.dim() == 1);
  CHECK(b.rows[0] == std::vector<Scalar>{Scalar::residue(1), Scalar::residue(1)});

  // monomials {1, T21, T31, T21*T31, T41} evaluated on the four points of
  // the l=3 shift orbit; oracle: evaluate binomial coefficients at k = 0..3
  auto c = [](long k, unsigned long i) -> long {
    Int b = binomial(Int(k), i);
    return mpz_odd_p(b.get_mpz_t()) ? 1 : 0;
  };
  DenseMatrix ev(4, 5);
  for (long k = 0; k < 4; ++k) {
    const long c1 = c(k, 1);
    const long c2 = c(k, 2);
    const long c3 = c(k, 3);
    ev.at(static_cast<std::size_t>(k), 0) = scalar_from_int(f2, 1);
    ev.at(static_cast<std::size_t>(k), 1) = scalar_from_int(f2, c1);
    ev.at(static_cast<std::size_t>(k), 2) = scalar_from_int(f2, c2);
    ev.at(static_cast<std::size_t>(k), 3) = scalar_from_int(f2, c1 * c2);
    ev.at(static_cast<std::size_t>(k), 4) = scalar_from_int(f2, c3);
  }
  SubspaceBasis nb = nullspace(ev, f2);
  REQUIRE(nb.dim() == 1);
  // the relation involves more than one coordinate (T41 = T21*T31)
  std::size_t nonzeros = 0;
  for (const Scalar& s : nb.rows[0])
    if (s.as_residue()) ++nonzeros;
  CHECK(nonzeros == 2);
  CHECK(nb.rows[0][3].as_residue() == 1);
  CHECK(nb.rows[0][4].as_residue() == 1);
}

TEST_CASE("subspace_contains") {
  const FieldSpec q = FieldSpec::rationals();
  auto [b, r] = echelonize(matrix_from(2, 2, q, {1, 0, 0, 1}), q);
  auto zero = subspace_contains(b, {Scalar::rational(Rat(0)), Scalar::rational(Rat(0))});
  REQUIRE(zero.has_value());
  CHECK((*zero)[0] == Scalar::rational(Rat(0)));

  auto coords = subspace_contains(b, {Scalar::rational(make_rat(3, 2)), Scalar::rational(Rat(-7))});
  REQUIRE(coords.has_value());
  CHECK((*coords)[0] == Scalar::rational(make_rat(3, 2)));
  CHECK((*coords)[1] == Scalar::rational(Rat(-7)));

  // J^2 of F_2[Z/4] on the basis {1,t,t^2,t^3}: spanned by (t-1)^2 t^j;
  // (t-1)^3 = t^3+t^2+t+1 must lie inside
  const FieldSpec f2 = FieldSpec::prime(2);
  auto [j2, rj] = echelonize(matrix_from(2, 4, f2, {1, 0, 1, 0, 0, 1, 0, 1}), f2);
  auto in = subspace_contains(j2, {Scalar::residue(1), Scalar::residue(1), Scalar::residue(1),
                                   Scalar::residue(1)});
  REQUIRE(in.has_value());
  // coordinates reconstruct the vector exactly
  std::vector<Scalar> recon(4, scalar_zero(f2));
  for (std::size_t i = 0; i < j2.rows.size(); ++i)
    for (std::size_t k = 0; k < 4; ++k)
      recon[k] = scalar_add(f2, recon[k], scalar_mul(f2, (*in)[i], j2.rows[i][k]));
  CHECK(recon == std::vector<Scalar>(4, Scalar::residue(1)));

  CHECK_THROWS_AS(subspace_contains(j2, {Scalar::residue(1)}), DimensionMismatch);
}

TEST_CASE("field mismatch is rejected") {
  const FieldSpec f2 = FieldSpec::prime(2);
  DenseMatrix m(1, 1);
  m.at(0, 0) = Scalar::rational(Rat(1));
  CHECK_THROWS_AS(echelonize(m, f2), FieldMismatch);
  DenseMatrix m2(1, 1);
  m2.at(0, 0) = Scalar::residue(5);  // not a canonical residue mod 2
  CHECK_THROWS_AS(echelonize(m2, f2), FieldMismatch);
}

TEST_CASE("scalar arithmetic: reciprocals and Fermat") {
  const FieldSpec q = FieldSpec::rationals();
  for (long a = -6; a <= 6; ++a)
    for (long b = 1; b <= 6; ++b) {
      if (a == 0) continue;
      Scalar x = Scalar::rational(make_rat(a, b));
      CHECK(scalar_mul(q, x, scalar_inv(q, x)) == scalar_one(q));
    }
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    const FieldSpec f = FieldSpec::prime(p);
    for (std::uint64_t x = 0; x < p; ++x) {
      Scalar s = Scalar::residue(x);
      Scalar acc = s;
      for (std::uint64_t i = 1; i < p; ++i) acc = scalar_mul(f, acc, s);
      CHECK(acc == s);  // x^p = x
    }
  }
}

TEST_CASE("truncated polynomial multiplication") {
  RationalPolynomial one_plus_t(1);
  one_plus_t.add_term({0, 0}, Rat(1));
  one_plus_t.add_term({1, 0}, Rat(1));

  RationalPolynomial p1 = truncated_poly_multiply(one_plus_t, one_plus_t, 1);
  CHECK(p1.coeff({0, 0}) == Rat(1));
  CHECK(p1.coeff({1, 0}) == Rat(2));
  CHECK(p1.coeff({2, 0}) == Rat(0));

  RationalPolynomial sq = truncated_poly_multiply(one_plus_t, one_plus_t, 4);
  RationalPolynomial p4 = truncated_poly_multiply(sq, sq, 4);
  CHECK(p4.coeff({0, 0}) == Rat(1));
  CHECK(p4.coeff({1, 0}) == Rat(4));
  CHECK(p4.coeff({2, 0}) == Rat(6));
  CHECK(p4.coeff({3, 0}) == Rat(4));
  CHECK(p4.coeff({4, 0}) == Rat(1));

  // c_2(a) * c_2(b) as a bivariate product: coefficient 1/4 on a^2 b^2
  RationalPolynomial c2a(2), c2b(2);
  c2a.add_term({2, 0}, make_rat(1, 2));
  c2a.add_term({1, 0}, make_rat(-1, 2));
  c2b.add_term({0, 2}, make_rat(1, 2));
  c2b.add_term({0, 1}, make_rat(-1, 2));
  RationalPolynomial prod = truncated_poly_multiply(c2a, c2b, 4);
  CHECK(prod.coeff({2, 2}) == make_rat(1, 4));
  CHECK(prod.coeff({1, 1}) == make_rat(1, 4));
  CHECK(prod.coeff({2, 1}) == make_rat(-1, 4));
}

TEST_CASE("nullspace dimension formula") {
  // dim null = cols - rank on a fixed-seed sample over F_5
  const FieldSpec f5 = FieldSpec::prime(5);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 6;
    std::vector<long> vals(rows * cols);
    for (auto& v : vals) v = static_cast<long>(rng() % 5);
    DenseMatrix m = matrix_from(rows, cols, f5, vals);
    auto [b, r] = echelonize(m, f5);
    SubspaceBasis ns = nullspace(m, f5);
    REQUIRE(ns.dim() == cols - r);
    // every basis vector is killed by every row
    for (const auto& v : ns.rows) {
      for (std::size_t i = 0; i < rows; ++i) {
        Scalar acc = scalar_zero(f5);
        for (std::size_t j = 0; j < cols; ++j)
          acc = scalar_add(f5, acc, scalar_mul(f5, m.at(i, j), v[j]));
        REQUIRE(scalar_is_zero(f5, acc));
      }
    }
  }
}
