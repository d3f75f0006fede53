#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "complab/linalg.hpp"
#include "complab/poly.hpp"

namespace complab {

// c_i: the coefficient of T^i in (1+T)^alpha, as an exact polynomial in
// alpha of degree i.
struct BinomialPolynomial {
  unsigned index = 0;
  RationalPolynomial poly{1};
};
BinomialPolynomial binomial_poly(unsigned i);

// degreewise grouplike identity c_i(a+b) = sum_{r+s=i} c_r(a) c_s(b)
struct VandermondeReport {
  unsigned max_index = 0;
  std::vector<bool> holds;  // per i = 0..max_index
  bool all() const;
};
VandermondeReport vandermonde_check(unsigned l);

// the (l+1)x(l+1) lower triangular matrix of 1+T acting on k[[T]]/(T^{l+1})
// and its full power orbit over F_p
struct ShiftOrbit {
  std::uint64_t p = 2;
  unsigned l = 1;
  std::uint64_t order = 1;
  // orbit[k] = M^k, row-major (l+1)^2 residues, k = 0..order-1
  std::vector<std::vector<std::uint64_t>> orbit;

  std::uint64_t entry(std::size_t k, unsigned row, unsigned col) const {
    return orbit[k][row * (l + 1) + col];
  }
};
// certifies (M^k)_{r,c} = c_{r-c}(k) mod p across the whole orbit
ShiftOrbit shift_matrix_orbit(std::uint64_t p, unsigned l, std::uint64_t orbit_cap = 1u << 20);

struct OrderProfile {
  std::uint64_t p = 2;
  std::vector<std::uint64_t> orders;            // l = 1..l_max
  std::vector<std::uint64_t> closed_form;       // min{p^d >= l+1}
  std::vector<bool> closed_form_match;          // computed == closed form
  // the paper's band sentence assigns order p^d for l in [p^d, p^{d+1}-1];
  // computed orders disagree with that reading (off by one band), which the
  // flags record
  std::vector<std::uint64_t> band_sentence_value;
  std::vector<bool> band_sentence_match;
};
OrderProfile order_profile(std::uint64_t p, unsigned l_max);

struct LaurentTowerLevel {
  unsigned l = 1;
  std::uint64_t order = 1;   // |P_l|, cyclic
  bool transition_identity = false;  // P_{l+1} -> P_l (filled for l < l_max)
};
struct LaurentTower {
  std::uint64_t p = 2;
  std::vector<LaurentTowerLevel> levels;
  std::string stable_description;  // the pro-p limit this tower shadows
};
LaurentTower laurent_tower(std::uint64_t p, unsigned l_max);

struct GradedPvsJRow {
  unsigned index = 0;
  std::uint64_t minimal_exponent = 1;       // e_i: least k >= 1 with (1+T)^k = 1 mod T^i
  std::uint64_t p_graded_order = 1;         // e_{i+1} / e_i
  std::uint64_t j_graded_order = 1;         // p^{dim T^i/T^{i+1}} = p
  bool match = false;
};
// minimal-exponent search by direct truncated powering
std::vector<GradedPvsJRow> graded_p_vs_j(std::uint64_t p, unsigned l_max);

struct CharZeroReport {
  unsigned l = 2;
  bool confirmed = false;  // alpha = 0 is the only solution of M(alpha) = I mod T^2
};
CharZeroReport char_zero_injectivity(unsigned l);

// monomials of degree <= d in the coordinates T_ij (1-based), plus the
// constant; used for vanishing ideals of the orbit point set
struct Monomial {
  // degree 0: both factors absent; degree 1: first set; degree 2: both
  std::optional<std::pair<unsigned, unsigned>> a;
  std::optional<std::pair<unsigned, unsigned>> b;
  std::string str() const;
};

struct RelationBasis {
  std::uint64_t p = 2;
  unsigned l = 1;
  unsigned degree_bound = 1;
  std::uint64_t orbit_size = 0;
  std::vector<Monomial> monomials;
  SubspaceBasis relations;  // nullspace of the evaluation matrix, RREF rows

  // membership of an explicit polynomial, given as (monomial index, coeff)
  bool contains(const std::vector<std::pair<std::size_t, long>>& poly) const;
  std::optional<std::size_t> monomial_index(const Monomial& m) const;
};
RelationBasis vanishing_relations(std::uint64_t p, unsigned l, unsigned degree_bound);

// claim-by-claim audit of the displayed coordinate-ring generators for
// O(P_1)..O(P_4), p = 2
struct IdealGeneratorVerdict {
  std::string label;
  bool vanishes = false;
  std::optional<std::uint64_t> witness_k;
};
struct IdealAuditLevel {
  unsigned l = 1;
  std::uint64_t orbit_size = 0;
  std::size_t independent_linear_coordinates = 0;  // rank of the linear evaluations minus constants
  std::vector<IdealGeneratorVerdict> generators;
  bool all_vanish() const;
};
std::vector<IdealAuditLevel> paper_ideal_audit();

}  // namespace complab
