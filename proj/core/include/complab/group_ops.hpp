#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "complab/group.hpp"

namespace complab {

// [a, b]: generated by {[x, s] : x over all of a, s over b's generators},
// then closed to a fixpoint under commutation with and conjugation by b's
// generators.
Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b, std::uint64_t cap);

enum class CompareFlag { EQUAL, PROPER_SUBGROUP, INCOMPARABLE };
std::string to_string(CompareFlag f);

struct SeriesStep {
  std::uint64_t graded_order = 1;                 // |term_i / term_{i+1}|
  std::optional<std::uint32_t> elementary_rank;   // set when the graded quotient is elementary abelian
  bool not_elementary = false;
};

struct SeriesReport {
  std::string kind;  // "lcs" | "plcs" | "congruence" | "truncated-sl"
  std::vector<std::uint64_t> orders;              // term orders, G first
  std::vector<SeriesStep> steps;                  // per consecutive pair
  // congruence / truncated-sl reports: the reference filtration K^i and
  // per-level comparison of the lower central series against it
  std::vector<std::uint64_t> reference_orders;
  std::vector<CompareFlag> level_flags;
  std::string notes;
};

// Terms descend until trivial, or until stable (the repeated stable term is
// shown once when it is nontrivial).
SeriesReport lower_central_series(const Subgroup& g, std::uint64_t cap);
SeriesReport p_lower_central_series(const Subgroup& g, std::uint64_t p, std::uint64_t cap);
// the series terms themselves (same termination rule)
std::vector<Subgroup> lower_central_series_terms(const Subgroup& g, std::uint64_t cap);
std::vector<Subgroup> p_lower_central_series_terms(const Subgroup& g, std::uint64_t p,
                                                   std::uint64_t cap);

Subgroup center(const Subgroup& g, std::uint64_t cap);

// Invariant factors as a multiset of prime powers, primes ascending and
// exponents ascending within each prime; computed from the rank sequence of
// the p-th power subgroups.
std::vector<std::uint64_t> abelian_invariants(const Subgroup& a, std::uint64_t cap);

std::uint64_t subgroup_exponent(const Subgroup& a, std::uint64_t cap);
bool is_abelian(const Subgroup& a);
// elementary abelian p-group rank; empty when not elementary abelian
std::optional<std::uint32_t> elementary_abelian_rank(const Subgroup& a, std::uint64_t cap);

struct GroupFingerprint {
  std::uint64_t order = 1;
  std::uint64_t exponent = 1;
  std::vector<std::uint64_t> abelianization;  // invariant factors of G/[G,G]
  std::uint32_t derived_length = 0;

  friend bool operator==(const GroupFingerprint&, const GroupFingerprint&) = default;
  std::string str() const;
};

GroupFingerprint fingerprint(const Subgroup& g, std::uint64_t cap);

// Both the congruence filtration K^i (kernels of reduction at ideal powers)
// and the lower central series of K^1, with per-level equality flags.
// Identifying the arithmetic congruence quotients with these finite kernels
// is a strong-approximation assumption recorded in the notes field.
SeriesReport congruence_filtration_report(std::uint64_t n, std::uint64_t p, std::uint32_t m,
                                          std::uint64_t cap);
SeriesReport truncated_sl_filtration_report(std::uint64_t n, std::uint64_t p, std::uint32_t l,
                                            std::uint64_t cap);

}  // namespace complab
