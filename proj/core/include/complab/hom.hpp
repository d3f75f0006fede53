#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "complab/group.hpp"
#include "complab/group_ops.hpp"

namespace complab {

// A homomorphism between constructed groups, applied element-by-element on
// canonical encodings.
class GroupHom {
 public:
  using Fn = std::function<Elem(const Elem&)>;

  GroupHom(GroupPtr dom, GroupPtr cod, Fn fn, std::string desc);

  const GroupPtr& dom() const { return dom_; }
  const GroupPtr& cod() const { return cod_; }
  const std::string& description() const { return desc_; }
  Elem apply(const Elem& x) const { return fn_(x); }

  // f(x*s) = f(x)*f(s) over all enumerated elements x and generators s
  // (full pairs when the domain is small); throws on failure.
  void certify_homomorphism(const Subgroup& dom_elems) const;
  // image size must equal |cod|; throws NotSurjective otherwise.
  void certify_surjective(const Subgroup& dom_elems, std::uint64_t cod_order) const;

 private:
  GroupPtr dom_;
  GroupPtr cod_;
  Fn fn_;
  std::string desc_;
};

// The canonical reduction between structurally related specs: cyclic(n) ->
// cyclic(d) for d | n, products componentwise, and entrywise ring reduction
// for matrix groups (zmod(m) -> zmod(m') for m' | m, poly truncation,
// poly_trunc(p, l) -> zmod(p) by constant term). Throws SpecError when no
// canonical map exists.
GroupHom canonical_reduction(GroupPtr dom, GroupPtr cod);

// Surjection determined by images of the domain's generator list; elements
// are mapped along their breadth-first words.
GroupHom hom_from_generator_images(GroupPtr dom, GroupPtr cod, std::vector<Elem> images,
                                   std::uint64_t cap);

GroupHom quotient_projection(GroupPtr quotient, GroupPtr parent_of_numerator);

// ---------------------------------------------------------------------------
// section search (does a surjection split?)

struct SectionSearchResult {
  enum class Verdict { FOUND, NONE, INCONCLUSIVE };
  Verdict verdict = Verdict::INCONCLUSIVE;
  std::vector<Elem> images;  // accepted lifts, when FOUND
  std::string reason;        // cap description, when INCONCLUSIVE
  std::uint64_t tuples_tried = 0;
};
std::string to_string(SectionSearchResult::Verdict v);

struct SectionSearchCaps {
  std::uint64_t tuple_cap = std::uint64_t{1} << 22;
  std::uint64_t fiber_cap = kDefaultEnumerationCap;
  std::uint64_t domain_cap = kDefaultEnumerationCap;
};

// Exhaustive search over lift tuples of q_gens; a tuple is accepted iff the
// generated subgroup H has |H| = |Q| and meets ker q trivially. q_gens must
// generate Q.
SectionSearchResult find_section(const Subgroup& g, const GroupHom& q,
                                 const std::vector<Elem>& q_gens, const SectionSearchCaps& caps);

// The default generator tuple for section searches: the first two canonical
// generators when they already generate Q; for sl groups, the standard
// generating pair (elementary + signed cycle).
std::vector<Elem> default_section_generators(const Subgroup& q_elems, std::uint64_t cap);

// ---------------------------------------------------------------------------
// nonsplit certificates for elementary abelian quotients

struct ObstructionResult {
  enum class Verdict { NONSPLIT_CERTIFIED, INCONCLUSIVE };
  Verdict verdict = Verdict::INCONCLUSIVE;
  std::optional<Elem> witness_coset;  // image element whose fiber has no element of order <= p
  std::uint64_t cosets_without_low_order = 0;
};
std::string to_string(ObstructionResult::Verdict v);

// Counts fibers containing an element of order <= p; if some fiber has
// none, a splitting is impossible. Requires the image to be an elementary
// abelian p-group.
ObstructionResult elementary_complement_obstruction(const Subgroup& g, const GroupHom& q,
                                                    std::uint64_t cap);

}  // namespace complab
