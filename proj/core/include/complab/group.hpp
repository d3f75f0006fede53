#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "complab/group_spec.hpp"
#include "complab/ring.hpp"

namespace complab {

// Canonical element encoding: an injective octet sequence of fixed length
// per group (cyclic: big-endian residue; product: concatenation; matrix:
// row-major entries, poly coefficients low-degree-first). Sorting encodings
// lexicographically is the canonical element order.
using Elem = std::string;

inline constexpr std::uint64_t kDefaultEnumerationCap = 2'000'000;
// COMPLETION_LAB_MAX_ELEMENTS overrides the default enumeration cap.
std::uint64_t default_enumeration_cap();

class FiniteGroup {
 public:
  virtual ~FiniteGroup() = default;

  const std::string& name() const { return name_; }
  const Elem& identity() const { return identity_; }
  const std::vector<Elem>& generators() const { return generators_; }
  std::size_t encoded_size() const { return identity_.size(); }

  virtual Elem multiply(const Elem& a, const Elem& b) const = 0;
  virtual Elem invert(const Elem& a) const = 0;
  virtual const GroupSpec* spec() const { return nullptr; }

  // Groups whose element set is scanned from a parameter space rather than
  // closed from generators (congruence kernels) provide this.
  virtual std::optional<std::vector<Elem>> direct_enumeration(std::uint64_t /*cap*/) const {
    return std::nullopt;
  }

  Elem power(const Elem& x, std::uint64_t e) const;
  std::uint64_t element_order(const Elem& x, std::uint64_t cap = kDefaultEnumerationCap) const;

 protected:
  std::string name_;
  Elem identity_;
  std::vector<Elem> generators_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Default generators follow the spec kind: cyclic 1; product componentwise;
// sl: elementary matrices; congruence_kernel: I + pi*e_ij and unit diagonal
// pairs; unitriangular: superdiagonal elementaries.
GroupPtr construct_group(const GroupSpec& spec);

// An enumerated subgroup: parent handle, canonically sorted element set and
// the generator list used. Construction certifies closure (all pairs
// x*y^{-1} when |set| <= 4096, a fixed-seed 1e5-pair sample above that).
class Subgroup {
 public:
  static Subgroup closure(GroupPtr parent, std::vector<Elem> gens, std::uint64_t cap);
  // Whole group: direct enumeration when the group supports it (with the
  // generator list extended deterministically if it under-generates),
  // otherwise breadth-first closure of the default generators.
  static Subgroup whole_group(GroupPtr g, std::uint64_t cap);
  static Subgroup from_elements(GroupPtr parent, std::vector<Elem> elements, std::vector<Elem> gens);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<Elem>& elements() const { return elements_; }
  const std::vector<Elem>& generators() const { return generators_; }
  std::uint64_t order() const { return elements_.size(); }
  bool trivial() const { return elements_.size() == 1; }
  bool contains(const Elem& x) const;
  bool contains_all(const Subgroup& other) const;
  bool same_set(const Subgroup& other) const { return elements_ == other.elements_; }

 private:
  Subgroup(GroupPtr parent, std::vector<Elem> elements, std::vector<Elem> gens);
  void certify_closed() const;
  GroupPtr parent_;
  std::vector<Elem> elements_;
  std::vector<Elem> generators_;
};

// Breadth-first closure from generators: FIFO, children in generator-list
// order, result re-sorted canonically. Throws EnumerationLimit past cap.
std::vector<Elem> bfs_closure(const FiniteGroup& g, const std::vector<Elem>& gens,
                              std::uint64_t cap);

// Same closure, but also records how each element is reached; used to push
// generator images through surjections.
struct WordTable {
  std::vector<Elem> elements;  // BFS discovery order (not sorted)
  std::unordered_map<Elem, std::pair<Elem, std::size_t>> parent;  // elem -> (previous, generator index)
  std::vector<std::size_t> word_of(const Elem& x, const Elem& identity) const;
};
WordTable bfs_words(const FiniteGroup& g, const std::vector<Elem>& gens, std::uint64_t cap);

// enumerate_elements from the spec: the whole group as a Subgroup.
Subgroup enumerate_elements(GroupPtr g, std::uint64_t cap);
Subgroup subgroup_generated(GroupPtr g, std::vector<Elem> gens, std::uint64_t cap);

// Concrete implementations.

class CyclicGroup final : public FiniteGroup {
 public:
  explicit CyclicGroup(GroupSpec spec);
  Elem multiply(const Elem& a, const Elem& b) const override;
  Elem invert(const Elem& a) const override;
  const GroupSpec* spec() const override { return &spec_; }

  std::uint64_t decode(const Elem& e) const;
  Elem encode(std::uint64_t r) const;
  std::uint64_t modulus() const { return spec_.n; }

 private:
  GroupSpec spec_;
  std::uint32_t width_;
};

class ProductGroup final : public FiniteGroup {
 public:
  ProductGroup(GroupSpec spec, std::vector<GroupPtr> factors);
  Elem multiply(const Elem& a, const Elem& b) const override;
  Elem invert(const Elem& a) const override;
  const GroupSpec* spec() const override { return &spec_; }

  const std::vector<GroupPtr>& factors() const { return factors_; }
  std::vector<Elem> split(const Elem& e) const;
  Elem join(const std::vector<Elem>& parts) const;

 private:
  GroupSpec spec_;
  std::vector<GroupPtr> factors_;
  std::vector<std::size_t> widths_;
};

class MatrixGroup final : public FiniteGroup {
 public:
  explicit MatrixGroup(GroupSpec spec);
  Elem multiply(const Elem& a, const Elem& b) const override;
  Elem invert(const Elem& a) const override;
  const GroupSpec* spec() const override { return &spec_; }
  std::optional<std::vector<Elem>> direct_enumeration(std::uint64_t cap) const override;

  const MatrixOps& ops() const { return ops_; }
  Elem encode(const std::uint64_t* m) const;
  void decode(const Elem& e, std::uint64_t* m) const;

 private:
  GroupSpec spec_;
  MatrixOps ops_;
};

// Quotient by a certified-normal subgroup; elements are the minimum member
// encodings of the cosets.
class QuotientGroup final : public FiniteGroup {
 public:
  QuotientGroup(Subgroup numerator, Subgroup denominator);
  Elem multiply(const Elem& a, const Elem& b) const override;
  Elem invert(const Elem& a) const override;

  const std::vector<Elem>& coset_reps() const { return reps_; }
  const Elem& coset_of(const Elem& parent_elem) const;

 private:
  GroupPtr base_;  // the numerator's parent, used for arithmetic
  std::vector<Elem> reps_;
  std::unordered_map<Elem, Elem> to_rep_;
};

// quotient_group from the spec; certifies normality by conjugating all of n
// by g's generators.
GroupPtr quotient_group(const Subgroup& g, const Subgroup& n, std::uint64_t cap);

}  // namespace complab
