#pragma once

#include <map>
#include <memory>

#include "complab/group_algebra.hpp"
#include "complab/group_ops.hpp"

namespace complab {

using FpAlgebra = GroupAlgebra<PrimeField>;
using FpVec = VecT<PrimeField>;
using FpQuotient = QuotientAlgebra<PrimeField>;
using FpFiltration = JFiltration<PrimeField>;

// B_l = (kG ⊗ kG)/D^{l+1}, D = J⊗kG + kG⊗J = ker(ε⊗ε), for the grouplike
// test Δ_l(x) = x⊗x. The tensor-square algebra is the group algebra of
// G x G; with equal-width canonical encodings the sorted product basis is
// exactly i-major order, so the index of g_i ⊗ g_j is i*dim + j.
class CoproductSystem {
 public:
  CoproductSystem(std::shared_ptr<const FpAlgebra> a, std::size_t max_l, std::uint64_t cap);

  std::size_t max_level() const { return max_l_; }
  const FpAlgebra& square_algebra() const { return *gg_; }

  // Δ_l(x) and x⊗x in B_l coordinates, from A_l coordinates
  FpVec delta(const FpQuotient& al, const FpVec& x) const;
  FpVec tensor_square(const FpQuotient& al, const FpVec& x) const;
  bool is_grouplike(const FpQuotient& al, const FpVec& x) const;

  const FpQuotient& b_level(std::size_t l) const;

  // Δ(J^{l+1}-basis) ⊆ D^{l+1}
  void certify_well_defined(const FpQuotient& al) const;
  // Δ_l(x·y) = Δ_l(x)·Δ_l(y) on a fixed-seed sample of pairs
  void certify_delta_multiplicative(const FpQuotient& al, int samples = 1000) const;

 private:
  FpVec ambient_delta(const FpVec& lifted) const;
  FpVec ambient_tensor(const FpVec& lifted) const;

  std::shared_ptr<const FpAlgebra> a_;
  std::shared_ptr<const FpAlgebra> gg_;
  GroupPtr gg_group_;
  JFiltration<PrimeField> dfilt_;
  std::vector<std::uint32_t> diag_index_;
  std::size_t max_l_;
  mutable std::map<std::size_t, FpQuotient> b_cache_;
};

// The units of A_l reached by the group, presented as a FiniteGroup so the
// whole subgroup/series/fingerprint machinery applies. Elements are the
// fixed-width encodings of their coefficient vectors.
class UnitGroup final : public FiniteGroup {
 public:
  UnitGroup(std::shared_ptr<const FpQuotient> alg, std::vector<FpVec> generator_vectors,
            std::string name);
  Elem multiply(const Elem& a, const Elem& b) const override;
  Elem invert(const Elem& a) const override;

  const FpQuotient& algebra() const { return *alg_; }
  Elem encode_vec(const FpVec& v) const;
  FpVec decode_vec(const Elem& e) const;

 private:
  std::shared_ptr<const FpQuotient> alg_;
  std::uint32_t width_;
};

struct CompletionLevelInfo {
  std::size_t level = 0;
  std::uint64_t order = 1;
  bool abelian = true;
  std::vector<std::uint64_t> invariants;  // abelian invariants when abelian
  bool transition_surjective = false;     // P_{l+1} -> P_l
  bool transition_bijective = false;
};

struct GradedCompareRow {
  std::size_t index = 0;
  std::uint64_t p_graded_order = 1;  // |P^i / P^{i+1}|
  std::uint64_t j_graded_order = 1;  // p^{dim J^i/J^{i+1}}
  bool match = false;
};

struct CompletionProfile {
  std::string field;
  std::vector<std::size_t> j_dims;
  std::optional<std::size_t> j_stable_index;
  std::vector<CompletionLevelInfo> levels;
  std::optional<std::size_t> stable_level;
  std::optional<GroupFingerprint> stable_fingerprint;
  std::vector<GradedCompareRow> graded;
  std::string notes;
};

// Prime-field completion driver with cached quotients, coproduct levels and
// unit images.
class CompletionContext {
 public:
  CompletionContext(GroupPtr g, std::uint64_t p, std::uint64_t cap);

  std::uint64_t p() const { return p_; }
  const FpAlgebra& algebra() const { return *a_; }
  std::shared_ptr<const FpAlgebra> algebra_ptr() const { return a_; }
  const FpFiltration& filtration() const { return jf_; }
  std::size_t stable_index() const;  // filtration stable index (always found)

  std::shared_ptr<const FpQuotient> level(std::size_t l);
  CoproductSystem& coproduct();

  bool is_grouplike(std::size_t l, const FpVec& x);
  // image of G in the units of A_l, every element certified grouplike
  const Subgroup& unit_image(std::size_t l);
  std::shared_ptr<const UnitGroup> unit_group(std::size_t l);
  // exhaustive scan of {x in A_l : eps(x) = 1}
  std::vector<FpVec> grouplike_bruteforce(std::size_t l);

  std::size_t h1_dimension() const;  // dim J/J^2
  CompletionProfile profile(std::size_t max_l);

 private:
  GroupPtr g_;
  std::uint64_t p_;
  std::uint64_t cap_;
  std::shared_ptr<const FpAlgebra> a_;
  FpFiltration jf_;
  std::map<std::size_t, std::shared_ptr<const FpQuotient>> levels_;
  std::map<std::size_t, std::shared_ptr<const UnitGroup>> unit_groups_;
  std::map<std::size_t, Subgroup> unit_images_;
  std::unique_ptr<CoproductSystem> coproduct_;
};

// spec-facing wrappers
std::size_t h1_dimension(const FpFiltration& jf);
std::size_t h1_dimension(const JFiltration<RationalField>& jf);

struct H1Comparison {
  std::size_t h1_group = 0;
  std::size_t h1_pl = 0;
  bool equal = false;
};
H1Comparison h1_group_vs_pl(GroupPtr g, std::uint64_t p, std::size_t l, std::uint64_t cap);

struct FpVsPComparison {
  GroupFingerprint group_side;       // G / (p-lower-central stable term)
  GroupFingerprint completion_side;  // stable P from the profile
  bool match = false;
  std::vector<std::uint64_t> plcs_orders;
};
FpVsPComparison fp_vs_pcompletion(GroupPtr g, std::uint64_t p, std::uint64_t cap);

// char-0 profiles exist in closed form for abelian groups only: the
// completion of a finite group over Q is trivial.
CompletionProfile rational_completion_profile(GroupPtr g, std::uint64_t cap);

}  // namespace complab
