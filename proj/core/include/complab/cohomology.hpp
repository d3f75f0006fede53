#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "complab/group.hpp"
#include "complab/hom.hpp"
#include "complab/linalg.hpp"

namespace complab {

// Group cohomology H^n(G, F_p), n <= 2, trivial coefficients, via the
// normalized bar resolution (cochains on tuples of non-identity elements,
// lexicographic in canonical element encodings).
class BarCohomology {
 public:
  using Row = SparseEchelon<PrimeField>::Row;

  BarCohomology(Subgroup g, std::uint64_t p, unsigned degree, std::uint64_t cap = 1u << 25);

  unsigned degree() const { return degree_; }
  std::uint64_t p() const { return p_; }
  std::size_t dimension() const { return dim_; }
  const Subgroup& group() const { return g_; }

  std::size_t cochain_dim(unsigned n) const;  // (|G|-1)^n
  // representative cocycles in echelon coordinates over the tuple basis
  const std::vector<Row>& representatives() const { return reps_.rows(); }

  std::size_t tuple_count() const { return nonid_.size(); }
  const std::vector<Elem>& nonidentity() const { return nonid_; }
  std::size_t elem_index(const Elem& e) const;  // index into nonidentity(), throws for identity

  // evaluate a (sparse) cochain at a tuple index
  // reduce a cocycle modulo coboundaries and express it in the
  // representative basis; empty when it is not a cocycle combination
  std::optional<VecT<PrimeField>> class_coordinates(Row cocycle) const;

  // is the vector a cocycle (d f = 0)?
  bool is_cocycle(const Row& f) const;

 private:
  Row differential_of_basis(unsigned n, std::size_t tuple_index) const;
  void build();

  Subgroup g_;
  std::uint64_t p_;
  unsigned degree_;
  std::vector<Elem> nonid_;
  std::unordered_map<Elem, std::uint32_t> index_;
  SparseEchelon<PrimeField> coboundaries_;  // im d^{n-1} in C^n
  SparseEchelon<PrimeField> reps_;          // kernel representatives reduced mod coboundaries
  std::size_t dim_ = 0;
};

// H^n(Z/m, F_p) from the 2-periodic resolution: 1, e, e, ... with e = [p | m]
std::size_t periodic_cyclic_oracle(std::uint64_t m, std::uint64_t p, unsigned degree);

// pullback along a surjection pi: G' ->> G, on cohomology classes
struct InflationMap {
  DenseMatrix matrix;  // rows: H^n(G') coords, cols: images of H^n(G) representatives
  std::size_t rank = 0;
  std::size_t domain_dim = 0;
  std::size_t codomain_dim = 0;
};
InflationMap inflation_map(const BarCohomology& source, const BarCohomology& target,
                           const GroupHom& projection);

struct TowerReport {
  unsigned degree = 0;
  std::uint64_t p = 2;
  std::vector<std::size_t> level_dims;
  std::vector<std::size_t> step_ranks;       // inflation H(L_j) -> H(L_{j+1})
  std::vector<std::size_t> composite_ranks;  // H(L_1) -> H(L_j)
  std::optional<std::size_t> colimit_dim;
  bool stabilized = false;
  std::string notes;
};

// maps[j] is the surjection levels[j+1] ->> levels[j]; the report composes
// inflations up the tower and reads the colimit dimension off the first two
// agreeing composite ranks.
TowerReport tower_continuous_cohomology(const std::vector<GroupPtr>& levels,
                                        const std::vector<GroupHom>& maps, std::uint64_t p,
                                        unsigned degree, std::uint64_t cap);

struct Lemma51Verdict {
  bool h1_isomorphism = false;  // colim H^1 == discrete H^1
  bool h2_injective = false;    // colim H^2 <= discrete H^2
  bool consistent() const { return h1_isomorphism && h2_injective; }
};
Lemma51Verdict lemma51_consistency(const TowerReport& degree1, const TowerReport& degree2,
                                   std::size_t discrete_h1, std::size_t discrete_h2);

}  // namespace complab
