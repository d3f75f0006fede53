#include "complab/group_algebra.hpp"

#include <random>

namespace complab {

namespace {

template <scalar_field F>
void spot_check_associativity(const QuotientAlgebra<F>& q) {
  const F& f = q.ambient().field();
  const std::size_t d = q.dim();
  auto basis_vec = [&](std::size_t i) {
    VecT<F> v(d, f.zero());
    v[i] = f.one();
    return v;
  };
  auto check = [&](std::size_t i, std::size_t j, std::size_t k) {
    const VecT<F> ij = q.multiply(basis_vec(i), basis_vec(j));
    const VecT<F> jk = q.multiply(basis_vec(j), basis_vec(k));
    if (!q.equal(q.multiply(ij, basis_vec(k)), q.multiply(basis_vec(i), jk)))
      throw Error("quotient algebra associativity check failed");
  };
  if (d <= 16) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) check(i, j, k);
  } else {
    std::mt19937_64 rng(0x61736f63ull);
    for (int t = 0; t < 10000; ++t) check(rng() % d, rng() % d, rng() % d);
  }
}

}  // namespace

template <scalar_field F>
QuotientAlgebra<F> quotient_algebra(std::shared_ptr<const GroupAlgebra<F>> a,
                                    const JFiltration<F>& jf, std::size_t level) {
  if (!jf.stable_index && level + 1 > jf.computed())
    throw LevelOutOfRange("quotient level exceeds the computed filtration range");
  QuotientAlgebra<F> q(std::move(a), jf, level);
  if (q.dim() > 512) throw DimensionLimit("quotient algebra structure constants capped at dim 512");
  spot_check_associativity(q);
  return q;
}

template <scalar_field F>
DenseMatrix left_multiplication_matrix(const QuotientAlgebra<F>& q, const VecT<F>& x) {
  const F& f = q.ambient().field();
  const std::size_t d = q.dim();
  DenseMatrix m(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    VecT<F> e(d, f.zero());
    e[j] = f.one();
    VecT<F> col = q.multiply(x, e);
    for (std::size_t i = 0; i < d; ++i) {
      if constexpr (std::is_same_v<F, PrimeField>) {
        m.at(i, j) = Scalar::residue(col[i]);
      } else {
        m.at(i, j) = Scalar::rational(col[i]);
      }
    }
  }
  return m;
}

template class GroupAlgebra<PrimeField>;
template class GroupAlgebra<RationalField>;
template class QuotientAlgebra<PrimeField>;
template class QuotientAlgebra<RationalField>;
template JFiltration<PrimeField> j_power_filtration(const GroupAlgebra<PrimeField>&, std::size_t);
template JFiltration<RationalField> j_power_filtration(const GroupAlgebra<RationalField>&, std::size_t);
template JFiltration<PrimeField> j_filtration_by_generators(const GroupAlgebra<PrimeField>&,
                                                            std::size_t, const std::vector<Elem>&);
template QuotientAlgebra<PrimeField> quotient_algebra(std::shared_ptr<const GroupAlgebra<PrimeField>>,
                                                      const JFiltration<PrimeField>&, std::size_t);
template QuotientAlgebra<RationalField> quotient_algebra(
    std::shared_ptr<const GroupAlgebra<RationalField>>, const JFiltration<RationalField>&, std::size_t);
template DenseMatrix left_multiplication_matrix(const QuotientAlgebra<PrimeField>&,
                                                const VecT<PrimeField>&);

}  // namespace complab
