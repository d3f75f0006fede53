#pragma once

#include <memory>
#include <optional>
#include <unordered_map>

#include "complab/group.hpp"
#include "complab/linalg.hpp"

namespace complab {

// The group algebra kG on the canonical element basis, with multiplication
// through group multiplication on basis indices. A full index
// multiplication table is materialized for dim <= 512; larger algebras
// (the tensor-square algebras used by the coproduct) fall back to hashed
// index lookups and per-generator translation columns.
template <scalar_field F>
class GroupAlgebra {
 public:
  GroupAlgebra(Subgroup elems, F field) : elems_(std::move(elems)), f_(field) {
    const auto& basis = elems_.elements();
    index_.reserve(basis.size() * 2);
    for (std::uint32_t i = 0; i < basis.size(); ++i) index_.emplace(basis[i], i);
    identity_index_ = index_.at(elems_.parent()->identity());
    if (basis.size() <= 512) {
      const FiniteGroup& g = *elems_.parent();
      table_.resize(basis.size() * basis.size());
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
          table_[i * basis.size() + j] = index_.at(g.multiply(basis[i], basis[j]));
    }
  }

  std::size_t dim() const { return elems_.elements().size(); }
  const F& field() const { return f_; }
  const Subgroup& elements() const { return elems_; }
  const Elem& basis_elem(std::size_t i) const { return elems_.elements()[i]; }
  std::size_t identity_index() const { return identity_index_; }

  std::size_t index_of(const Elem& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) throw Error("element is not in the algebra basis");
    return it->second;
  }

  std::size_t mul_index(std::size_t i, std::size_t j) const {
    if (!table_.empty()) return table_[i * dim() + j];
    return index_of(elems_.parent()->multiply(basis_elem(i), basis_elem(j)));
  }

  VecT<F> zero() const { return VecT<F>(dim(), f_.zero()); }

  VecT<F> group_vector(const Elem& e) const {
    VecT<F> v = zero();
    v[index_of(e)] = f_.one();
    return v;
  }

  VecT<F> multiply(const VecT<F>& a, const VecT<F>& b) const {
    VecT<F> out = zero();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (f_.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (f_.is_zero(b[j])) continue;
        const std::size_t k = mul_index(i, j);
        out[k] = f_.add(out[k], f_.mul(a[i], b[j]));
      }
    }
    return out;
  }

  // column j of right translation: index of basis_i * g
  std::vector<std::uint32_t> translation_by(const Elem& g) const {
    std::vector<std::uint32_t> t(dim());
    const FiniteGroup& G = *elems_.parent();
    for (std::size_t i = 0; i < dim(); ++i)
      t[i] = static_cast<std::uint32_t>(index_of(G.multiply(basis_elem(i), g)));
    return t;
  }

  typename F::Elem augmentation(const VecT<F>& v) const {
    typename F::Elem s = f_.zero();
    for (const auto& x : v) s = f_.add(s, x);
    return s;
  }

 private:
  Subgroup elems_;
  F f_;
  std::unordered_map<Elem, std::uint32_t> index_;
  std::vector<std::uint32_t> table_;
  std::size_t identity_index_;
};

// build_group_algebra: enumerates g and materializes the algebra;
// DimensionLimit past 512 basis elements.
template <scalar_field F>
GroupAlgebra<F> build_group_algebra(GroupPtr g, F field, std::uint64_t cap) {
  Subgroup elems = Subgroup::whole_group(std::move(g), cap);
  if (elems.order() > 512) throw DimensionLimit("group algebra cap is 512 basis elements");
  return GroupAlgebra<F>(std::move(elems), field);
}

// The augmentation-power filtration J^0 (the whole algebra) down to the
// stable index N (least l with J^l = J^{l+1}), truncated at max_l.
template <scalar_field F>
struct JFiltration {
  std::vector<EchelonBasis<F>> levels;  // J^0, J^1, ..., last computed
  std::optional<std::size_t> stable_index;

  std::size_t computed() const { return levels.size() - 1; }
  const EchelonBasis<F>& level(std::size_t l) const {
    if (l < levels.size()) return levels[l];
    if (stable_index) return levels.back();
    throw LevelOutOfRange("J^" + std::to_string(l) + " was not computed");
  }
  std::size_t dim(std::size_t l) const { return level(l).rank(); }
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& e : levels) d.push_back(e.rank());
    return d;
  }
};

// J^1 = span{g - 1}; J^{l+1} = span{(basis of J^l) x (basis of J^1)},
// echelonized, stopping early at stability.
template <scalar_field F>
JFiltration<F> j_power_filtration(const GroupAlgebra<F>& a, std::size_t max_l) {
  const F& f = a.field();
  JFiltration<F> jf;
  EchelonBasis<F> j0(f, a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    VecT<F> v = a.zero();
    v[i] = f.one();
    j0.add_row(std::move(v));
  }
  jf.levels.push_back(std::move(j0));

  EchelonBasis<F> j1(f, a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (i == a.identity_index()) continue;
    VecT<F> v = a.zero();
    v[i] = f.one();
    v[a.identity_index()] = f.sub(f.zero(), f.one());
    j1.add_row(std::move(v));
  }
  if (max_l >= 1) jf.levels.push_back(j1);
  if (a.dim() == 1 || max_l == 0) {
    if (a.dim() == 1) jf.stable_index = 0;
    return jf;
  }
  if (jf.levels[1].rank() == jf.levels[0].rank()) {
    jf.stable_index = 0;  // cannot happen for a group algebra, but keep the rule
    return jf;
  }

  for (std::size_t l = 1; l < max_l; ++l) {
    const EchelonBasis<F>& prev = jf.levels.back();
    EchelonBasis<F> next(f, a.dim());
    for (const auto& u : prev.rows())
      for (const auto& w : j1.rows()) next.add_row(a.multiply(u, w));
    const bool stable = next.rank() == prev.rank();
    jf.levels.push_back(std::move(next));
    if (stable) {
      jf.stable_index = l;
      jf.levels.pop_back();  // J^{l+1} equals J^l; keep one copy
      break;
    }
  }
  if (!jf.stable_index && jf.levels.size() >= 2 &&
      jf.levels.back().rank() == jf.levels[jf.levels.size() - 2].rank())
    jf.stable_index = jf.levels.size() - 2;
  return jf;
}

// Same span computed from generator translations only; used for the large
// tensor-square algebras. The two routes agree (asserted in tests).
template <scalar_field F>
JFiltration<F> j_filtration_by_generators(const GroupAlgebra<F>& a, std::size_t max_l,
                                          const std::vector<Elem>& gens) {
  const F& f = a.field();
  JFiltration<F> jf;
  EchelonBasis<F> j0(f, a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    VecT<F> v = a.zero();
    v[i] = f.one();
    j0.add_row(std::move(v));
  }
  jf.levels.push_back(std::move(j0));
  if (max_l == 0) return jf;

  EchelonBasis<F> j1(f, a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (i == a.identity_index()) continue;
    VecT<F> v = a.zero();
    v[i] = f.one();
    v[a.identity_index()] = f.sub(f.zero(), f.one());
    j1.add_row(std::move(v));
  }
  jf.levels.push_back(std::move(j1));

  std::vector<std::vector<std::uint32_t>> trans;
  for (const Elem& g : gens) trans.push_back(a.translation_by(g));

  for (std::size_t l = 1; l < max_l; ++l) {
    const EchelonBasis<F>& prev = jf.levels.back();
    EchelonBasis<F> next(f, a.dim());
    for (const auto& u : prev.rows()) {
      for (const auto& t : trans) {
        // u * (g - 1) = translate(u, g) - u
        VecT<F> v = a.zero();
        for (std::size_t i = 0; i < u.size(); ++i) {
          if (f.is_zero(u[i])) continue;
          v[t[i]] = f.add(v[t[i]], u[i]);
          v[i] = f.sub(v[i], u[i]);
        }
        next.add_row(std::move(v));
      }
    }
    const bool stable = next.rank() == prev.rank();
    jf.levels.push_back(std::move(next));
    if (stable) {
      jf.stable_index = l;
      jf.levels.pop_back();
      break;
    }
  }
  return jf;
}

// A_l = kG / J^{l+1} on the coset representative basis (the group basis
// columns missed by the pivots of J^{l+1}).
template <scalar_field F>
class QuotientAlgebra {
 public:
  QuotientAlgebra(std::shared_ptr<const GroupAlgebra<F>> a, const JFiltration<F>& jf,
                  std::size_t level)
      : a_(std::move(a)), jpart_(jf.level(level + 1)), level_(level) {
    std::vector<char> is_pivot(a_->dim(), 0);
    for (std::size_t p : jpart_.pivots()) is_pivot[p] = 1;
    for (std::size_t c = 0; c < a_->dim(); ++c)
      if (!is_pivot[c]) rep_cols_.push_back(c);
  }

  std::size_t level() const { return level_; }
  std::size_t dim() const { return rep_cols_.size(); }
  const GroupAlgebra<F>& ambient() const { return *a_; }
  std::shared_ptr<const GroupAlgebra<F>> ambient_ptr() const { return a_; }
  const std::vector<std::size_t>& rep_cols() const { return rep_cols_; }
  const EchelonBasis<F>& modded_ideal() const { return jpart_; }

  VecT<F> project(const VecT<F>& ambient_vec) const {
    VecT<F> r = jpart_.reduce(ambient_vec);
    VecT<F> out(rep_cols_.size(), a_->field().zero());
    for (std::size_t i = 0; i < rep_cols_.size(); ++i) out[i] = r[rep_cols_[i]];
    return out;
  }

  VecT<F> lift(const VecT<F>& local) const {
    VecT<F> v = a_->zero();
    for (std::size_t i = 0; i < rep_cols_.size(); ++i) v[rep_cols_[i]] = local[i];
    return v;
  }

  VecT<F> one() const { return project(a_->group_vector(a_->elements().parent()->identity())); }

  VecT<F> image_of(const Elem& group_elem) const { return project(a_->group_vector(group_elem)); }

  VecT<F> multiply(const VecT<F>& x, const VecT<F>& y) const {
    return project(a_->multiply(lift(x), lift(y)));
  }

  typename F::Elem epsilon(const VecT<F>& x) const { return a_->augmentation(lift(x)); }

  bool equal(const VecT<F>& x, const VecT<F>& y) const {
    const F& f = a_->field();
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!f.is_zero(f.sub(x[i], y[i]))) return false;
    return true;
  }

 private:
  std::shared_ptr<const GroupAlgebra<F>> a_;
  EchelonBasis<F> jpart_;
  std::vector<std::size_t> rep_cols_;
  std::size_t level_;
};

// The public quotient_algebra operation: enforces the structure-constant
// materialization cap and the computed-level range, and spot-checks
// associativity (all basis triples when dim <= 16, 1e4 fixed-seed triples
// otherwise).
template <scalar_field F>
QuotientAlgebra<F> quotient_algebra(std::shared_ptr<const GroupAlgebra<F>> a,
                                    const JFiltration<F>& jf, std::size_t level);

// matrix of u -> x*u on the coset representative basis
template <scalar_field F>
DenseMatrix left_multiplication_matrix(const QuotientAlgebra<F>& q, const VecT<F>& x);

extern template class GroupAlgebra<PrimeField>;
extern template class GroupAlgebra<RationalField>;
extern template class QuotientAlgebra<PrimeField>;
extern template class QuotientAlgebra<RationalField>;
extern template JFiltration<PrimeField> j_power_filtration(const GroupAlgebra<PrimeField>&, std::size_t);
extern template JFiltration<RationalField> j_power_filtration(const GroupAlgebra<RationalField>&, std::size_t);
extern template JFiltration<PrimeField> j_filtration_by_generators(const GroupAlgebra<PrimeField>&,
                                                                   std::size_t, const std::vector<Elem>&);
extern template QuotientAlgebra<PrimeField> quotient_algebra(
    std::shared_ptr<const GroupAlgebra<PrimeField>>, const JFiltration<PrimeField>&, std::size_t);
extern template QuotientAlgebra<RationalField> quotient_algebra(
    std::shared_ptr<const GroupAlgebra<RationalField>>, const JFiltration<RationalField>&, std::size_t);
extern template DenseMatrix left_multiplication_matrix(const QuotientAlgebra<PrimeField>&,
                                                       const VecT<PrimeField>&);

}  // namespace complab
