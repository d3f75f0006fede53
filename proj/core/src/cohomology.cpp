#include "complab/cohomology.hpp"

#include <algorithm>

#include "complab/field.hpp"

namespace complab {

BarCohomology::BarCohomology(Subgroup g, std::uint64_t p, unsigned degree, std::uint64_t cap)
    : g_(std::move(g)),
      p_(p),
      degree_(degree),
      coboundaries_(PrimeField{p}, 1),
      reps_(PrimeField{p}, 1) {
  if (!is_prime_u64(p)) throw SpecError("bar cohomology needs a prime p");
  if (degree > 2) throw SpecError("bar cohomology computes degrees 0..2");
  for (const Elem& e : g_.elements())
    if (e != g_.parent()->identity()) nonid_.push_back(e);
  for (std::uint32_t i = 0; i < nonid_.size(); ++i) index_.emplace(nonid_[i], i);
  const double m = static_cast<double>(nonid_.size());
  if (m * m * m > static_cast<double>(cap))
    throw DimensionLimit("bar complex needs (|G|-1)^3 within the cap");
  build();
}

std::size_t BarCohomology::cochain_dim(unsigned n) const {
  std::size_t d = 1;
  for (unsigned i = 0; i < n; ++i) d *= nonid_.size();
  return d;
}

std::size_t BarCohomology::elem_index(const Elem& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw Error("identity or foreign element in tuple index");
  return it->second;
}

// d(e_t) in C^n for the basis cochain at domain tuple t in C^{n-1}, by
// scanning all codomain tuples
BarCohomology::Row BarCohomology::differential_of_basis(unsigned n, std::size_t tuple_index) const {
  const FiniteGroup& G = *g_.parent();
  const std::size_t m = nonid_.size();
  const PrimeField f{p_};
  Row out;
  // decode t
  std::vector<std::size_t> t(n == 0 ? 0 : n - 1);
  std::size_t rest = tuple_index;
  for (std::size_t k = t.size(); k-- > 0;) {
    t[k] = rest % m;
    rest /= m;
  }
  // n = 2 only (coboundaries into C^2 from C^1); d^0 = 0 for trivial coefficients
  if (n != 2) throw Error("differential_of_basis supports n = 2");
  const std::size_t a = t[0];
  for (std::size_t g1 = 0; g1 < m; ++g1)
    for (std::size_t g2 = 0; g2 < m; ++g2) {
      // (d e_a)(g1, g2) = e_a(g2) - e_a(g1 g2) + e_a(g1)
      std::uint64_t val = 0;
      if (g2 == a) val = f.add(val, 1);
      const Elem prod = G.multiply(nonid_[g1], nonid_[g2]);
      if (prod != G.identity() && elem_index(prod) == a) val = f.sub(val, 1);
      if (g1 == a) val = f.add(val, 1);
      if (val) out.push_back({static_cast<std::uint32_t>(g1 * m + g2), val});
    }
  return out;
}

void BarCohomology::build() {
  const FiniteGroup& G = *g_.parent();
  const std::size_t m = nonid_.size();
  const PrimeField f{p_};
  const std::size_t cn = cochain_dim(degree_);

  if (degree_ == 0) {
    // C^0 = k, d^0 = 0: H^0 = k
    reps_ = SparseEchelon<PrimeField>(f, 1);
    reps_.add_row({{0, 1}});
    reps_.finalize();
    coboundaries_ = SparseEchelon<PrimeField>(f, 1);
    coboundaries_.finalize();
    dim_ = 1;
    return;
  }

  // kernel constraints: one row per codomain tuple
  SparseEchelon<PrimeField> constraints(f, cn);
  if (degree_ == 1) {
    for (std::size_t g1 = 0; g1 < m; ++g1)
      for (std::size_t g2 = 0; g2 < m; ++g2) {
        Row row;
        row.push_back({static_cast<std::uint32_t>(g2), 1});
        const Elem prod = G.multiply(nonid_[g1], nonid_[g2]);
        if (prod != G.identity())
          row.push_back({static_cast<std::uint32_t>(elem_index(prod)), f.sub(0, 1)});
        row.push_back({static_cast<std::uint32_t>(g1), 1});
        constraints.add_row(std::move(row));
      }
  } else {
    for (std::size_t g1 = 0; g1 < m; ++g1) {
      const Elem& e1 = nonid_[g1];
      for (std::size_t g2 = 0; g2 < m; ++g2) {
        const Elem& e2 = nonid_[g2];
        const Elem p12 = G.multiply(e1, e2);
        const bool p12_id = (p12 == G.identity());
        const std::size_t i12 = p12_id ? 0 : elem_index(p12);
        for (std::size_t g3 = 0; g3 < m; ++g3) {
          const Elem& e3 = nonid_[g3];
          Row row;
          // f(g2,g3) - f(g1g2,g3) + f(g1,g2g3) - f(g1,g2)
          row.push_back({static_cast<std::uint32_t>(g2 * m + g3), 1});
          if (!p12_id) row.push_back({static_cast<std::uint32_t>(i12 * m + g3), f.sub(0, 1)});
          const Elem p23 = G.multiply(e2, e3);
          if (p23 != G.identity())
            row.push_back({static_cast<std::uint32_t>(g1 * m + elem_index(p23)), 1});
          row.push_back({static_cast<std::uint32_t>(g1 * m + g2), f.sub(0, 1)});
          constraints.add_row(std::move(row));
        }
      }
    }
  }
  constraints.finalize();

  // coboundary space im d^{n-1}
  coboundaries_ = SparseEchelon<PrimeField>(f, cn);
  if (degree_ == 2) {
    for (std::size_t t = 0; t < m; ++t) coboundaries_.add_row(differential_of_basis(2, t));
  }
  coboundaries_.finalize();

  // kernel basis, reduced modulo coboundaries, echelonized
  reps_ = SparseEchelon<PrimeField>(f, cn);
  for (auto& v : constraints.nullspace()) reps_.add_row(coboundaries_.reduce(std::move(v)));
  reps_.finalize();
  dim_ = reps_.rank();
}

bool BarCohomology::is_cocycle(const Row& cochain) const {
  const FiniteGroup& G = *g_.parent();
  const std::size_t m = nonid_.size();
  const PrimeField f{p_};
  // dense copy for O(1) lookups
  std::vector<std::uint64_t> dense(cochain_dim(degree_), 0);
  for (const auto& [c, v] : cochain) dense[c] = v;
  if (degree_ == 1) {
    for (std::size_t g1 = 0; g1 < m; ++g1)
      for (std::size_t g2 = 0; g2 < m; ++g2) {
        const Elem prod = G.multiply(nonid_[g1], nonid_[g2]);
        std::uint64_t acc = f.add(dense[g2], dense[g1]);
        if (prod != G.identity()) acc = f.sub(acc, dense[elem_index(prod)]);
        if (acc) return false;
      }
    return true;
  }
  if (degree_ == 2) {
    for (std::size_t g1 = 0; g1 < m; ++g1)
      for (std::size_t g2 = 0; g2 < m; ++g2) {
        const Elem p12 = G.multiply(nonid_[g1], nonid_[g2]);
        const bool p12_id = (p12 == G.identity());
        const std::size_t i12 = p12_id ? 0 : elem_index(p12);
        for (std::size_t g3 = 0; g3 < m; ++g3) {
          std::uint64_t acc = dense[g2 * m + g3];
          if (!p12_id) acc = f.sub(acc, dense[i12 * m + g3]);
          const Elem p23 = G.multiply(nonid_[g2], nonid_[g3]);
          if (p23 != G.identity()) acc = f.add(acc, dense[g1 * m + elem_index(p23)]);
          acc = f.sub(acc, dense[g1 * m + g2]);
          if (acc) return false;
        }
      }
    return true;
  }
  return true;
}

std::optional<VecT<PrimeField>> BarCohomology::class_coordinates(Row cocycle) const {
  return reps_.coordinates(coboundaries_.reduce(std::move(cocycle)));
}

std::size_t periodic_cyclic_oracle(std::uint64_t m, std::uint64_t p, unsigned degree) {
  if (m < 2) throw SpecError("periodic_cyclic_oracle needs m >= 2");
  if (degree == 0) return 1;
  return (m % p == 0) ? 1 : 0;
}

InflationMap inflation_map(const BarCohomology& source, const BarCohomology& target,
                           const GroupHom& projection) {
  if (source.degree() != target.degree()) throw DimensionMismatch("inflation degrees differ");
  const unsigned n = source.degree();
  const PrimeField f{source.p()};

  InflationMap out;
  out.domain_dim = source.dimension();
  out.codomain_dim = target.dimension();
  out.matrix = DenseMatrix(target.dimension(), source.dimension());
  for (auto& s : out.matrix.entries) s = Scalar::residue(0);

  const std::size_t mt = target.tuple_count();
  EchelonBasis<PrimeField> image_span(f, std::max<std::size_t>(target.dimension(), 1));

  for (std::size_t col = 0; col < source.dimension(); ++col) {
    // dense table of the source representative
    std::vector<std::uint64_t> dense(source.cochain_dim(n), 0);
    for (const auto& [c, v] : source.representatives()[col]) dense[c] = v;

    // pullback f' = f . (q x ... x q), normalized convention for identity images
    BarCohomology::Row pulled;
    const std::size_t count = target.cochain_dim(n);
    std::vector<std::size_t> tup(n, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t rest = idx;
      for (std::size_t k = n; k-- > 0;) {
        tup[k] = rest % mt;
        rest /= mt;
      }
      bool hits_identity = false;
      std::size_t src_idx = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const Elem img = projection.apply(target.nonidentity()[tup[k]]);
        if (img == projection.cod()->identity()) {
          hits_identity = true;
          break;
        }
        src_idx = src_idx * source.tuple_count() + source.elem_index(img);
      }
      if (hits_identity) continue;
      if (dense[src_idx])
        pulled.push_back({static_cast<std::uint32_t>(idx), dense[src_idx]});
    }
    if (!target.is_cocycle(pulled)) throw Error("inflated representative is not a cocycle");
    auto coords = target.class_coordinates(std::move(pulled));
    if (!coords) throw Error("inflated cocycle failed to reduce in the target");
    for (std::size_t r = 0; r < coords->size(); ++r)
      out.matrix.at(r, col) = Scalar::residue((*coords)[r]);
    if (target.dimension() > 0) image_span.add_row(*coords);
  }
  out.rank = (target.dimension() == 0 || source.dimension() == 0) ? 0 : image_span.rank();
  return out;
}

TowerReport tower_continuous_cohomology(const std::vector<GroupPtr>& levels,
                                        const std::vector<GroupHom>& maps, std::uint64_t p,
                                        unsigned degree, std::uint64_t cap) {
  if (levels.size() < 1) throw SpecError("tower needs at least one level");
  if (maps.size() + 1 != levels.size()) throw SpecError("tower needs one map per consecutive pair");
  const PrimeField f{p};

  TowerReport rep;
  rep.degree = degree;
  rep.p = p;
  rep.notes = "colimit over the supplied tower; cofinality in the full system is assumed";

  std::vector<BarCohomology> cohs;
  std::vector<Subgroup> elems;
  for (const GroupPtr& g : levels) {
    Subgroup s = Subgroup::whole_group(g, cap);
    cohs.emplace_back(s, p, degree, cap);
    elems.push_back(std::move(s));
    rep.level_dims.push_back(cohs.back().dimension());
  }
  // certify the maps before inflating along them
  for (std::size_t j = 0; j < maps.size(); ++j) {
    maps[j].certify_homomorphism(elems[j + 1]);
    maps[j].certify_surjective(elems[j + 1], elems[j].order());
  }

  // composite H(L_1) -> H(L_j) as a matrix product
  DenseMatrix composite(cohs[0].dimension(), cohs[0].dimension());
  const FieldSpec fs = FieldSpec::prime(p);
  for (std::size_t i = 0; i < composite.rows; ++i)
    for (std::size_t j = 0; j < composite.cols; ++j)
      composite.at(i, j) = scalar_from_int(fs, i == j ? 1 : 0);
  auto matrix_rank = [&](const DenseMatrix& m) { return echelonize(m, fs).second; };
  rep.composite_ranks.push_back(matrix_rank(composite));

  for (std::size_t j = 0; j + 1 < levels.size(); ++j) {
    InflationMap step = inflation_map(cohs[j], cohs[j + 1], maps[j]);
    rep.step_ranks.push_back(step.rank);
    // composite = step.matrix * composite
    DenseMatrix next(step.matrix.rows, composite.cols);
    for (std::size_t r = 0; r < next.rows; ++r)
      for (std::size_t c = 0; c < next.cols; ++c) {
        Scalar acc = scalar_zero(fs);
        for (std::size_t k = 0; k < composite.rows; ++k)
          acc = scalar_add(fs, acc, scalar_mul(fs, step.matrix.at(r, k), composite.at(k, c)));
        next.at(r, c) = acc;
      }
    composite = std::move(next);
    rep.composite_ranks.push_back(matrix_rank(composite));
  }

  for (std::size_t j = 0; j + 1 < rep.composite_ranks.size(); ++j) {
    if (rep.composite_ranks[j] == rep.composite_ranks[j + 1]) {
      rep.colimit_dim = rep.composite_ranks[j];
      rep.stabilized = true;
      break;
    }
  }
  return rep;
}

Lemma51Verdict lemma51_consistency(const TowerReport& degree1, const TowerReport& degree2,
                                   std::size_t discrete_h1, std::size_t discrete_h2) {
  Lemma51Verdict v;
  v.h1_isomorphism = degree1.colimit_dim && *degree1.colimit_dim == discrete_h1;
  v.h2_injective = degree2.colimit_dim && *degree2.colimit_dim <= discrete_h2;
  return v;
}

}  // namespace complab
