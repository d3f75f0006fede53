#include "complab/linalg.hpp"

namespace complab {

namespace {

template <scalar_field F>
VecT<F> to_internal(const F& f, const FieldSpec& spec, const std::vector<Scalar>& row) {
  VecT<F> out;
  out.reserve(row.size());
  for (const Scalar& s : row) {
    if (!s.matches(spec)) throw FieldMismatch("matrix entry does not lie in " + spec.name());
    if constexpr (std::is_same_v<F, PrimeField>) {
      out.push_back(s.as_residue());
    } else {
      out.push_back(s.as_rational());
    }
  }
  return out;
}

template <scalar_field F>
std::vector<Scalar> to_public(const VecT<F>& v) {
  std::vector<Scalar> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if constexpr (std::is_same_v<F, PrimeField>) {
      out.push_back(Scalar::residue(x));
    } else {
      out.push_back(Scalar::rational(x));
    }
  }
  return out;
}

template <scalar_field F>
SubspaceBasis make_basis(const EchelonBasis<F>& e, const FieldSpec& spec) {
  SubspaceBasis b;
  b.ambient = e.ambient();
  b.field = spec;
  b.pivots = e.pivots();
  b.rows.reserve(e.rank());
  for (const auto& r : e.rows()) b.rows.push_back(to_public<F>(r));
  return b;
}

template <scalar_field F>
std::pair<SubspaceBasis, std::size_t> echelonize_impl(const F& f, const DenseMatrix& m,
                                                      const FieldSpec& spec) {
  EchelonBasis<F> e(f, m.cols);
  for (std::size_t r = 0; r < m.rows; ++r) {
    std::vector<Scalar> row(m.entries.begin() + static_cast<std::ptrdiff_t>(r * m.cols),
                            m.entries.begin() + static_cast<std::ptrdiff_t>((r + 1) * m.cols));
    e.add_row(to_internal<F>(f, spec, row));
  }
  return {make_basis(e, spec), e.rank()};
}

template <scalar_field F>
SubspaceBasis nullspace_impl(const F& f, const DenseMatrix& m, const FieldSpec& spec) {
  EchelonBasis<F> e(f, m.cols);
  for (std::size_t r = 0; r < m.rows; ++r) {
    std::vector<Scalar> row(m.entries.begin() + static_cast<std::ptrdiff_t>(r * m.cols),
                            m.entries.begin() + static_cast<std::ptrdiff_t>((r + 1) * m.cols));
    e.add_row(to_internal<F>(f, spec, row));
  }
  EchelonBasis<F> canonical(f, m.cols);
  for (auto& v : e.nullspace()) canonical.add_row(std::move(v));
  return make_basis(canonical, spec);
}

}  // namespace

std::pair<SubspaceBasis, std::size_t> echelonize(const DenseMatrix& m, const FieldSpec& f) {
  if (f.is_prime_field()) return echelonize_impl(PrimeField{f.p()}, m, f);
  return echelonize_impl(RationalField{}, m, f);
}

SubspaceBasis nullspace(const DenseMatrix& m, const FieldSpec& f) {
  if (f.is_prime_field()) return nullspace_impl(PrimeField{f.p()}, m, f);
  return nullspace_impl(RationalField{}, m, f);
}

std::optional<std::vector<Scalar>> subspace_contains(const SubspaceBasis& b,
                                                     const std::vector<Scalar>& v) {
  if (v.size() != b.ambient) throw DimensionMismatch("vector length does not match ambient dimension");
  const FieldSpec& f = b.field;
  std::vector<Scalar> coords;
  coords.reserve(b.rows.size());
  std::vector<Scalar> rem = v;
  for (std::size_t r = 0; r < b.rows.size(); ++r) {
    Scalar c = rem[b.pivots[r]];
    coords.push_back(c);
    if (!scalar_is_zero(f, c)) {
      for (std::size_t i = 0; i < rem.size(); ++i)
        rem[i] = scalar_sub(f, rem[i], scalar_mul(f, c, b.rows[r][i]));
    }
  }
  for (const Scalar& x : rem)
    if (!scalar_is_zero(f, x)) return std::nullopt;
  return coords;
}

}  // namespace complab
