#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "complab/errors.hpp"
#include "complab/field.hpp"

namespace complab {

// Field contexts for the templated exact linear algebra.

struct PrimeField {
  using Elem = std::uint64_t;
  std::uint64_t p;

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p; }
  bool is_zero(Elem a) const { return a == 0; }
  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p ? s - p : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
  Elem neg(Elem a) const { return a ? p - a : 0; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p; }
  Elem inv(Elem a) const { return inv_mod_u64(a, p); }
  Elem from_int(long v) const {
    long long m = static_cast<long long>(p);
    long long r = static_cast<long long>(v) % m;
    if (r < 0) r += m;
    return static_cast<Elem>(r);
  }
};

struct RationalField {
  using Elem = Rat;

  Elem zero() const { return Rat(0); }
  Elem one() const { return Rat(1); }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (sgn(a) == 0) throw Error("division by zero in Q");
    return Rat(1) / a;
  }
  Elem from_int(long v) const { return Rat(v); }
};

template <class F>
concept scalar_field = requires(const F f, const typename F::Elem a) {
  { f.zero() } -> std::convertible_to<typename F::Elem>;
  { f.one() } -> std::convertible_to<typename F::Elem>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.add(a, a) } -> std::convertible_to<typename F::Elem>;
  { f.sub(a, a) } -> std::convertible_to<typename F::Elem>;
  { f.mul(a, a) } -> std::convertible_to<typename F::Elem>;
  { f.inv(a) } -> std::convertible_to<typename F::Elem>;
  { f.from_int(1L) } -> std::convertible_to<typename F::Elem>;
};

template <scalar_field F>
using VecT = std::vector<typename F::Elem>;

// Reduced row echelon basis, maintained incrementally. Whatever order rows
// arrive in, the final state is the unique RREF of the accumulated row
// space (leftmost pivots, pivot entries 1, pivot columns cleared elsewhere).
template <scalar_field F>
class EchelonBasis {
 public:
  EchelonBasis(F field, std::size_t ambient) : f_(field), ambient_(ambient) {}

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<VecT<F>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const F& field() const { return f_; }

  // Returns true when the row enlarged the span.
  bool add_row(VecT<F> row) {
    if (row.size() != ambient_) throw DimensionMismatch("row length does not match ambient dimension");
    reduce_in_place(row);
    std::size_t lead = leading_index(row);
    if (lead == ambient_) return false;
    // normalize pivot to 1
    typename F::Elem s = f_.inv(row[lead]);
    for (auto& x : row) x = f_.mul(x, s);
    // clear the new pivot column from existing rows
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const typename F::Elem c = rows_[r][lead];
      if (!f_.is_zero(c)) axpy_neg(rows_[r], c, row);
    }
    // insert keeping pivot columns increasing
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < lead) ++pos;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(row));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), lead);
    return true;
  }

  // Remainder of v modulo the row space.
  VecT<F> reduce(VecT<F> v) const {
    if (v.size() != ambient_) throw DimensionMismatch("vector length does not match ambient dimension");
    reduce_in_place(v);
    return v;
  }

  bool contains(const VecT<F>& v) const {
    VecT<F> r = reduce(v);
    for (const auto& x : r)
      if (!f_.is_zero(x)) return false;
    return true;
  }

  // Coordinates of v in the basis rows, if v lies in the span.
  std::optional<VecT<F>> coordinates(const VecT<F>& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("vector length does not match ambient dimension");
    VecT<F> c;
    c.reserve(rows_.size());
    VecT<F> r = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const typename F::Elem x = r[pivots_[i]];
      c.push_back(x);
      if (!f_.is_zero(x)) axpy_neg(r, x, rows_[i]);
    }
    for (const auto& x : r)
      if (!f_.is_zero(x)) return std::nullopt;
    return c;
  }

  // Kernel of the stacked constraint rows: {v : row . v = 0 for all rows}.
  // One basis vector per free column, emitted in column order; this is the
  // RREF of the kernel up to row order, and is deterministic.
  std::vector<VecT<F>> nullspace() const {
    std::vector<VecT<F>> out;
    std::vector<char> is_pivot(ambient_, 0);
    for (std::size_t p : pivots_) is_pivot[p] = 1;
    for (std::size_t free_col = 0; free_col < ambient_; ++free_col) {
      if (is_pivot[free_col]) continue;
      VecT<F> v(ambient_, f_.zero());
      v[free_col] = f_.one();
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const typename F::Elem c = rows_[r][free_col];
        if (!f_.is_zero(c)) v[pivots_[r]] = f_.sub(f_.zero(), c);
      }
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  std::size_t leading_index(const VecT<F>& v) const {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!f_.is_zero(v[i])) return i;
    return ambient_;
  }

  // v -= c * w
  void axpy_neg(VecT<F>& v, const typename F::Elem& c, const VecT<F>& w) const {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!f_.is_zero(w[i])) v[i] = f_.sub(v[i], f_.mul(c, w[i]));
  }

  void reduce_in_place(VecT<F>& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const typename F::Elem c = v[pivots_[r]];
      if (!f_.is_zero(c)) axpy_neg(v, c, rows_[r]);
    }
  }

  F f_;
  std::size_t ambient_;
  std::vector<VecT<F>> rows_;
  std::vector<std::size_t> pivots_;
};

// Sparse forward-elimination accumulator for wide constraint systems
// (cohomology differentials, evaluation matrices). Rows are kept sorted by
// column; finalize() back-substitutes to the unique RREF.
template <scalar_field F>
class SparseEchelon {
 public:
  using Entry = std::pair<std::uint32_t, typename F::Elem>;
  using Row = std::vector<Entry>;

  SparseEchelon(F field, std::size_t ambient)
      : f_(field), ambient_(ambient), pivot_row_(ambient, -1) {}

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }
  const F& field() const { return f_; }

  bool add_row(Row row) {
    normalize_zeros(row);
    while (!row.empty()) {
      const std::uint32_t lead = row.front().first;
      const std::int64_t pr = pivot_row_[lead];
      if (pr < 0) {
        scale_to_monic(row);
        pivot_row_[lead] = static_cast<std::int64_t>(rows_.size());
        rows_.push_back(std::move(row));
        return true;
      }
      eliminate(row, rows_[static_cast<std::size_t>(pr)]);
    }
    return false;
  }

  // Back-substitute and order rows by pivot column. Must be called before
  // rows()/pivots()/reduce()/nullspace().
  void finalize() {
    std::vector<std::size_t> order;
    order.reserve(rows_.size());
    for (std::uint32_t c = 0; c < ambient_; ++c)
      if (pivot_row_[c] >= 0) order.push_back(static_cast<std::size_t>(pivot_row_[c]));
    std::vector<Row> sorted;
    sorted.reserve(order.size());
    for (std::size_t idx : order) sorted.push_back(std::move(rows_[idx]));
    rows_ = std::move(sorted);
    for (std::size_t r = 0; r < rows_.size(); ++r) pivot_row_[rows_[r].front().first] = static_cast<std::int64_t>(r);
    // clear pivot columns above each pivot, bottom-up
    for (std::size_t r = rows_.size(); r-- > 0;) {
      for (std::size_t s = 0; s < r; ++s) {
        const typename F::Elem c = entry(rows_[s], rows_[r].front().first);
        if (!f_.is_zero(c)) subtract_scaled(rows_[s], c, rows_[r]);
      }
    }
    finalized_ = true;
  }

  const std::vector<Row>& rows() const { return rows_; }

  std::vector<std::uint32_t> pivots() const {
    std::vector<std::uint32_t> p;
    p.reserve(rows_.size());
    for (const auto& r : rows_) p.push_back(r.front().first);
    return p;
  }

  Row reduce(Row v) const {
    normalize_zeros(v);
    while (!v.empty()) {
      const std::int64_t pr = pivot_row_[v.front().first];
      if (pr < 0) break;
      eliminate(v, rows_[static_cast<std::size_t>(pr)]);
    }
    if (v.empty() || !finalized_) return v;
    // after finalize the stored rows are fully reduced, so one pass per
    // remaining pivot entry suffices
    Row out;
    Row work = std::move(v);
    while (!work.empty()) {
      const auto [col, val] = work.front();
      const std::int64_t pr = pivot_row_[col];
      if (pr < 0) {
        out.push_back(work.front());
        work.erase(work.begin());
      } else {
        eliminate(work, rows_[static_cast<std::size_t>(pr)]);
      }
    }
    return out;
  }

  // Coordinates of v in the (finalized) RREF rows, if v lies in the span.
  std::optional<VecT<F>> coordinates(Row v) const {
    VecT<F> coords(rows_.size(), f_.zero());
    normalize_zeros(v);
    while (!v.empty()) {
      const std::int64_t pr = pivot_row_[v.front().first];
      if (pr < 0) return std::nullopt;
      coords[static_cast<std::size_t>(pr)] = v.front().second;
      subtract_scaled(v, v.front().second, rows_[static_cast<std::size_t>(pr)]);
    }
    return coords;
  }

  // Kernel of the constraint rows, one sparse vector per free column.
  std::vector<Row> nullspace() const {
    std::vector<Row> out;
    for (std::uint32_t free_col = 0; free_col < ambient_; ++free_col) {
      if (pivot_row_[free_col] >= 0) continue;
      Row v;
      v.push_back({free_col, f_.one()});
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const typename F::Elem c = entry(rows_[r], free_col);
        if (!f_.is_zero(c)) v.push_back({rows_[r].front().first, f_.sub(f_.zero(), c)});
      }
      std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  typename F::Elem entry(const Row& r, std::uint32_t col) const {
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const Entry& e, std::uint32_t c) { return e.first < c; });
    if (it != r.end() && it->first == col) return it->second;
    return f_.zero();
  }

  void normalize_zeros(Row& r) const {
    std::sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    Row out;
    out.reserve(r.size());
    for (std::size_t i = 0; i < r.size();) {
      std::uint32_t col = r[i].first;
      typename F::Elem acc = r[i].second;
      ++i;
      while (i < r.size() && r[i].first == col) {
        acc = f_.add(acc, r[i].second);
        ++i;
      }
      if (!f_.is_zero(acc)) out.push_back({col, acc});
    }
    r = std::move(out);
  }

  void scale_to_monic(Row& r) const {
    const typename F::Elem s = f_.inv(r.front().second);
    for (auto& e : r) e.second = f_.mul(e.second, s);
  }

  // v -= v.lead_coeff * w   (w monic with the same leading column)
  void eliminate(Row& v, const Row& w) const { subtract_scaled(v, v.front().second, w); }

  // v -= c * w  (sparse merge)
  void subtract_scaled(Row& v, typename F::Elem c, const Row& w) const {
    Row out;
    out.reserve(v.size() + w.size());
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < w.size()) {
      if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
        out.push_back(v[i++]);
      } else if (i == v.size() || w[j].first < v[i].first) {
        out.push_back({w[j].first, f_.sub(f_.zero(), f_.mul(c, w[j].second))});
        ++j;
      } else {
        const typename F::Elem x = f_.sub(v[i].second, f_.mul(c, w[j].second));
        if (!f_.is_zero(x)) out.push_back({v[i].first, x});
        ++i;
        ++j;
      }
    }
    v = std::move(out);
  }

  F f_;
  std::size_t ambient_;
  std::vector<std::int64_t> pivot_row_;
  std::vector<Row> rows_;
  bool finalized_ = false;
};

// ---------------------------------------------------------------------------
// Field-tagged public types.

struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Scalar> entries;  // row-major, rows*cols

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
  const Scalar& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
  Scalar& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
};

struct SubspaceBasis {
  std::size_t ambient = 0;
  FieldSpec field = FieldSpec::rationals();
  std::vector<std::vector<Scalar>> rows;  // reduced echelon form
  std::vector<std::size_t> pivots;        // strictly increasing

  std::size_t dim() const { return rows.size(); }
};

std::pair<SubspaceBasis, std::size_t> echelonize(const DenseMatrix& m, const FieldSpec& f);
SubspaceBasis nullspace(const DenseMatrix& m, const FieldSpec& f);
// Coordinates of v in b's rows when v lies in the span, otherwise empty.
std::optional<std::vector<Scalar>> subspace_contains(const SubspaceBasis& b,
                                                     const std::vector<Scalar>& v);

}  // namespace complab
