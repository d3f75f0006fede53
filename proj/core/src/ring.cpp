#include "complab/ring.hpp"

#include <cstring>

#include "complab/field.hpp"

namespace complab {

namespace {
std::uint32_t bytes_for(std::uint64_t max_value) {
  std::uint32_t w = 1;
  while (max_value > 0xffu) {
    max_value >>= 8;
    ++w;
  }
  return w;
}
}  // namespace

Ring::Ring(RingSpec spec) : spec_(spec) {
  spec_.validate();
  if (spec_.kind == RingSpec::Kind::Zmod) {
    words_ = 1;
    bound_ = spec_.m;
  } else {
    words_ = spec_.l;
    bound_ = spec_.p;
  }
  byte_width_ = bytes_for(bound_ - 1);
}

std::uint64_t Ring::size() const {
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < words_; ++i) s *= bound_;
  return s;
}

void Ring::set_zero(std::uint64_t* a) const {
  for (std::size_t i = 0; i < words_; ++i) a[i] = 0;
}

void Ring::set_one(std::uint64_t* a) const {
  set_zero(a);
  a[0] = 1 % bound_;
}

void Ring::set_from_int(std::uint64_t* a, long v) const {
  set_zero(a);
  long long m = static_cast<long long>(bound_);
  long long r = static_cast<long long>(v) % m;
  if (r < 0) r += m;
  a[0] = static_cast<std::uint64_t>(r);
}

bool Ring::is_zero(const std::uint64_t* a) const {
  for (std::size_t i = 0; i < words_; ++i)
    if (a[i]) return false;
  return true;
}

bool Ring::equal(const std::uint64_t* a, const std::uint64_t* b) const {
  return std::memcmp(a, b, words_ * sizeof(std::uint64_t)) == 0;
}

void Ring::add(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const {
  for (std::size_t i = 0; i < words_; ++i) {
    std::uint64_t s = a[i] + b[i];
    out[i] = s >= bound_ ? s - bound_ : s;
  }
}

void Ring::sub(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const {
  for (std::size_t i = 0; i < words_; ++i) out[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + bound_ - b[i];
}

void Ring::neg(const std::uint64_t* a, std::uint64_t* out) const {
  for (std::size_t i = 0; i < words_; ++i) out[i] = a[i] ? bound_ - a[i] : 0;
}

void Ring::mul(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const {
  if (spec_.kind == RingSpec::Kind::Zmod) {
    out[0] = (a[0] * b[0]) % bound_;
    return;
  }
  // truncated polynomial product
  for (std::size_t i = 0; i < words_; ++i) out[i] = 0;
  for (std::size_t i = 0; i < words_; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; i + j < words_; ++j) {
      if (!b[j]) continue;
      out[i + j] = (out[i + j] + a[i] * b[j]) % bound_;
    }
  }
}

void Ring::add_mul(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* acc) const {
  if (spec_.kind == RingSpec::Kind::Zmod) {
    acc[0] = (acc[0] + a[0] * b[0]) % bound_;
    return;
  }
  for (std::size_t i = 0; i < words_; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; i + j < words_; ++j) {
      if (!b[j]) continue;
      acc[i + j] = (acc[i + j] + a[i] * b[j]) % bound_;
    }
  }
}

bool Ring::is_unit(const std::uint64_t* a) const {
  if (spec_.kind == RingSpec::Kind::Zmod) {
    std::uint64_t x = a[0], y = bound_;
    while (y) {
      std::uint64_t t = x % y;
      x = y;
      y = t;
    }
    return x == 1;
  }
  return a[0] != 0;  // local ring: unit iff constant term nonzero
}

void Ring::inv(const std::uint64_t* a, std::uint64_t* out) const {
  if (!is_unit(a)) throw Error("ring element is not a unit");
  if (spec_.kind == RingSpec::Kind::Zmod) {
    // extended euclid mod m (m need not be prime, a coprime to m)
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(bound_), newr = static_cast<std::int64_t>(a[0]);
    while (newr != 0) {
      std::int64_t q = r / newr;
      std::int64_t tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(bound_);
    out[0] = static_cast<std::uint64_t>(t);
    return;
  }
  // power series inversion, coefficient by coefficient
  const std::uint64_t c0inv = inv_mod_u64(a[0], bound_);
  out[0] = c0inv;
  for (std::size_t k = 1; k < words_; ++k) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < k; ++j) acc = (acc + a[k - j] * out[j]) % bound_;
    out[k] = (acc * c0inv) % bound_;
    out[k] = out[k] ? bound_ - out[k] : 0;
  }
}

void Ring::ideal_generator_power(std::uint32_t k, std::uint64_t* out) const {
  set_zero(out);
  if (spec_.kind == RingSpec::Kind::PolyTrunc) {
    if (k < words_) out[k] = 1 % bound_;
    return;
  }
  // smallest prime factor of m generates the (unique, by validation) maximal ideal
  std::uint64_t q = spec_.m;
  for (std::uint64_t d = 2; d * d <= spec_.m; ++d)
    if (spec_.m % d == 0) {
      q = d;
      break;
    }
  std::uint64_t v = 1;
  for (std::uint32_t i = 0; i < k; ++i) v = (v * q) % bound_;
  out[0] = v;
}

std::uint64_t Ring::ideal_size(std::uint32_t level) const {
  const std::uint32_t nil = spec_.ideal_nilpotency();
  if (level >= nil) return 1;
  if (spec_.kind == RingSpec::Kind::PolyTrunc) {
    std::uint64_t s = 1;
    for (std::uint32_t i = level; i < words_; ++i) s *= bound_;
    return s;
  }
  std::uint64_t pi[1];
  ideal_generator_power(level, pi);
  return bound_ / pi[0];  // |(p^level)| in Z/p^m = p^{m-level}
}

void Ring::ideal_element(std::uint32_t level, std::uint64_t index, std::uint64_t* out) const {
  if (spec_.kind == RingSpec::Kind::PolyTrunc) {
    set_zero(out);
    for (std::uint32_t i = level; i < words_; ++i) {
      out[i] = index % bound_;
      index /= bound_;
    }
    return;
  }
  std::uint64_t pi[1];
  ideal_generator_power(level, pi);
  out[0] = (index * pi[0]) % bound_;
}

void Ring::encode(const std::uint64_t* a, std::string& out) const {
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t v = a[w];
    for (std::uint32_t b = byte_width_; b-- > 0;)
      out.push_back(static_cast<char>((v >> (8 * b)) & 0xffu));
  }
}

void Ring::decode(const char* bytes, std::uint64_t* a) const {
  std::size_t pos = 0;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t v = 0;
    for (std::uint32_t b = 0; b < byte_width_; ++b)
      v = (v << 8) | static_cast<std::uint8_t>(bytes[pos++]);
    a[w] = v;
  }
}

MatrixOps::MatrixOps(Ring ring, std::uint32_t n) : ring_(std::move(ring)), n_(n) {}

void MatrixOps::set_identity(std::uint64_t* m) const {
  for (std::uint32_t i = 0; i < n_; ++i)
    for (std::uint32_t j = 0; j < n_; ++j) {
      if (i == j)
        ring_.set_one(entry(m, i, j));
      else
        ring_.set_zero(entry(m, i, j));
    }
}

bool MatrixOps::is_identity(const std::uint64_t* m) const {
  std::vector<std::uint64_t> id(mat_words());
  set_identity(id.data());
  return equal(m, id.data());
}

bool MatrixOps::equal(const std::uint64_t* a, const std::uint64_t* b) const {
  return std::memcmp(a, b, mat_words() * sizeof(std::uint64_t)) == 0;
}

void MatrixOps::multiply(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const {
  for (std::uint32_t i = 0; i < n_; ++i)
    for (std::uint32_t j = 0; j < n_; ++j) {
      std::uint64_t* acc = entry(out, i, j);
      ring_.set_zero(acc);
      for (std::uint32_t k = 0; k < n_; ++k) ring_.add_mul(entry(a, i, k), entry(b, k, j), acc);
    }
}

void MatrixOps::det_recursive(const std::uint64_t* m, std::uint32_t size, const std::uint32_t* rows,
                              const std::uint32_t* cols, std::uint64_t* out) const {
  const std::size_t w = ring_.words();
  if (size == 1) {
    std::memcpy(out, entry(m, rows[0], cols[0]), w * sizeof(std::uint64_t));
    return;
  }
  ring_.set_zero(out);
  std::vector<std::uint32_t> sub_rows(rows + 1, rows + size);
  std::vector<std::uint32_t> sub_cols(size - 1);
  std::vector<std::uint64_t> minor(w), term(w);
  for (std::uint32_t c = 0; c < size; ++c) {
    const std::uint64_t* pivot = entry(m, rows[0], cols[c]);
    if (ring_.is_zero(pivot)) continue;
    std::size_t k = 0;
    for (std::uint32_t cc = 0; cc < size; ++cc)
      if (cc != c) sub_cols[k++] = cols[cc];
    det_recursive(m, size - 1, sub_rows.data(), sub_cols.data(), minor.data());
    ring_.mul(pivot, minor.data(), term.data());
    if (c % 2 == 0)
      ring_.add(out, term.data(), out);
    else
      ring_.sub(out, term.data(), out);
  }
}

void MatrixOps::determinant(const std::uint64_t* m, std::uint64_t* out) const {
  std::vector<std::uint32_t> idx(n_);
  for (std::uint32_t i = 0; i < n_; ++i) idx[i] = i;
  det_recursive(m, n_, idx.data(), idx.data(), out);
}

void MatrixOps::inverse(const std::uint64_t* m, std::uint64_t* out) const {
  const std::size_t w = ring_.words();
  std::vector<std::uint64_t> det(w), det_inv(w);
  determinant(m, det.data());
  ring_.inv(det.data(), det_inv.data());
  // adjugate: out[j][i] = (-1)^{i+j} * minor(i, j)
  std::vector<std::uint32_t> rows(n_ - 1), cols(n_ - 1);
  std::vector<std::uint64_t> minor(w), t(w);
  for (std::uint32_t i = 0; i < n_; ++i)
    for (std::uint32_t j = 0; j < n_; ++j) {
      std::size_t r = 0, c = 0;
      for (std::uint32_t k = 0; k < n_; ++k) {
        if (k != i) rows[r++] = k;
        if (k != j) cols[c++] = k;
      }
      det_recursive(m, n_ - 1, rows.data(), cols.data(), minor.data());
      ring_.mul(minor.data(), det_inv.data(), t.data());
      if ((i + j) % 2) ring_.neg(t.data(), t.data());
      std::memcpy(entry(out, j, i), t.data(), w * sizeof(std::uint64_t));
    }
}

void MatrixOps::encode(const std::uint64_t* m, std::string& out) const {
  for (std::uint32_t i = 0; i < n_; ++i)
    for (std::uint32_t j = 0; j < n_; ++j) ring_.encode(entry(m, i, j), out);
}

void MatrixOps::decode(const char* bytes, std::uint64_t* m) const {
  const std::size_t stride = ring_.words() * ring_.byte_width();
  std::size_t pos = 0;
  for (std::uint32_t i = 0; i < n_; ++i)
    for (std::uint32_t j = 0; j < n_; ++j) {
      ring_.decode(bytes + pos, entry(m, i, j));
      pos += stride;
    }
}

}  // namespace complab
