#pragma once

#include <cstdint>
#include <vector>

#include "complab/group_spec.hpp"

namespace complab {

// Arithmetic in the finite coefficient rings Z/m and F_p[t]/(t^l).
// Elements are stored as fixed-width word blocks inside flat arrays
// (one word for Z/m, l coefficient words low-degree-first for poly_trunc),
// so matrices can live in a single contiguous buffer.
class Ring {
 public:
  explicit Ring(RingSpec spec);

  const RingSpec& spec() const { return spec_; }
  std::size_t words() const { return words_; }
  // residues are < this bound (m for Z/m, p for poly coefficients)
  std::uint64_t residue_bound() const { return bound_; }
  std::uint32_t byte_width() const { return byte_width_; }
  std::uint64_t size() const;  // number of ring elements

  void set_zero(std::uint64_t* a) const;
  void set_one(std::uint64_t* a) const;
  void set_from_int(std::uint64_t* a, long v) const;
  bool is_zero(const std::uint64_t* a) const;
  bool equal(const std::uint64_t* a, const std::uint64_t* b) const;

  void add(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const;
  void sub(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const;
  void neg(const std::uint64_t* a, std::uint64_t* out) const;
  void mul(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const;  // out distinct from a,b
  void add_mul(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* acc) const;  // acc += a*b

  bool is_unit(const std::uint64_t* a) const;
  // multiplicative inverse of a unit; throws Error otherwise
  void inv(const std::uint64_t* a, std::uint64_t* out) const;

  // t^k (poly_trunc) or p^k mod m (zmod); the canonical ideal generator powers
  void ideal_generator_power(std::uint32_t k, std::uint64_t* out) const;

  // the ideal (pi^level): number of elements and enumeration by index
  std::uint64_t ideal_size(std::uint32_t level) const;
  void ideal_element(std::uint32_t level, std::uint64_t index, std::uint64_t* out) const;

  void encode(const std::uint64_t* a, std::string& out) const;  // appends byte_width()*words() octets
  void decode(const char* bytes, std::uint64_t* a) const;

 private:
  RingSpec spec_;
  std::size_t words_;
  std::uint64_t bound_;
  std::uint32_t byte_width_;
};

// Square matrices over a Ring, stored as flat word buffers of
// n*n*ring.words() entries, row-major.
class MatrixOps {
 public:
  MatrixOps(Ring ring, std::uint32_t n);

  const Ring& ring() const { return ring_; }
  std::uint32_t n() const { return n_; }
  std::size_t mat_words() const { return static_cast<std::size_t>(n_) * n_ * ring_.words(); }

  std::uint64_t* entry(std::uint64_t* m, std::uint32_t i, std::uint32_t j) const {
    return m + (static_cast<std::size_t>(i) * n_ + j) * ring_.words();
  }
  const std::uint64_t* entry(const std::uint64_t* m, std::uint32_t i, std::uint32_t j) const {
    return m + (static_cast<std::size_t>(i) * n_ + j) * ring_.words();
  }

  void set_identity(std::uint64_t* m) const;
  bool is_identity(const std::uint64_t* m) const;
  bool equal(const std::uint64_t* a, const std::uint64_t* b) const;
  void multiply(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const;
  void determinant(const std::uint64_t* m, std::uint64_t* out) const;  // cofactor expansion
  void inverse(const std::uint64_t* m, std::uint64_t* out) const;      // adjugate * det^{-1}

  void encode(const std::uint64_t* m, std::string& out) const;
  void decode(const char* bytes, std::uint64_t* m) const;
  std::size_t encoded_size() const { return mat_words() / ring_.words() * ring_.byte_width() * ring_.words(); }

 private:
  void det_recursive(const std::uint64_t* m, std::uint32_t size, const std::uint32_t* rows,
                     const std::uint32_t* cols, std::uint64_t* out) const;
  Ring ring_;
  std::uint32_t n_;
};

}  // namespace complab
