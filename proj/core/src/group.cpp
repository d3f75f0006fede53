#include "complab/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <random>
#include <unordered_set>

#include "complab/field.hpp"

namespace complab {

std::uint64_t default_enumeration_cap() {
  if (const char* env = std::getenv("COMPLETION_LAB_MAX_ELEMENTS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultEnumerationCap;
}

Elem FiniteGroup::power(const Elem& x, std::uint64_t e) const {
  Elem acc = identity_;
  Elem base = x;
  while (e) {
    if (e & 1) acc = multiply(acc, base);
    e >>= 1;
    if (e) base = multiply(base, base);
  }
  return acc;
}

std::uint64_t FiniteGroup::element_order(const Elem& x, std::uint64_t cap) const {
  Elem y = x;
  std::uint64_t k = 1;
  while (y != identity_) {
    y = multiply(y, x);
    if (++k > cap) throw EnumerationLimit(cap);
  }
  return k;
}

// ---------------------------------------------------------------------------
// enumeration

std::vector<Elem> bfs_closure(const FiniteGroup& g, const std::vector<Elem>& gens,
                              std::uint64_t cap) {
  std::deque<Elem> queue;
  std::unordered_set<Elem> seen;
  queue.push_back(g.identity());
  seen.insert(g.identity());
  while (!queue.empty()) {
    Elem x = std::move(queue.front());
    queue.pop_front();
    for (const Elem& s : gens) {
      Elem y = g.multiply(x, s);
      if (seen.insert(y).second) {
        if (seen.size() > cap) throw EnumerationLimit(cap);
        queue.push_back(std::move(y));
      }
    }
  }
  std::vector<Elem> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

WordTable bfs_words(const FiniteGroup& g, const std::vector<Elem>& gens, std::uint64_t cap) {
  WordTable wt;
  std::deque<Elem> queue;
  std::unordered_set<Elem> seen;
  queue.push_back(g.identity());
  seen.insert(g.identity());
  wt.elements.push_back(g.identity());
  while (!queue.empty()) {
    Elem x = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Elem y = g.multiply(x, gens[i]);
      if (seen.insert(y).second) {
        if (seen.size() > cap) throw EnumerationLimit(cap);
        wt.parent.emplace(y, std::make_pair(x, i));
        wt.elements.push_back(y);
        queue.push_back(std::move(y));
      }
    }
  }
  return wt;
}

std::vector<std::size_t> WordTable::word_of(const Elem& x, const Elem& identity) const {
  std::vector<std::size_t> rev;
  Elem cur = x;
  while (cur != identity) {
    auto it = parent.find(cur);
    if (it == parent.end()) throw Error("element not reached by closure");
    rev.push_back(it->second.second);
    cur = it->second.first;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

Subgroup::Subgroup(GroupPtr parent, std::vector<Elem> elements, std::vector<Elem> gens)
    : parent_(std::move(parent)), elements_(std::move(elements)), generators_(std::move(gens)) {
  certify_closed();
}

bool Subgroup::contains(const Elem& x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

bool Subgroup::contains_all(const Subgroup& other) const {
  return std::includes(elements_.begin(), elements_.end(), other.elements_.begin(),
                       other.elements_.end());
}

void Subgroup::certify_closed() const {
  const FiniteGroup& g = *parent_;
  if (!contains(g.identity())) throw Error("subgroup certification failed: identity missing");
  const std::size_t n = elements_.size();
  if (n <= 4096) {
    std::vector<Elem> inverses;
    inverses.reserve(n);
    for (const Elem& y : elements_) inverses.push_back(g.invert(y));
    for (const Elem& x : elements_)
      for (const Elem& yi : inverses)
        if (!contains(g.multiply(x, yi)))
          throw Error("subgroup certification failed: x*y^-1 left the set");
  } else {
    std::mt19937_64 rng(0x636f6d706c6162ull);  // fixed seed, deterministic sample
    for (int i = 0; i < 100000; ++i) {
      const Elem& x = elements_[rng() % n];
      const Elem& y = elements_[rng() % n];
      if (!contains(g.multiply(x, g.invert(y))))
        throw Error("subgroup certification failed: x*y^-1 left the set");
    }
  }
}

Subgroup Subgroup::closure(GroupPtr parent, std::vector<Elem> gens, std::uint64_t cap) {
  std::vector<Elem> elems = bfs_closure(*parent, gens, cap);
  return Subgroup(std::move(parent), std::move(elems), std::move(gens));
}

Subgroup Subgroup::whole_group(GroupPtr g, std::uint64_t cap) {
  if (auto direct = g->direct_enumeration(cap)) {
    std::vector<Elem> elems = std::move(*direct);
    std::sort(elems.begin(), elems.end());
    // extend the default generators until they generate the whole set, so
    // generator-based operations (commutators, conjugation closure,
    // homomorphism certification) remain sound
    std::vector<Elem> gens = g->generators();
    std::vector<Elem> closed = bfs_closure(*g, gens, cap);
    while (closed.size() < elems.size()) {
      auto missing = std::find_if(elems.begin(), elems.end(), [&](const Elem& e) {
        return !std::binary_search(closed.begin(), closed.end(), e);
      });
      gens.push_back(*missing);
      closed = bfs_closure(*g, gens, cap);
    }
    return Subgroup(std::move(g), std::move(elems), std::move(gens));
  }
  std::vector<Elem> gens = g->generators();
  std::vector<Elem> elems = bfs_closure(*g, gens, cap);
  return Subgroup(std::move(g), std::move(elems), std::move(gens));
}

Subgroup Subgroup::from_elements(GroupPtr parent, std::vector<Elem> elements,
                                 std::vector<Elem> gens) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return Subgroup(std::move(parent), std::move(elements), std::move(gens));
}

Subgroup enumerate_elements(GroupPtr g, std::uint64_t cap) { return Subgroup::whole_group(std::move(g), cap); }

Subgroup subgroup_generated(GroupPtr g, std::vector<Elem> gens, std::uint64_t cap) {
  return Subgroup::closure(std::move(g), std::move(gens), cap);
}

// ---------------------------------------------------------------------------
// cyclic

namespace {
std::uint32_t bytes_for_value(std::uint64_t max_value) {
  std::uint32_t w = 1;
  while (max_value > 0xffu) {
    max_value >>= 8;
    ++w;
  }
  return w;
}

Elem encode_uint(std::uint64_t v, std::uint32_t width) {
  Elem e;
  for (std::uint32_t b = width; b-- > 0;) e.push_back(static_cast<char>((v >> (8 * b)) & 0xffu));
  return e;
}

std::uint64_t decode_uint(const Elem& e, std::size_t pos, std::uint32_t width) {
  std::uint64_t v = 0;
  for (std::uint32_t b = 0; b < width; ++b) v = (v << 8) | static_cast<std::uint8_t>(e[pos + b]);
  return v;
}
}  // namespace

CyclicGroup::CyclicGroup(GroupSpec spec) : spec_(std::move(spec)) {
  width_ = bytes_for_value(spec_.n - 1);
  name_ = spec_.str();
  identity_ = encode(0);
  generators_.push_back(encode(1 % spec_.n));
}

std::uint64_t CyclicGroup::decode(const Elem& e) const { return decode_uint(e, 0, width_); }
Elem CyclicGroup::encode(std::uint64_t r) const { return encode_uint(r % spec_.n, width_); }

Elem CyclicGroup::multiply(const Elem& a, const Elem& b) const {
  return encode((decode(a) + decode(b)) % spec_.n);
}

Elem CyclicGroup::invert(const Elem& a) const {
  const std::uint64_t r = decode(a);
  return encode(r == 0 ? 0 : spec_.n - r);
}

// ---------------------------------------------------------------------------
// product

ProductGroup::ProductGroup(GroupSpec spec, std::vector<GroupPtr> factors)
    : spec_(std::move(spec)), factors_(std::move(factors)) {
  name_ = spec_.str();
  for (const auto& f : factors_) {
    widths_.push_back(f->encoded_size());
    identity_ += f->identity();
  }
  // componentwise generators, factor order
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    for (const Elem& s : factors_[i]->generators()) {
      Elem e;
      for (std::size_t j = 0; j < factors_.size(); ++j) e += (j == i) ? s : factors_[j]->identity();
      generators_.push_back(std::move(e));
    }
  }
}

std::vector<Elem> ProductGroup::split(const Elem& e) const {
  std::vector<Elem> parts;
  std::size_t pos = 0;
  for (std::size_t w : widths_) {
    parts.push_back(e.substr(pos, w));
    pos += w;
  }
  return parts;
}

Elem ProductGroup::join(const std::vector<Elem>& parts) const {
  Elem e;
  for (const auto& p : parts) e += p;
  return e;
}

Elem ProductGroup::multiply(const Elem& a, const Elem& b) const {
  Elem out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    out += factors_[i]->multiply(a.substr(pos, widths_[i]), b.substr(pos, widths_[i]));
    pos += widths_[i];
  }
  return out;
}

Elem ProductGroup::invert(const Elem& a) const {
  Elem out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    out += factors_[i]->invert(a.substr(pos, widths_[i]));
    pos += widths_[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// matrix groups

namespace {
Ring ring_for(const GroupSpec& spec) {
  if (spec.kind == GroupSpec::Kind::Unitriangular) return Ring(RingSpec::zmod(spec.p));
  return Ring(*spec.ring);
}
}  // namespace

MatrixGroup::MatrixGroup(GroupSpec spec)
    : spec_(std::move(spec)), ops_(ring_for(spec_), static_cast<std::uint32_t>(spec_.n)) {
  name_ = spec_.str();
  const Ring& R = ops_.ring();
  const std::uint32_t n = ops_.n();
  std::vector<std::uint64_t> m(ops_.mat_words());
  ops_.set_identity(m.data());
  identity_ = encode(m.data());

  auto elementary = [&](std::uint32_t i, std::uint32_t j, const std::uint64_t* v) {
    ops_.set_identity(m.data());
    std::memcpy(ops_.entry(m.data(), i, j), v, R.words() * sizeof(std::uint64_t));
    return encode(m.data());
  };

  std::vector<std::uint64_t> u(R.words());
  switch (spec_.kind) {
    case GroupSpec::Kind::SL: {
      // e_ij(u) over the additive generators of the ring: 1 for Z/m,
      // t^k (k < l) for F_p[t]/t^l
      const std::size_t units = (R.spec().kind == RingSpec::Kind::Zmod) ? 1 : R.spec().l;
      for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
          if (i == j) continue;
          for (std::size_t k = 0; k < units; ++k) {
            R.ideal_generator_power(static_cast<std::uint32_t>(k), u.data());
            generators_.push_back(elementary(i, j, u.data()));
          }
        }
      break;
    }
    case GroupSpec::Kind::CongruenceKernel: {
      // I + pi^level * e_ij, plus unit diagonal pairs
      // diag(..., 1+pi^level, (1+pi^level)^{-1}, ...)
      std::vector<std::uint64_t> pi(R.words()), one(R.words()), up(R.words()), upinv(R.words());
      R.ideal_generator_power(spec_.level, pi.data());
      for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
          if (i == j) continue;
          generators_.push_back(elementary(i, j, pi.data()));
        }
      R.set_one(one.data());
      R.add(one.data(), pi.data(), up.data());
      R.inv(up.data(), upinv.data());
      for (std::uint32_t i = 0; i + 1 < n; ++i) {
        ops_.set_identity(m.data());
        std::memcpy(ops_.entry(m.data(), i, i), up.data(), R.words() * sizeof(std::uint64_t));
        std::memcpy(ops_.entry(m.data(), i + 1, i + 1), upinv.data(), R.words() * sizeof(std::uint64_t));
        generators_.push_back(encode(m.data()));
      }
      break;
    }
    case GroupSpec::Kind::Unitriangular: {
      R.set_one(u.data());
      for (std::uint32_t i = 0; i + 1 < n; ++i) generators_.push_back(elementary(i, i + 1, u.data()));
      break;
    }
    default:
      throw SpecError("not a matrix group spec");
  }
}

Elem MatrixGroup::encode(const std::uint64_t* m) const {
  Elem e;
  ops_.encode(m, e);
  return e;
}

void MatrixGroup::decode(const Elem& e, std::uint64_t* m) const { ops_.decode(e.data(), m); }

Elem MatrixGroup::multiply(const Elem& a, const Elem& b) const {
  std::vector<std::uint64_t> ma(ops_.mat_words()), mb(ops_.mat_words()), mc(ops_.mat_words());
  decode(a, ma.data());
  decode(b, mb.data());
  ops_.multiply(ma.data(), mb.data(), mc.data());
  return encode(mc.data());
}

Elem MatrixGroup::invert(const Elem& a) const {
  std::vector<std::uint64_t> ma(ops_.mat_words()), mi(ops_.mat_words());
  decode(a, ma.data());
  ops_.inverse(ma.data(), mi.data());
  return encode(mi.data());
}

std::optional<std::vector<Elem>> MatrixGroup::direct_enumeration(std::uint64_t cap) const {
  if (spec_.kind != GroupSpec::Kind::CongruenceKernel) return std::nullopt;
  // loop over matrices I + C with C entries in the ideal (pi^level), keep
  // determinant 1
  const Ring& R = ops_.ring();
  const std::uint32_t n = ops_.n();
  const std::uint64_t per_entry = R.ideal_size(spec_.level);
  const std::uint32_t entries = n * n;
  const std::uint64_t candidate_cap = std::uint64_t{1} << 26;
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < entries; ++i) {
    if (total > candidate_cap / per_entry) throw EnumerationLimit(candidate_cap);
    total *= per_entry;
  }
  std::vector<Elem> out;
  std::vector<std::uint64_t> m(ops_.mat_words()), det(R.words()), one(R.words());
  std::vector<std::uint64_t> c(R.words());
  R.set_one(one.data());
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    ops_.set_identity(m.data());
    std::uint64_t rest = idx;
    for (std::uint32_t e = 0; e < entries; ++e) {
      R.ideal_element(spec_.level, rest % per_entry, c.data());
      rest /= per_entry;
      const std::uint32_t i = e / n, j = e % n;
      R.add(ops_.entry(m.data(), i, j), c.data(), ops_.entry(m.data(), i, j));
    }
    ops_.determinant(m.data(), det.data());
    if (R.equal(det.data(), one.data())) {
      out.push_back(encode(m.data()));
      if (out.size() > cap) throw EnumerationLimit(cap);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// quotient

QuotientGroup::QuotientGroup(Subgroup numerator, Subgroup denominator)
    : base_(numerator.parent()) {
  name_ = "quotient(" + std::to_string(numerator.order()) + "/" +
          std::to_string(denominator.order()) + ")";
  const FiniteGroup& g = *base_;
  to_rep_.reserve(numerator.order() * 2);
  for (const Elem& x : numerator.elements()) {
    if (to_rep_.contains(x)) continue;
    // sweep the whole coset x*N and name it by its minimum encoding
    std::vector<Elem> coset;
    coset.reserve(denominator.order());
    for (const Elem& h : denominator.elements()) coset.push_back(g.multiply(x, h));
    const Elem rep = *std::min_element(coset.begin(), coset.end());
    for (Elem& c : coset) to_rep_.emplace(std::move(c), rep);
    reps_.push_back(rep);
  }
  std::sort(reps_.begin(), reps_.end());
  identity_ = coset_of(g.identity());
  for (const Elem& s : numerator.generators()) {
    const Elem& img = coset_of(s);
    if (std::find(generators_.begin(), generators_.end(), img) == generators_.end())
      generators_.push_back(img);
  }
}

const Elem& QuotientGroup::coset_of(const Elem& parent_elem) const {
  auto it = to_rep_.find(parent_elem);
  if (it == to_rep_.end()) throw Error("element outside the quotient's numerator");
  return it->second;
}

Elem QuotientGroup::multiply(const Elem& a, const Elem& b) const {
  return coset_of(base_->multiply(a, b));
}

Elem QuotientGroup::invert(const Elem& a) const { return coset_of(base_->invert(a)); }

GroupPtr construct_group(const GroupSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case GroupSpec::Kind::Cyclic:
      return std::make_shared<CyclicGroup>(spec);
    case GroupSpec::Kind::Product: {
      std::vector<GroupPtr> factors;
      factors.reserve(spec.factors.size());
      for (const auto& f : spec.factors) factors.push_back(construct_group(f));
      return std::make_shared<ProductGroup>(spec, std::move(factors));
    }
    case GroupSpec::Kind::SL:
    case GroupSpec::Kind::CongruenceKernel:
    case GroupSpec::Kind::Unitriangular:
      return std::make_shared<MatrixGroup>(spec);
  }
  throw SpecError("unhandled group spec kind");
}

GroupPtr quotient_group(const Subgroup& g, const Subgroup& n, std::uint64_t cap) {
  if (g.parent() != n.parent()) throw Error("quotient_group: mismatched parents");
  if (!g.contains_all(n)) throw NotNormal("denominator is not contained in the numerator");
  if (g.order() > cap) throw EnumerationLimit(cap);
  const FiniteGroup& G = *g.parent();
  for (const Elem& x : n.elements())
    for (const Elem& s : g.generators()) {
      const Elem conj = G.multiply(G.multiply(G.invert(s), x), s);
      if (!n.contains(conj)) throw NotNormal("subgroup is not normal under the given generators");
    }
  auto q = std::make_shared<QuotientGroup>(g, n);
  if (q->coset_reps().size() * n.order() != g.order())
    throw Error("quotient order sanity check failed");
  return q;
}

}  // namespace complab
