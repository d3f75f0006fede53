#include "complab/completion.hpp"

#include <algorithm>
#include <random>

#include "complab/field.hpp"

namespace complab {

// ---------------------------------------------------------------------------
// CoproductSystem

CoproductSystem::CoproductSystem(std::shared_ptr<const FpAlgebra> a, std::size_t max_l,
                                 std::uint64_t cap)
    : a_(std::move(a)), max_l_(max_l) {
  const std::size_t d = a_->dim();
  if (d * d > 65536) throw DimensionLimit("coproduct needs |G|^2 <= 65536");
  const Subgroup& elems = a_->elements();
  const GroupPtr& g = elems.parent();
  const GroupSpec* spec = g->spec();
  GroupSpec gg_spec = spec ? GroupSpec::product({*spec, *spec})
                           : GroupSpec::product({GroupSpec::cyclic(1), GroupSpec::cyclic(1)});
  if (!spec) throw SpecError("coproduct needs a spec-constructed group");
  gg_group_ = std::make_shared<ProductGroup>(gg_spec, std::vector<GroupPtr>{g, g});

  // the product element set is the full cross product; generator list =
  // embedded (possibly extended) generators of the enumerated subgroup
  std::vector<Elem> cross;
  cross.reserve(d * d);
  for (const Elem& x : elems.elements())
    for (const Elem& y : elems.elements()) cross.push_back(x + y);
  std::vector<Elem> gg_gens;
  for (const Elem& s : elems.generators()) {
    gg_gens.push_back(s + g->identity());
    gg_gens.push_back(g->identity() + s);
  }
  Subgroup gg_elems = Subgroup::from_elements(gg_group_, std::move(cross), gg_gens);
  if (gg_elems.order() != static_cast<std::uint64_t>(d) * d)
    throw Error("tensor square enumeration is not the full cross product");
  gg_ = std::make_shared<FpAlgebra>(std::move(gg_elems), a_->field());

  // sorted concatenations are i-major: index(g_i ⊗ g_j) = i*d + j
  diag_index_.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t idx = i * d + i;
    if (gg_->basis_elem(idx) != elems.elements()[i] + elems.elements()[i])
      throw Error("tensor index layout violated");
    diag_index_[i] = static_cast<std::uint32_t>(idx);
  }

  dfilt_ = j_filtration_by_generators(*gg_, max_l_ + 1, gg_gens);
  (void)cap;
}

const FpQuotient& CoproductSystem::b_level(std::size_t l) const {
  auto it = b_cache_.find(l);
  if (it != b_cache_.end()) return it->second;
  if (!dfilt_.stable_index && l + 1 > dfilt_.computed())
    throw LevelOutOfRange("coproduct level exceeds the computed D-filtration");
  auto [ins, ok] = b_cache_.emplace(l, FpQuotient(gg_, dfilt_, l));
  return ins->second;
}

FpVec CoproductSystem::ambient_delta(const FpVec& lifted) const {
  FpVec v = gg_->zero();
  for (std::size_t i = 0; i < lifted.size(); ++i)
    if (lifted[i]) v[diag_index_[i]] = lifted[i];
  return v;
}

FpVec CoproductSystem::ambient_tensor(const FpVec& lifted) const {
  const PrimeField& f = a_->field();
  const std::size_t d = a_->dim();
  FpVec v = gg_->zero();
  for (std::size_t i = 0; i < d; ++i) {
    if (!lifted[i]) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (!lifted[j]) continue;
      v[i * d + j] = f.mul(lifted[i], lifted[j]);
    }
  }
  return v;
}

FpVec CoproductSystem::delta(const FpQuotient& al, const FpVec& x) const {
  return b_level(al.level()).project(ambient_delta(al.lift(x)));
}

FpVec CoproductSystem::tensor_square(const FpQuotient& al, const FpVec& x) const {
  return b_level(al.level()).project(ambient_tensor(al.lift(x)));
}

bool CoproductSystem::is_grouplike(const FpQuotient& al, const FpVec& x) const {
  const PrimeField& f = a_->field();
  if (al.epsilon(x) != f.one()) return false;
  const FpVec lhs = delta(al, x);
  const FpVec rhs = tensor_square(al, x);
  return lhs == rhs;
}

void CoproductSystem::certify_well_defined(const FpQuotient& al) const {
  const EchelonBasis<PrimeField>& dl = dfilt_.level(al.level() + 1);
  for (const auto& row : al.modded_ideal().rows()) {
    if (!dl.contains(ambient_delta(row)))
      throw Error("coproduct well-definedness certification failed");
  }
}

void CoproductSystem::certify_delta_multiplicative(const FpQuotient& al, int samples) const {
  const PrimeField& f = a_->field();
  const std::size_t d = al.dim();
  const FpQuotient& bl = b_level(al.level());
  std::mt19937_64 rng(0x64656c7461ull);
  for (int t = 0; t < samples; ++t) {
    FpVec x(d, 0), y(d, 0);
    for (auto& c : x) c = rng() % f.p;
    for (auto& c : y) c = rng() % f.p;
    const FpVec xy = al.multiply(x, y);
    const FpVec lhs = delta(al, xy);
    const FpVec rhs =
        bl.project(gg_->multiply(ambient_delta(al.lift(x)), ambient_delta(al.lift(y))));
    if (lhs != rhs) throw Error("coproduct multiplicativity certification failed");
  }
}

// ---------------------------------------------------------------------------
// UnitGroup

namespace {
std::uint32_t bytes_for_residue(std::uint64_t max_value) {
  std::uint32_t w = 1;
  while (max_value > 0xffu) {
    max_value >>= 8;
    ++w;
  }
  return w;
}
}  // namespace

UnitGroup::UnitGroup(std::shared_ptr<const FpQuotient> alg, std::vector<FpVec> generator_vectors,
                     std::string name)
    : alg_(std::move(alg)) {
  width_ = bytes_for_residue(alg_->ambient().field().p - 1);
  name_ = std::move(name);
  identity_ = encode_vec(alg_->one());
  for (const auto& v : generator_vectors) {
    Elem e = encode_vec(v);
    if (std::find(generators_.begin(), generators_.end(), e) == generators_.end())
      generators_.push_back(std::move(e));
  }
}

Elem UnitGroup::encode_vec(const FpVec& v) const {
  Elem e;
  e.reserve(v.size() * width_);
  for (std::uint64_t c : v)
    for (std::uint32_t b = width_; b-- > 0;) e.push_back(static_cast<char>((c >> (8 * b)) & 0xffu));
  return e;
}

FpVec UnitGroup::decode_vec(const Elem& e) const {
  FpVec v(alg_->dim(), 0);
  std::size_t pos = 0;
  for (auto& c : v) {
    std::uint64_t x = 0;
    for (std::uint32_t b = 0; b < width_; ++b) x = (x << 8) | static_cast<std::uint8_t>(e[pos++]);
    c = x;
  }
  return v;
}

Elem UnitGroup::multiply(const Elem& a, const Elem& b) const {
  return encode_vec(alg_->multiply(decode_vec(a), decode_vec(b)));
}

Elem UnitGroup::invert(const Elem& a) const {
  // grouplike units have finite order: walk the cyclic group
  FpVec x = decode_vec(a);
  FpVec acc = x;
  FpVec prev = alg_->one();
  std::uint64_t guard = 0;
  while (encode_vec(acc) != identity_) {
    prev = acc;
    acc = alg_->multiply(acc, x);
    if (++guard > 1000000) throw Error("unit has no computable finite order");
  }
  return encode_vec(guard == 0 ? alg_->one() : prev);
}

// ---------------------------------------------------------------------------
// CompletionContext

CompletionContext::CompletionContext(GroupPtr g, std::uint64_t p, std::uint64_t cap)
    : g_(std::move(g)), p_(p), cap_(cap) {
  if (!is_prime_u64(p)) throw SpecError("completion needs a prime characteristic");
  a_ = std::make_shared<FpAlgebra>(build_group_algebra(g_, PrimeField{p}, cap));
  jf_ = j_power_filtration(*a_, a_->dim() + 1);  // dims strictly drop, so this always stabilizes
}

std::size_t CompletionContext::stable_index() const {
  if (!jf_.stable_index) throw Error("filtration did not stabilize");
  return *jf_.stable_index;
}

std::shared_ptr<const FpQuotient> CompletionContext::level(std::size_t l) {
  auto it = levels_.find(l);
  if (it != levels_.end()) return it->second;
  auto q = std::make_shared<FpQuotient>(quotient_algebra(a_, jf_, l));
  levels_.emplace(l, q);
  return q;
}

CoproductSystem& CompletionContext::coproduct() {
  if (!coproduct_) coproduct_ = std::make_unique<CoproductSystem>(a_, stable_index() + 1, cap_);
  return *coproduct_;
}

bool CompletionContext::is_grouplike(std::size_t l, const FpVec& x) {
  return coproduct().is_grouplike(*level(l), x);
}

std::shared_ptr<const UnitGroup> CompletionContext::unit_group(std::size_t l) {
  unit_image(l);
  return unit_groups_.at(l);
}

const Subgroup& CompletionContext::unit_image(std::size_t l) {
  auto it = unit_images_.find(l);
  if (it != unit_images_.end()) return it->second;

  auto al = level(l);
  std::vector<FpVec> gen_vecs;
  for (const Elem& s : a_->elements().generators()) gen_vecs.push_back(al->image_of(s));
  auto ug = std::make_shared<UnitGroup>(al, gen_vecs,
                                        "P_" + std::to_string(l) + "(" + g_->name() + ")");
  Subgroup p_l = Subgroup::whole_group(ug, cap_);
  // every element must pass the grouplike test through the coproduct
  CoproductSystem& cop = coproduct();
  cop.certify_well_defined(*al);
  for (const Elem& e : p_l.elements()) {
    if (!cop.is_grouplike(*al, ug->decode_vec(e)))
      throw GrouplikeViolation("unit image element failed Δ(x) = x⊗x");
  }
  unit_groups_.emplace(l, ug);
  auto [ins, ok] = unit_images_.emplace(l, std::move(p_l));
  return ins->second;
}

std::vector<FpVec> CompletionContext::grouplike_bruteforce(std::size_t l) {
  auto al = level(l);
  const std::size_t d = al->dim();
  const PrimeField f = a_->field();
  double size = 1;
  for (std::size_t i = 0; i + 1 < d; ++i) size *= static_cast<double>(f.p);
  if (size > static_cast<double>(std::uint64_t{1} << 22))
    throw SearchSpaceTooLarge("grouplike scan needs |field|^{dim-1} <= 2^22");

  CoproductSystem& cop = coproduct();
  std::vector<FpVec> found;
  FpVec x(d, 0);
  // free coordinates 1..d-1; coordinate 0 fixed by eps(x) = 1 (every
  // representative is a group element, so eps is the coordinate sum)
  while (true) {
    std::uint64_t sum = 0;
    for (std::size_t i = 1; i < d; ++i) sum += x[i];
    x[0] = (f.p + 1 - sum % f.p) % f.p;
    if (cop.is_grouplike(*al, x)) found.push_back(x);
    std::size_t k = 1;
    while (k < d && ++x[k] == f.p) x[k++] = 0;
    if (k == d) break;
    if (d == 1) break;
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::size_t CompletionContext::h1_dimension() const { return complab::h1_dimension(jf_); }

CompletionProfile CompletionContext::profile(std::size_t max_l) {
  CompletionProfile out;
  out.field = "F" + std::to_string(p_);
  out.j_dims = jf_.dims();
  out.j_stable_index = jf_.stable_index;
  const std::size_t n = stable_index();
  const std::size_t top = std::min(max_l, n);

  for (std::size_t l = 1; l <= top; ++l) {
    const Subgroup& pl = unit_image(l);
    CompletionLevelInfo info;
    info.level = l;
    info.order = pl.order();
    info.abelian = is_abelian(pl);
    if (info.abelian) info.invariants = abelian_invariants(pl, cap_);
    out.levels.push_back(std::move(info));
  }

  // transitions P_{l+1} -> P_l through the algebra projections
  for (std::size_t l = 1; l < top; ++l) {
    const Subgroup& hi = unit_image(l + 1);
    const Subgroup& lo = unit_image(l);
    auto hi_g = unit_groups_.at(l + 1);
    auto lo_g = unit_groups_.at(l);
    auto lo_alg = levels_.at(l);
    auto down = [&](const Elem& e) {
      return lo_g->encode_vec(lo_alg->project(hi_g->algebra().lift(hi_g->decode_vec(e))));
    };
    // homomorphism + surjectivity certification
    for (const Elem& x : hi.elements())
      for (const Elem& s : hi.generators())
        if (down(hi_g->multiply(x, s)) != lo_g->multiply(down(x), down(s)))
          throw Error("transition map is not a homomorphism");
    std::vector<Elem> image;
    for (const Elem& x : hi.elements()) image.push_back(down(x));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    const bool surj = image == lo.elements();
    out.levels[l - 1].transition_surjective = surj;
    out.levels[l - 1].transition_bijective = surj && hi.order() == lo.order();
  }

  if (n <= max_l) {
    out.stable_level = n;
    // the filtration is flat past n, so A_{n+1} = A_n and the next
    // transition is the identity
    if (!out.levels.empty()) {
      out.levels.back().transition_surjective = true;
      out.levels.back().transition_bijective = true;
    }
    out.stable_fingerprint = fingerprint(unit_image(n), cap_);

    // graded comparison |P^i/P^{i+1}| vs p^{dim J^i/J^{i+1}} at the stable level
    const Subgroup& p_stable = unit_image(n);
    auto ug = unit_groups_.at(n);
    auto al = levels_.at(n);
    std::vector<std::uint64_t> filtration_orders;  // |P^i| for i = 1..n+1
    for (std::size_t i = 1; i <= n + 1; ++i) {
      std::uint64_t count = 0;
      for (const Elem& e : p_stable.elements()) {
        FpVec lifted = al->lift(ug->decode_vec(e));
        lifted[a_->identity_index()] =
            a_->field().sub(lifted[a_->identity_index()], a_->field().one());
        if (jf_.level(std::min(i, n)).contains(lifted)) ++count;
      }
      filtration_orders.push_back(count);
    }
    for (std::size_t i = 1; i <= n; ++i) {
      GradedCompareRow row;
      row.index = i;
      row.p_graded_order = filtration_orders[i - 1] / filtration_orders[i];
      std::uint64_t pw = 1;
      const std::size_t drop = jf_.dim(std::min(i, n)) - jf_.dim(std::min(i + 1, n));
      for (std::size_t k = 0; k < drop; ++k) pw *= p_;
      row.j_graded_order = pw;
      row.match = row.p_graded_order == row.j_graded_order;
      out.graded.push_back(row);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// wrappers

std::size_t h1_dimension(const FpFiltration& jf) { return jf.dim(1) - jf.dim(2); }
std::size_t h1_dimension(const JFiltration<RationalField>& jf) { return jf.dim(1) - jf.dim(2); }

H1Comparison h1_group_vs_pl(GroupPtr g, std::uint64_t p, std::size_t l, std::uint64_t cap) {
  CompletionContext ctx(std::move(g), p, cap);
  H1Comparison cmp;
  cmp.h1_group = ctx.h1_dimension();
  const std::size_t use_l = std::min(l, ctx.stable_index());
  auto ug = ctx.unit_group(use_l);
  FpAlgebra kp = build_group_algebra(ug, PrimeField{p}, cap);
  auto jf = j_power_filtration(kp, 2);
  cmp.h1_pl = h1_dimension(jf);
  cmp.equal = cmp.h1_group == cmp.h1_pl;
  return cmp;
}

FpVsPComparison fp_vs_pcompletion(GroupPtr g, std::uint64_t p, std::uint64_t cap) {
  FpVsPComparison cmp;
  Subgroup whole = Subgroup::whole_group(g, cap);
  auto terms = p_lower_central_series_terms(whole, p, cap);
  for (const auto& t : terms) cmp.plcs_orders.push_back(t.order());
  const Subgroup& stable = terms.back();
  GroupPtr q = quotient_group(whole, stable, cap);
  cmp.group_side = fingerprint(Subgroup::whole_group(q, cap), cap);

  CompletionContext ctx(g, p, cap);
  CompletionProfile prof = ctx.profile(ctx.stable_index());
  if (!prof.stable_fingerprint) throw Error("completion profile did not stabilize");
  cmp.completion_side = *prof.stable_fingerprint;
  cmp.match = cmp.group_side == cmp.completion_side;
  return cmp;
}

CompletionProfile rational_completion_profile(GroupPtr g, std::uint64_t cap) {
  // J^2 = J for finite groups over Q on the abelian corpus; the profile is
  // trivial at every level. Computed only where the closed form applies.
  Subgroup whole = Subgroup::whole_group(g, cap);
  if (!is_abelian(whole))
    throw SpecError("char-0 profiles are computed analytically for abelian groups only");
  CompletionProfile out;
  out.field = "Q";
  GroupAlgebra<RationalField> a = build_group_algebra(g, RationalField{}, cap);
  auto jf = j_power_filtration(a, a.dim() + 1);
  out.j_dims = jf.dims();
  out.j_stable_index = jf.stable_index;
  CompletionLevelInfo info;
  info.level = 1;
  info.order = 1;
  info.abelian = true;
  info.transition_surjective = true;
  info.transition_bijective = true;
  out.levels.push_back(info);
  out.stable_level = jf.stable_index;
  GroupFingerprint fp;
  out.stable_fingerprint = fp;  // trivial group
  out.notes = "char 0: unipotent completion of a finite abelian group is trivial";
  return out;
}

}  // namespace complab
