#include "complab/hom.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "complab/field.hpp"

namespace complab {

GroupHom::GroupHom(GroupPtr dom, GroupPtr cod, Fn fn, std::string desc)
    : dom_(std::move(dom)), cod_(std::move(cod)), fn_(std::move(fn)), desc_(std::move(desc)) {}

void GroupHom::certify_homomorphism(const Subgroup& dom_elems) const {
  const FiniteGroup& G = *dom_;
  const FiniteGroup& H = *cod_;
  if (apply(G.identity()) != H.identity()) throw Error("hom certification failed: identity");
  const auto& elems = dom_elems.elements();
  if (elems.size() <= 256) {
    for (const Elem& x : elems)
      for (const Elem& y : elems)
        if (apply(G.multiply(x, y)) != H.multiply(apply(x), apply(y)))
          throw Error("hom certification failed: f(xy) != f(x)f(y)");
    return;
  }
  for (const Elem& x : elems)
    for (const Elem& s : dom_elems.generators())
      if (apply(G.multiply(x, s)) != H.multiply(apply(x), apply(s)))
        throw Error("hom certification failed: f(xs) != f(x)f(s)");
}

void GroupHom::certify_surjective(const Subgroup& dom_elems, std::uint64_t cod_order) const {
  std::unordered_set<Elem> image;
  for (const Elem& x : dom_elems.elements()) image.insert(apply(x));
  if (image.size() != cod_order) throw NotSurjective("map is not onto the stated codomain");
}

namespace {

// entrywise ring reduction for matrix encodings
GroupHom matrix_reduction(GroupPtr dom, GroupPtr cod) {
  const auto* md = dynamic_cast<const MatrixGroup*>(dom.get());
  const auto* mc = dynamic_cast<const MatrixGroup*>(cod.get());
  const RingSpec rd = md->ops().ring().spec();
  const RingSpec rc = mc->ops().ring().spec();
  const std::uint32_t n = md->ops().n();
  if (mc->ops().n() != n) throw SpecError("no canonical reduction: matrix sizes differ");

  enum class Mode { ModM, Truncate, ConstTerm };
  Mode mode;
  if (rd.kind == RingSpec::Kind::Zmod && rc.kind == RingSpec::Kind::Zmod) {
    if (rc.m < 2 || rd.m % rc.m != 0) throw SpecError("no canonical reduction: moduli not nested");
    mode = Mode::ModM;
  } else if (rd.kind == RingSpec::Kind::PolyTrunc && rc.kind == RingSpec::Kind::PolyTrunc) {
    if (rd.p != rc.p || rc.l > rd.l) throw SpecError("no canonical reduction: poly rings not nested");
    mode = Mode::Truncate;
  } else if (rd.kind == RingSpec::Kind::PolyTrunc && rc.kind == RingSpec::Kind::Zmod) {
    if (rc.m != rd.p) throw SpecError("no canonical reduction: constant-term ring mismatch");
    mode = Mode::ConstTerm;
  } else {
    throw SpecError("no canonical reduction between these rings");
  }

  auto fn = [md, mc, mode, rc, n](const Elem& x) {
    std::vector<std::uint64_t> a(md->ops().mat_words());
    std::vector<std::uint64_t> b(mc->ops().mat_words());
    md->decode(x, a.data());
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) {
        const std::uint64_t* src = md->ops().entry(a.data(), i, j);
        std::uint64_t* dst = mc->ops().entry(b.data(), i, j);
        switch (mode) {
          case Mode::ModM:
            dst[0] = src[0] % rc.m;
            break;
          case Mode::Truncate:
            for (std::uint32_t w = 0; w < rc.l; ++w) dst[w] = src[w];
            break;
          case Mode::ConstTerm:
            dst[0] = src[0];
            break;
        }
      }
    return mc->encode(b.data());
  };
  return GroupHom(dom, cod, fn, "entrywise ring reduction");
}

}  // namespace

GroupHom canonical_reduction(GroupPtr dom, GroupPtr cod) {
  const GroupSpec* sd = dom->spec();
  const GroupSpec* sc = cod->spec();
  if (!sd || !sc) throw SpecError("canonical reduction needs spec-constructed groups");
  if (*sd == *sc) {
    return GroupHom(dom, cod, [](const Elem& x) { return x; }, "identity");
  }
  if (sd->kind == GroupSpec::Kind::Cyclic && sc->kind == GroupSpec::Kind::Cyclic) {
    if (sc->n < 1 || sd->n % sc->n != 0) throw SpecError("no canonical reduction: cyclic orders not nested");
    const auto* cd = dynamic_cast<const CyclicGroup*>(dom.get());
    const auto* cc = dynamic_cast<const CyclicGroup*>(cod.get());
    auto fn = [cd, cc](const Elem& x) { return cc->encode(cd->decode(x) % cc->modulus()); };
    return GroupHom(dom, cod, fn, "residue reduction");
  }
  if (sd->kind == GroupSpec::Kind::Product && sc->kind == GroupSpec::Kind::Product) {
    const auto* pd = dynamic_cast<const ProductGroup*>(dom.get());
    const auto* pc = dynamic_cast<const ProductGroup*>(cod.get());
    if (pd->factors().size() != pc->factors().size())
      throw SpecError("no canonical reduction: product lengths differ");
    std::vector<GroupHom> comps;
    for (std::size_t i = 0; i < pd->factors().size(); ++i)
      comps.push_back(canonical_reduction(pd->factors()[i], pc->factors()[i]));
    auto fn = [pd, pc, comps](const Elem& x) {
      std::vector<Elem> parts = pd->split(x);
      std::vector<Elem> out;
      out.reserve(parts.size());
      for (std::size_t i = 0; i < parts.size(); ++i) out.push_back(comps[i].apply(parts[i]));
      return pc->join(out);
    };
    return GroupHom(dom, cod, fn, "componentwise reduction");
  }
  const bool dom_matrix = sd->kind == GroupSpec::Kind::SL ||
                          sd->kind == GroupSpec::Kind::CongruenceKernel ||
                          sd->kind == GroupSpec::Kind::Unitriangular;
  const bool cod_matrix = sc->kind == GroupSpec::Kind::SL ||
                          sc->kind == GroupSpec::Kind::CongruenceKernel ||
                          sc->kind == GroupSpec::Kind::Unitriangular;
  if (dom_matrix && cod_matrix) return matrix_reduction(dom, cod);
  throw SpecError("no canonical reduction between " + sd->str() + " and " + sc->str());
}

GroupHom hom_from_generator_images(GroupPtr dom, GroupPtr cod, std::vector<Elem> images,
                                   std::uint64_t cap) {
  const std::vector<Elem>& gens = dom->generators();
  if (images.size() != gens.size())
    throw SpecError("generator image count does not match the domain generator list");
  WordTable wt = bfs_words(*dom, gens, cap);
  auto table = std::make_shared<std::unordered_map<Elem, Elem>>();
  for (const Elem& x : wt.elements) {
    Elem img = cod->identity();
    for (std::size_t gi : wt.word_of(x, dom->identity())) img = cod->multiply(img, images[gi]);
    table->emplace(x, std::move(img));
  }
  auto fn = [table](const Elem& x) {
    auto it = table->find(x);
    if (it == table->end()) throw Error("element outside the mapped domain");
    return it->second;
  };
  return GroupHom(std::move(dom), std::move(cod), fn, "generator-image map");
}

GroupHom quotient_projection(GroupPtr quotient, GroupPtr parent_of_numerator) {
  auto q = std::dynamic_pointer_cast<const QuotientGroup>(quotient);
  if (!q) throw SpecError("quotient_projection needs a quotient group");
  auto fn = [q](const Elem& x) { return q->coset_of(x); };
  return GroupHom(std::move(parent_of_numerator), std::move(quotient), fn, "coset projection");
}

// ---------------------------------------------------------------------------

std::string to_string(SectionSearchResult::Verdict v) {
  switch (v) {
    case SectionSearchResult::Verdict::FOUND:
      return "FOUND";
    case SectionSearchResult::Verdict::NONE:
      return "NONE";
    case SectionSearchResult::Verdict::INCONCLUSIVE:
      return "INCONCLUSIVE";
  }
  return "?";
}

std::vector<Elem> default_section_generators(const Subgroup& q_elems, std::uint64_t cap) {
  const GroupPtr& q = q_elems.parent();
  const GroupSpec* spec = q->spec();
  if (spec && spec->kind == GroupSpec::Kind::SL) {
    // standard generating pair: E_12(1) and the signed n-cycle
    const auto* mg = dynamic_cast<const MatrixGroup*>(q.get());
    const MatrixOps& ops = mg->ops();
    const Ring& R = ops.ring();
    const std::uint32_t n = ops.n();
    std::vector<std::uint64_t> m(ops.mat_words());
    ops.set_identity(m.data());
    R.set_one(ops.entry(m.data(), 0, 1));
    Elem e12 = mg->encode(m.data());
    for (auto& w : m) w = 0;
    // cycle e_1 -> e_2 -> ... -> e_n -> (-1)^{n-1} e_1 so the determinant is 1
    for (std::uint32_t i = 0; i + 1 < n; ++i) R.set_one(ops.entry(m.data(), i + 1, i));
    R.set_from_int(ops.entry(m.data(), 0, n - 1), (n % 2 == 0) ? -1 : 1);
    Elem cyc = mg->encode(m.data());
    std::vector<Elem> pair = {e12, cyc};
    if (bfs_closure(*q, pair, cap).size() == q_elems.order()) return pair;
  }
  // the shortest generating prefix of the canonical generator list
  std::vector<Elem> prefix;
  for (const Elem& s : q_elems.generators()) {
    prefix.push_back(s);
    if (bfs_closure(*q, prefix, cap).size() == q_elems.order()) return prefix;
  }
  throw Error("generator list does not generate the group");
}

SectionSearchResult find_section(const Subgroup& g, const GroupHom& q,
                                 const std::vector<Elem>& q_gens, const SectionSearchCaps& caps) {
  SectionSearchResult res;
  const FiniteGroup& G = *g.parent();
  const FiniteGroup& Q = *q.cod();
  if (g.order() > caps.domain_cap) {
    res.reason = "domain cap exceeded";
    return res;
  }
  // fibers over the chosen generators, canonically ordered
  Subgroup q_all = Subgroup::whole_group(q.cod(), caps.domain_cap);
  const std::uint64_t target = q_all.order();
  if (bfs_closure(Q, q_gens, caps.domain_cap).size() != target)
    throw SpecError("find_section: q_gens do not generate the quotient");

  std::vector<std::vector<Elem>> fibers(q_gens.size());
  for (const Elem& x : g.elements()) {
    Elem img = q.apply(x);
    for (std::size_t i = 0; i < q_gens.size(); ++i)
      if (img == q_gens[i]) fibers[i].push_back(x);
  }
  std::uint64_t tuple_count = 1;
  for (auto& f : fibers) {
    if (f.empty()) throw NotSurjective("a chosen generator has an empty fiber");
    if (f.size() > caps.fiber_cap) {
      res.reason = "fiber cap exceeded";
      return res;
    }
    if (tuple_count > caps.tuple_cap / f.size()) {
      res.reason = "tuple cap exceeded";
      return res;
    }
    tuple_count *= f.size();
  }

  const Elem& id = G.identity();
  std::vector<std::size_t> odo(fibers.size(), 0);
  std::vector<Elem> lifts(fibers.size());
  while (true) {
    for (std::size_t i = 0; i < fibers.size(); ++i) lifts[i] = fibers[i][odo[i]];
    ++res.tuples_tried;
    // bounded closure: reject as soon as the subgroup outgrows |Q| or meets
    // the kernel nontrivially
    bool ok = true;
    {
      std::unordered_set<Elem> seen;
      std::vector<Elem> queue;
      seen.insert(id);
      queue.push_back(id);
      for (std::size_t head = 0; head < queue.size() && ok; ++head) {
        for (const Elem& s : lifts) {
          Elem y = G.multiply(queue[head], s);
          if (seen.contains(y)) continue;
          if (y != id && q.apply(y) == Q.identity()) {
            ok = false;  // meets ker q
            break;
          }
          if (seen.size() + 1 > target) {
            ok = false;  // outgrew |Q|
            break;
          }
          seen.insert(y);
          queue.push_back(std::move(y));
        }
      }
      if (ok && seen.size() != target) ok = false;
    }
    if (ok) {
      res.verdict = SectionSearchResult::Verdict::FOUND;
      res.images = lifts;
      return res;
    }
    // odometer, last coordinate fastest
    std::size_t k = fibers.size();
    while (k > 0) {
      --k;
      if (++odo[k] < fibers[k].size()) break;
      odo[k] = 0;
      if (k == 0) {
        res.verdict = SectionSearchResult::Verdict::NONE;
        return res;
      }
    }
  }
}

// ---------------------------------------------------------------------------

std::string to_string(ObstructionResult::Verdict v) {
  switch (v) {
    case ObstructionResult::Verdict::NONSPLIT_CERTIFIED:
      return "NONSPLIT_CERTIFIED";
    case ObstructionResult::Verdict::INCONCLUSIVE:
      return "INCONCLUSIVE";
  }
  return "?";
}

ObstructionResult elementary_complement_obstruction(const Subgroup& g, const GroupHom& q,
                                                    std::uint64_t cap) {
  if (g.order() > cap) throw EnumerationLimit(cap);
  Subgroup image = Subgroup::whole_group(q.cod(), cap);
  auto rank = elementary_abelian_rank(image, cap);
  if (!rank || image.trivial())
    throw NotElementaryAbelian("obstruction needs a nontrivial elementary abelian image");
  const std::uint64_t p = subgroup_exponent(image, cap);

  const FiniteGroup& G = *g.parent();
  std::unordered_map<Elem, bool> fiber_has_low_order;
  for (const Elem& y : image.elements()) fiber_has_low_order.emplace(y, false);
  for (const Elem& x : g.elements()) {
    if (G.power(x, p) == G.identity()) fiber_has_low_order[q.apply(x)] = true;
  }
  ObstructionResult res;
  for (const Elem& y : image.elements()) {
    if (!fiber_has_low_order.at(y)) {
      ++res.cosets_without_low_order;
      if (!res.witness_coset) res.witness_coset = y;
    }
  }
  res.verdict = res.cosets_without_low_order > 0 ? ObstructionResult::Verdict::NONSPLIT_CERTIFIED
                                                 : ObstructionResult::Verdict::INCONCLUSIVE;
  return res;
}

}  // namespace complab
