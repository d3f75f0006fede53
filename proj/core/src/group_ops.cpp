#include "complab/group_ops.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "complab/field.hpp"

namespace complab {

std::string to_string(CompareFlag f) {
  switch (f) {
    case CompareFlag::EQUAL:
      return "EQUAL";
    case CompareFlag::PROPER_SUBGROUP:
      return "PROPER_SUBGROUP";
    case CompareFlag::INCOMPARABLE:
      return "INCOMPARABLE";
  }
  return "?";
}

namespace {

Elem commutator(const FiniteGroup& g, const Elem& x, const Elem& y) {
  return g.multiply(g.multiply(g.invert(x), g.invert(y)), g.multiply(x, y));
}

// Incremental closure under multiplication: keeps a small effective
// generating sublist; the sub-semigroup containing 1 closed under right
// multiplication by it is the generated subgroup (finite group).
class ClosureSet {
 public:
  ClosureSet(const FiniteGroup& g, std::uint64_t cap) : g_(g), cap_(cap) {
    seen_.insert(g.identity());
    order_.push_back(g.identity());
  }

  bool contains(const Elem& x) const { return seen_.contains(x); }
  std::uint64_t size() const { return seen_.size(); }

  // add x as a generator if not already in the closure; re-expands
  void add(const Elem& x) {
    if (seen_.contains(x)) return;
    gens_.push_back(x);
    insert(x);
    std::size_t head = 0;
    // sweep every known element against every effective generator
    std::vector<Elem> queue = order_;
    while (head < queue.size()) {
      Elem cur = queue[head++];
      for (const Elem& s : gens_) {
        Elem y = g_.multiply(cur, s);
        if (insert(y)) queue.push_back(std::move(y));
      }
    }
  }

  std::vector<Elem> sorted_elements() const {
    std::vector<Elem> out(order_);
    std::sort(out.begin(), out.end());
    return out;
  }
  const std::vector<Elem>& generators_used() const { return gens_; }

 private:
  bool insert(const Elem& x) {
    if (!seen_.insert(x).second) return false;
    if (seen_.size() > cap_) throw EnumerationLimit(cap_);
    order_.push_back(x);
    return true;
  }
  const FiniteGroup& g_;
  std::uint64_t cap_;
  std::unordered_set<Elem> seen_;
  std::vector<Elem> order_;
  std::vector<Elem> gens_;
};

}  // namespace

Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b, std::uint64_t cap) {
  if (a.parent() != b.parent()) throw Error("commutator_subgroup: mismatched parents");
  const FiniteGroup& g = *a.parent();
  ClosureSet closure(g, cap);
  for (const Elem& x : a.elements())
    for (const Elem& s : b.generators()) closure.add(commutator(g, x, s));
  // fixpoint: commutators of new elements with b's generators, and
  // conjugates by b's generators
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Elem> snapshot = closure.sorted_elements();
    for (const Elem& h : snapshot) {
      for (const Elem& s : b.generators()) {
        const Elem c = commutator(g, h, s);
        if (!closure.contains(c)) {
          closure.add(c);
          grew = true;
        }
        const Elem conj = g.multiply(g.multiply(g.invert(s), h), s);
        if (!closure.contains(conj)) {
          closure.add(conj);
          grew = true;
        }
      }
    }
  }
  return Subgroup::from_elements(a.parent(), closure.sorted_elements(), closure.generators_used());
}

namespace {

// terms descend until trivial or until the first repeat
template <class NextTerm>
std::vector<Subgroup> descend_series(const Subgroup& g, NextTerm next) {
  std::vector<Subgroup> terms;
  terms.push_back(g);
  while (true) {
    Subgroup n = next(terms.back());
    if (!terms.back().contains_all(n)) throw Error("series term is not contained in its predecessor");
    const bool stable = n.same_set(terms.back());
    const bool trivial = n.trivial();
    terms.push_back(std::move(n));
    if (trivial || stable) break;
  }
  // drop the duplicate trailing trivial term ([9,1] rather than [9,1,1]),
  // keep a nontrivial repeat as evidence of stability ([4,4])
  const std::size_t k = terms.size();
  if (k >= 2 && terms[k - 1].trivial() && terms[k - 2].trivial()) terms.pop_back();
  return terms;
}

SeriesReport report_from_terms(std::string kind, const std::vector<Subgroup>& terms,
                               std::uint64_t cap) {
  SeriesReport r;
  r.kind = std::move(kind);
  for (const auto& t : terms) r.orders.push_back(t.order());
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
    SeriesStep step;
    step.graded_order = terms[i].order() / terms[i + 1].order();
    if (terms[i].same_set(terms[i + 1])) {
      step.graded_order = 1;
      step.elementary_rank = 0;
    } else {
      GroupPtr q = quotient_group(terms[i], terms[i + 1], cap);
      Subgroup qs = Subgroup::whole_group(q, cap);
      auto rank = elementary_abelian_rank(qs, cap);
      if (rank)
        step.elementary_rank = rank;
      else
        step.not_elementary = true;
    }
    r.steps.push_back(step);
  }
  return r;
}

}  // namespace

std::vector<Subgroup> lower_central_series_terms(const Subgroup& g, std::uint64_t cap) {
  return descend_series(g, [&](const Subgroup& t) { return commutator_subgroup(t, g, cap); });
}

std::vector<Subgroup> p_lower_central_series_terms(const Subgroup& g, std::uint64_t p,
                                                   std::uint64_t cap) {
  const FiniteGroup& G = *g.parent();
  return descend_series(g, [&](const Subgroup& t) {
    Subgroup comm = commutator_subgroup(t, g, cap);
    std::vector<Elem> gens = comm.elements();
    for (const Elem& x : t.elements()) gens.push_back(G.power(x, p));
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return Subgroup::closure(g.parent(), std::move(gens), cap);
  });
}

SeriesReport lower_central_series(const Subgroup& g, std::uint64_t cap) {
  return report_from_terms("lcs", lower_central_series_terms(g, cap), cap);
}

SeriesReport p_lower_central_series(const Subgroup& g, std::uint64_t p, std::uint64_t cap) {
  return report_from_terms("plcs", p_lower_central_series_terms(g, p, cap), cap);
}

Subgroup center(const Subgroup& g, std::uint64_t cap) {
  const FiniteGroup& G = *g.parent();
  std::vector<Elem> candidates;
  for (const Elem& z : g.elements()) {
    bool commutes = true;
    for (const Elem& s : g.generators()) {
      if (G.multiply(z, s) != G.multiply(s, z)) {
        commutes = false;
        break;
      }
    }
    if (commutes) candidates.push_back(z);
  }
  // certify against the full element set
  for (const Elem& z : candidates)
    for (const Elem& x : g.elements())
      if (G.multiply(z, x) != G.multiply(x, z)) throw Error("center certification failed");
  if (candidates.size() > cap) throw EnumerationLimit(cap);
  return Subgroup::from_elements(g.parent(), candidates, candidates);
}

bool is_abelian(const Subgroup& a) {
  const FiniteGroup& G = *a.parent();
  const auto& e = a.elements();
  if (e.size() <= 4096) {
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j)
        if (G.multiply(e[i], e[j]) != G.multiply(e[j], e[i])) return false;
    return true;
  }
  for (const Elem& s : a.generators())
    for (const Elem& x : e)
      if (G.multiply(s, x) != G.multiply(x, s)) return false;
  return true;
}

std::uint64_t subgroup_exponent(const Subgroup& a, std::uint64_t cap) {
  std::uint64_t exp = 1;
  const FiniteGroup& G = *a.parent();
  for (const Elem& x : a.elements()) exp = std::lcm(exp, G.element_order(x, cap));
  return exp;
}

std::optional<std::uint32_t> elementary_abelian_rank(const Subgroup& a, std::uint64_t cap) {
  if (a.trivial()) return 0;
  if (!is_abelian(a)) return std::nullopt;
  const std::uint64_t exp = subgroup_exponent(a, cap);
  if (!is_prime_u64(exp)) return std::nullopt;
  std::uint64_t order = a.order();
  std::uint32_t rank = 0;
  while (order % exp == 0) {
    order /= exp;
    ++rank;
  }
  return order == 1 ? std::optional<std::uint32_t>(rank) : std::nullopt;
}

std::vector<std::uint64_t> abelian_invariants(const Subgroup& a, std::uint64_t cap) {
  if (!is_abelian(a)) throw NotAbelian("abelian_invariants needs an abelian subgroup");
  const FiniteGroup& G = *a.parent();
  std::vector<std::uint64_t> out;
  std::uint64_t order = a.order();
  if (order == 1) return out;
  // primes dividing the order, ascending
  std::vector<std::uint64_t> primes;
  std::uint64_t rest = order;
  for (std::uint64_t d = 2; d * d <= rest; ++d)
    if (rest % d == 0) {
      primes.push_back(d);
      while (rest % d == 0) rest /= d;
    }
  if (rest > 1) primes.push_back(rest);

  for (std::uint64_t p : primes) {
    // rank sequence of the p-th power subgroups: m_j = log_p |H_j / H_{j+1}|
    // counts the invariant factors with exponent > j
    std::vector<std::uint64_t> sizes;
    Subgroup h = a;
    sizes.push_back(h.order());
    while (true) {
      std::vector<Elem> powers;
      powers.reserve(h.order());
      for (const Elem& x : h.elements()) powers.push_back(G.power(x, p));
      std::sort(powers.begin(), powers.end());
      powers.erase(std::unique(powers.begin(), powers.end()), powers.end());
      Subgroup next = Subgroup::closure(a.parent(), std::move(powers), cap);
      const bool done = next.order() == h.order();
      sizes.push_back(next.order());
      h = std::move(next);
      if (done) break;
    }
    std::vector<std::uint32_t> m;  // m_j
    for (std::size_t j = 0; j + 1 < sizes.size(); ++j) {
      std::uint64_t ratio = sizes[j] / sizes[j + 1];
      std::uint32_t log = 0;
      while (ratio % p == 0) {
        ratio /= p;
        ++log;
      }
      if (ratio != 1) throw Error("power-subgroup index is not a p-power");
      m.push_back(log);
    }
    for (std::size_t j = 1; j <= m.size(); ++j) {
      const std::uint32_t count = (j < m.size() ? m[j - 1] - m[j] : m[j - 1]);
      std::uint64_t pj = 1;
      for (std::size_t i = 0; i < j; ++i) pj *= p;
      for (std::uint32_t c = 0; c < count; ++c) out.push_back(pj);
    }
  }
  // sanity: the invariant factors multiply to the order
  std::uint64_t prod = 1;
  for (std::uint64_t v : out) prod *= v;
  if (prod != a.order()) throw Error("abelian invariant factorization check failed");
  return out;
}

std::string GroupFingerprint::str() const {
  std::ostringstream os;
  os << "order=" << order << " exponent=" << exponent << " ab=[";
  for (std::size_t i = 0; i < abelianization.size(); ++i) {
    if (i) os << ",";
    os << abelianization[i];
  }
  os << "] dlen=" << derived_length;
  return os.str();
}

GroupFingerprint fingerprint(const Subgroup& g, std::uint64_t cap) {
  GroupFingerprint fp;
  fp.order = g.order();
  fp.exponent = subgroup_exponent(g, cap);
  // derived series
  std::uint32_t dlen = 0;
  Subgroup d = g;
  Subgroup derived = commutator_subgroup(d, d, cap);
  if (!g.trivial()) {
    dlen = 1;
    while (!derived.trivial()) {
      Subgroup next = commutator_subgroup(derived, derived, cap);
      if (next.same_set(derived)) throw Error("derived series does not terminate (perfect subgroup)");
      derived = std::move(next);
      ++dlen;
    }
  }
  fp.derived_length = dlen;
  Subgroup d1 = commutator_subgroup(g, g, cap);
  GroupPtr ab = quotient_group(g, d1, cap);
  fp.abelianization = abelian_invariants(Subgroup::whole_group(ab, cap), cap);
  return fp;
}

namespace {

SeriesReport filtration_vs_lcs(const std::string& kind, std::uint64_t n, RingSpec ring,
                               std::uint32_t depth, std::uint64_t cap, std::string notes) {
  // K^i for i = 1..depth, with K^depth trivial by ideal nilpotency
  GroupPtr k1 = construct_group(GroupSpec::congruence_kernel(n, ring, 1));
  Subgroup k1s = Subgroup::whole_group(k1, cap);
  std::vector<Subgroup> kfilt;
  kfilt.push_back(k1s);
  for (std::uint32_t i = 2; i < depth; ++i) {
    GroupPtr ki = construct_group(GroupSpec::congruence_kernel(n, ring, i));
    Subgroup kis = Subgroup::whole_group(ki, cap);
    // re-house K^i inside K^1 (same matrix encodings)
    kfilt.push_back(Subgroup::from_elements(k1, kis.elements(), kis.generators()));
  }
  kfilt.push_back(Subgroup::from_elements(k1, {k1->identity()}, {k1->identity()}));

  std::vector<Subgroup> lcs = lower_central_series_terms(k1s, cap);
  SeriesReport r = report_from_terms(kind, lcs, cap);
  for (const auto& k : kfilt) r.reference_orders.push_back(k.order());
  const std::size_t levels = std::max(kfilt.size(), lcs.size());
  for (std::size_t i = 0; i < levels; ++i) {
    if (i >= lcs.size() || i >= kfilt.size()) {
      r.level_flags.push_back(CompareFlag::INCOMPARABLE);
      continue;
    }
    if (lcs[i].same_set(kfilt[i]))
      r.level_flags.push_back(CompareFlag::EQUAL);
    else if (kfilt[i].contains_all(lcs[i]))
      r.level_flags.push_back(CompareFlag::PROPER_SUBGROUP);
    else
      r.level_flags.push_back(CompareFlag::INCOMPARABLE);
  }
  r.notes = std::move(notes);
  return r;
}

}  // namespace

SeriesReport congruence_filtration_report(std::uint64_t n, std::uint64_t p, std::uint32_t m,
                                          std::uint64_t cap) {
  if (!is_prime_u64(p)) throw SpecError("congruence filtration needs a prime p");
  std::uint64_t pm = 1;
  for (std::uint32_t i = 0; i < m; ++i) pm *= p;
  return filtration_vs_lcs(
      "congruence", n, RingSpec::zmod(pm), m, cap,
      "finite model: Gamma(n,p)/Gamma(n,p^m) identified with ker(SL_n(Z/p^m) -> SL_n(Z/p)) "
      "(strong approximation assumed)");
}

SeriesReport truncated_sl_filtration_report(std::uint64_t n, std::uint64_t p, std::uint32_t l,
                                            std::uint64_t cap) {
  return filtration_vs_lcs("truncated-sl", n, RingSpec::poly_trunc(p, l), l, cap,
                           "K^i = ker(SL_n(F_p[t]/t^l) -> SL_n(F_p[t]/t^i))");
}

}  // namespace complab
