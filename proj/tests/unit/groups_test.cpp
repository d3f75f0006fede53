#include <doctest.h>

#include <set>

#include "complab/group.hpp"
#include "complab/group_ops.hpp"
#include "complab/hom.hpp"

using namespace complab;

namespace {
constexpr std::uint64_t kCap = kDefaultEnumerationCap;

Subgroup whole(const GroupSpec& spec, std::uint64_t cap = kCap) {
  return Subgroup::whole_group(construct_group(spec), cap);
}

// independent oracle for the level-1 congruence kernel in SL_3(Z/4):
// all I + 2A with A over {0,1} entries, det = 1 mod 4
std::set<std::string> kernel_oracle_z4() {
  std::set<std::string> out;
  for (int mask = 0; mask < (1 << 9); ++mask) {
    long m[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        long a = (mask >> (3 * i + j)) & 1;
        m[i][j] = ((i == j ? 1 : 0) + 2 * a) % 4;
      }
    long det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    det %= 4;
    if (det < 0) det += 4;
    if (det != 1) continue;
    std::string enc;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) enc.push_back(static_cast<char>(m[i][j]));
    out.insert(enc);
  }
  return out;
}
}  // namespace

TEST_CASE("construct_group and enumeration orders") {
  CHECK(whole(GroupSpec::cyclic(4)).order() == 4);
  CHECK(whole(GroupSpec::cyclic(6), 10).order() == 6);
  CHECK(whole(GroupSpec::sl(3, RingSpec::zmod(2))).order() == 168);
  CHECK(whole(GroupSpec::sl(3, RingSpec::poly_trunc(2, 2)), 1000000).order() == 43008);
  CHECK(whole(GroupSpec::unitriangular(3, 2)).order() == 8);
  CHECK(whole(GroupSpec::unitriangular(3, 3)).order() == 27);
  CHECK(whole(GroupSpec::product({GroupSpec::cyclic(2), GroupSpec::cyclic(3)})).order() == 6);
}

TEST_CASE("congruence kernel enumeration matches the direct oracle") {
  Subgroup k = whole(GroupSpec::congruence_kernel(3, RingSpec::zmod(4), 1));
  CHECK(k.order() == 256);
  std::set<std::string> oracle = kernel_oracle_z4();
  REQUIRE(oracle.size() == 256);
  for (const Elem& e : k.elements()) CHECK(oracle.count(e) == 1);

  CHECK(whole(GroupSpec::congruence_kernel(3, RingSpec::zmod(8), 1), 100000).order() == 65536);
  CHECK(whole(GroupSpec::congruence_kernel(3, RingSpec::zmod(8), 2)).order() == 256);
  CHECK(whole(GroupSpec::congruence_kernel(3, RingSpec::zmod(9), 1)).order() == 6561);
}

TEST_CASE("enumeration cap fails loudly") {
  CHECK_THROWS_AS(whole(GroupSpec::cyclic(100), 10), EnumerationLimit);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(GroupSpec::unitriangular(3, 4), SpecError);
  CHECK_THROWS_AS(RingSpec::poly_trunc(4, 2), SpecError);
  CHECK_THROWS_AS(GroupSpec::congruence_kernel(3, RingSpec::zmod(12), 1), SpecError);
  CHECK_THROWS_AS(GroupSpec::congruence_kernel(3, RingSpec::zmod(4), 2), SpecError);
  CHECK_THROWS_AS(GroupSpec::parse("{\"type\":\"nope\"}"), SpecError);
  // JSON round-trip keeps the normative field names
  GroupSpec s = GroupSpec::parse(R"({"type":"sl","n":3,"ring":{"type":"zmod","m":8}})");
  CHECK(s.to_json().dump() == R"({"n":3,"ring":{"m":8,"type":"zmod"},"type":"sl"})");
}

TEST_CASE("subgroup_generated") {
  GroupPtr c8 = construct_group(GroupSpec::cyclic(8));
  const auto* cg = dynamic_cast<const CyclicGroup*>(c8.get());
  CHECK(subgroup_generated(c8, {c8->identity()}, kCap).order() == 1);
  CHECK(subgroup_generated(c8, {cg->encode(2)}, kCap).order() == 4);

  GroupPtr k = construct_group(GroupSpec::congruence_kernel(3, RingSpec::zmod(4), 1));
  // I + 2E_12 and I + 2E_21 square to I and commute
  const auto& gens = k->generators();
  Subgroup h = subgroup_generated(k, {gens[0], gens[2]}, kCap);
  CHECK(h.order() == 4);
}

TEST_CASE("commutator subgroups") {
  Subgroup c8 = whole(GroupSpec::cyclic(8));
  CHECK(commutator_subgroup(c8, c8, kCap).order() == 1);

  Subgroup u32 = whole(GroupSpec::unitriangular(3, 2));
  Subgroup derived = commutator_subgroup(u32, u32, kCap);
  CHECK(derived.order() == 2);
  // oracle: all pairwise commutators over all 8 elements
  const FiniteGroup& G = *u32.parent();
  std::set<Elem> comms;
  for (const Elem& x : u32.elements())
    for (const Elem& y : u32.elements())
      comms.insert(G.multiply(G.multiply(G.invert(x), G.invert(y)), G.multiply(x, y)));
  CHECK(comms.size() == 2);
  for (const Elem& c : comms) CHECK(derived.contains(c));
  CHECK(derived.same_set(center(u32, kCap)));
}

TEST_CASE("lower central series") {
  CHECK(lower_central_series(whole(GroupSpec::cyclic(9)), kCap).orders ==
        std::vector<std::uint64_t>{9, 1});
  CHECK(lower_central_series(whole(GroupSpec::unitriangular(3, 3)), kCap).orders ==
        std::vector<std::uint64_t>{27, 3, 1});
}

TEST_CASE("p-lower central series") {
  CHECK(p_lower_central_series(whole(GroupSpec::cyclic(4)), 2, kCap).orders ==
        std::vector<std::uint64_t>{4, 2, 1});
  CHECK(p_lower_central_series(whole(GroupSpec::cyclic(4)), 3, kCap).orders ==
        std::vector<std::uint64_t>{4, 4});
  CHECK(p_lower_central_series(whole(GroupSpec::unitriangular(3, 2)), 2, kCap).orders ==
        std::vector<std::uint64_t>{8, 2, 1});
}

TEST_CASE("p-lcs containments are certified") {
  Subgroup g = whole(GroupSpec::unitriangular(3, 2));
  auto terms = p_lower_central_series_terms(g, 2, kCap);
  const FiniteGroup& G = *g.parent();
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
    for (const Elem& x : terms[i].elements()) {
      CHECK(terms[i + 1].contains(G.power(x, 2)));
      for (const Elem& s : g.generators()) {
        Elem c = G.multiply(G.multiply(G.invert(x), G.invert(s)), G.multiply(x, s));
        CHECK(terms[i + 1].contains(c));
      }
    }
  }
}

TEST_CASE("center") {
  Subgroup c6 = whole(GroupSpec::cyclic(6));
  CHECK(center(c6, kCap).order() == 6);
  CHECK(center(whole(GroupSpec::unitriangular(3, 2)), kCap).order() == 2);
  CHECK(center(whole(GroupSpec::sl(2, RingSpec::zmod(3))), kCap).order() == 2);
}

TEST_CASE("quotients") {
  GroupPtr c8 = construct_group(GroupSpec::cyclic(8));
  const auto* cg = dynamic_cast<const CyclicGroup*>(c8.get());
  Subgroup whole8 = Subgroup::whole_group(c8, kCap);
  Subgroup n = subgroup_generated(c8, {cg->encode(4)}, kCap);
  GroupPtr q = quotient_group(whole8, n, kCap);
  Subgroup qs = Subgroup::whole_group(q, kCap);
  CHECK(qs.order() == 4);
  CHECK(subgroup_exponent(qs, kCap) == 4);  // cyclic of order 4

  Subgroup u = whole(GroupSpec::unitriangular(3, 2));
  GroupPtr q2 = quotient_group(u, center(u, kCap), kCap);
  Subgroup q2s = Subgroup::whole_group(q2, kCap);
  CHECK(q2s.order() == 4);
  CHECK(elementary_abelian_rank(q2s, kCap) == 2);

  // nonnormal subgroup is rejected: <(12)-like reflection> in SL_2(F_3)
  Subgroup sl23 = whole(GroupSpec::sl(2, RingSpec::zmod(3)));
  // pick any order-4 cyclic subgroup; SL_2(F_3) has nonnormal cyclic 4-subgroups
  for (const Elem& x : sl23.elements()) {
    if (sl23.parent()->element_order(x) == 4) {
      Subgroup h = subgroup_generated(sl23.parent(), {x}, kCap);
      CHECK_THROWS_AS(quotient_group(sl23, h, kCap), NotNormal);
      break;
    }
  }
}

TEST_CASE("big congruence quotient is elementary abelian") {
  Subgroup k1 = whole(GroupSpec::congruence_kernel(3, RingSpec::zmod(8), 1), 100000);
  Subgroup k2raw = whole(GroupSpec::congruence_kernel(3, RingSpec::zmod(8), 2));
  Subgroup k2 = Subgroup::from_elements(k1.parent(), k2raw.elements(), k2raw.generators());
  GroupPtr q = quotient_group(k1, k2, kCap);
  Subgroup qs = Subgroup::whole_group(q, kCap);
  CHECK(qs.order() == 256);
  CHECK(elementary_abelian_rank(qs, kCap) == 8);
}

TEST_CASE("abelian invariants") {
  CHECK(abelian_invariants(whole(GroupSpec::cyclic(12)), kCap) ==
        std::vector<std::uint64_t>{4, 3});
  CHECK(abelian_invariants(whole(GroupSpec::product({GroupSpec::cyclic(2), GroupSpec::cyclic(4)})),
                           kCap) == std::vector<std::uint64_t>{2, 4});
  CHECK(abelian_invariants(whole(GroupSpec::congruence_kernel(3, RingSpec::zmod(4), 1)), kCap) ==
        std::vector<std::uint64_t>(8, 2));
  CHECK_THROWS_AS(abelian_invariants(whole(GroupSpec::unitriangular(3, 2)), kCap), NotAbelian);
}

TEST_CASE("fingerprints") {
  GroupFingerprint fp = fingerprint(whole(GroupSpec::unitriangular(3, 2)), kCap);
  CHECK(fp.order == 8);
  CHECK(fp.exponent == 4);
  CHECK(fp.abelianization == std::vector<std::uint64_t>{2, 2});
  CHECK(fp.derived_length == 2);

  GroupFingerprint c4 = fingerprint(whole(GroupSpec::cyclic(4)), kCap);
  CHECK(c4.order == 4);
  CHECK(c4.exponent == 4);
  CHECK(c4.abelianization == std::vector<std::uint64_t>{4});
  CHECK(c4.derived_length == 1);
}

TEST_CASE("canonical reduction homs certify") {
  GroupPtr z12 = construct_group(GroupSpec::cyclic(12));
  GroupPtr z3 = construct_group(GroupSpec::cyclic(3));
  GroupHom q = canonical_reduction(z12, z3);
  Subgroup dom = Subgroup::whole_group(z12, kCap);
  q.certify_homomorphism(dom);
  q.certify_surjective(dom, 3);

  GroupPtr slp = construct_group(GroupSpec::sl(3, RingSpec::poly_trunc(2, 2)));
  GroupPtr slf = construct_group(GroupSpec::sl(3, RingSpec::zmod(2)));
  GroupHom r = canonical_reduction(slp, slf);
  Subgroup domp = Subgroup::whole_group(slp, 1000000);
  r.certify_homomorphism(domp);
  r.certify_surjective(domp, 168);
}

TEST_CASE("find_section: cyclic coprime quotient splits") {
  GroupPtr z12 = construct_group(GroupSpec::cyclic(12));
  GroupPtr z3 = construct_group(GroupSpec::cyclic(3));
  GroupHom q = canonical_reduction(z12, z3);
  Subgroup dom = Subgroup::whole_group(z12, kCap);
  Subgroup qall = Subgroup::whole_group(z3, kCap);
  auto gens = default_section_generators(qall, kCap);
  SectionSearchResult res = find_section(dom, q, gens, {});
  REQUIRE(res.verdict == SectionSearchResult::Verdict::FOUND);
  const auto* cg = dynamic_cast<const CyclicGroup*>(z12.get());
  CHECK(cg->decode(res.images[0]) == 4);
}

TEST_CASE("find_section: ring inclusion splits the truncated reduction") {
  GroupPtr slp = construct_group(GroupSpec::sl(3, RingSpec::poly_trunc(2, 2)));
  GroupPtr slf = construct_group(GroupSpec::sl(3, RingSpec::zmod(2)));
  GroupHom q = canonical_reduction(slp, slf);
  Subgroup dom = Subgroup::whole_group(slp, 1000000);
  Subgroup qall = Subgroup::whole_group(slf, kCap);
  auto gens = default_section_generators(qall, kCap);
  REQUIRE(gens.size() == 2);
  SectionSearchResult res = find_section(dom, q, gens, {});
  REQUIRE(res.verdict == SectionSearchResult::Verdict::FOUND);
  // accepted lifts reduce back to the chosen generators
  for (std::size_t i = 0; i < gens.size(); ++i) CHECK(q.apply(res.images[i]) == gens[i]);
}

TEST_CASE("elementary complement obstruction") {
  GroupPtr z4 = construct_group(GroupSpec::cyclic(4));
  GroupPtr z2 = construct_group(GroupSpec::cyclic(2));
  GroupHom q = canonical_reduction(z4, z2);
  ObstructionResult res = elementary_complement_obstruction(Subgroup::whole_group(z4, kCap), q, kCap);
  CHECK(res.verdict == ObstructionResult::Verdict::NONSPLIT_CERTIFIED);
  REQUIRE(res.witness_coset.has_value());

  GroupPtr klein = construct_group(GroupSpec::product({GroupSpec::cyclic(2), GroupSpec::cyclic(2)}));
  GroupPtr z2b = construct_group(GroupSpec::product({GroupSpec::cyclic(2), GroupSpec::cyclic(1)}));
  GroupHom q2 = canonical_reduction(klein, z2b);
  ObstructionResult res2 =
      elementary_complement_obstruction(Subgroup::whole_group(klein, kCap), q2, kCap);
  CHECK(res2.verdict == ObstructionResult::Verdict::INCONCLUSIVE);
}

TEST_CASE("congruence filtration reports") {
  SeriesReport r322 = congruence_filtration_report(3, 2, 2, kCap);
  CHECK(r322.orders == std::vector<std::uint64_t>{256, 1});
  CHECK(r322.reference_orders == std::vector<std::uint64_t>{256, 1});
  REQUIRE(r322.level_flags.size() == 2);
  CHECK(r322.level_flags[0] == CompareFlag::EQUAL);
  CHECK(r322.level_flags[1] == CompareFlag::EQUAL);
  REQUIRE(!r322.steps.empty());
  CHECK(r322.steps[0].elementary_rank == 8);

  SeriesReport r332 = congruence_filtration_report(3, 3, 2, kCap);
  CHECK(r332.orders == std::vector<std::uint64_t>{6561, 1});
  CHECK(r332.steps[0].elementary_rank == 8);
}

TEST_CASE("truncated sl filtration reports") {
  SeriesReport r322 = truncated_sl_filtration_report(3, 2, 2, kCap);
  CHECK(r322.orders == std::vector<std::uint64_t>{256, 1});
  CHECK(r322.level_flags[0] == CompareFlag::EQUAL);
  CHECK(r322.steps[0].elementary_rank == 8);

  // n = 2: the derived subalgebra of sl_2(F_2) is proper, so the series
  // drops below K^2
  SeriesReport r223 = truncated_sl_filtration_report(2, 2, 3, kCap);
  CHECK(r223.reference_orders == std::vector<std::uint64_t>{64, 8, 1});
  CHECK(r223.orders == std::vector<std::uint64_t>{64, 2, 1});
  CHECK(r223.level_flags[0] == CompareFlag::EQUAL);
  CHECK(r223.level_flags[1] == CompareFlag::PROPER_SUBGROUP);

  // oracle: all pairwise commutators in the 64-element kernel
  Subgroup k1 = whole(GroupSpec::congruence_kernel(2, RingSpec::poly_trunc(2, 3), 1));
  REQUIRE(k1.order() == 64);
  const FiniteGroup& G = *k1.parent();
  std::set<Elem> comms;
  for (const Elem& x : k1.elements())
    for (const Elem& y : k1.elements())
      comms.insert(G.multiply(G.multiply(G.invert(x), G.invert(y)), G.multiply(x, y)));
  Subgroup gamma2 = subgroup_generated(k1.parent(), {comms.begin(), comms.end()}, kCap);
  CHECK(gamma2.order() == 2);
}

TEST_CASE("deterministic enumeration") {
  Subgroup a = whole(GroupSpec::sl(2, RingSpec::zmod(3)));
  Subgroup b = whole(GroupSpec::sl(2, RingSpec::zmod(3)));
  CHECK(a.elements() == b.elements());
  CHECK(a.generators() == b.generators());
}
