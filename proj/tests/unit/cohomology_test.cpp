#include <doctest.h>

#include "complab/cohomology.hpp"
#include "complab/completion.hpp"

using namespace complab;

namespace {
constexpr std::uint64_t kCap = 1u << 25;

Subgroup whole(const GroupSpec& spec) {
  return Subgroup::whole_group(construct_group(spec), kDefaultEnumerationCap);
}
}  // namespace

TEST_CASE("periodic cyclic oracle") {
  CHECK(periodic_cyclic_oracle(4, 2, 2) == 1);
  CHECK(periodic_cyclic_oracle(3, 2, 1) == 0);
  CHECK(periodic_cyclic_oracle(6, 3, 2) == 1);
  CHECK(periodic_cyclic_oracle(8, 2, 0) == 1);
}

TEST_CASE("bar cohomology of small cyclic groups") {
  Subgroup z4 = whole(GroupSpec::cyclic(4));
  CHECK(BarCohomology(z4, 2, 0).dimension() == 1);
  CHECK(BarCohomology(z4, 2, 1).dimension() == 1);
  CHECK(BarCohomology(z4, 2, 2).dimension() == 1);
  Subgroup z2 = whole(GroupSpec::cyclic(2));
  CHECK(BarCohomology(z2, 3, 2).dimension() == 0);
}

TEST_CASE("bar dims agree with the periodic oracle for cyclic groups up to 16") {
  for (std::uint64_t m = 2; m <= 16; ++m) {
    Subgroup g = whole(GroupSpec::cyclic(m));
    for (std::uint64_t p : {2, 3}) {
      for (unsigned deg = 0; deg <= 2; ++deg) {
        CAPTURE(m);
        CAPTURE(p);
        CAPTURE(deg);
        REQUIRE(BarCohomology(g, p, deg).dimension() == periodic_cyclic_oracle(m, p, deg));
      }
    }
  }
}

TEST_CASE("bar H^1 equals dim J/J^2 across the corpus") {
  const GroupSpec corpus[] = {
      GroupSpec::cyclic(2),
      GroupSpec::cyclic(4),
      GroupSpec::cyclic(6),
      GroupSpec::cyclic(12),
      GroupSpec::product({GroupSpec::cyclic(2), GroupSpec::cyclic(2)}),
      GroupSpec::unitriangular(3, 2),
      GroupSpec::unitriangular(3, 3),
  };
  for (const auto& spec : corpus) {
    for (std::uint64_t p : {2, 3}) {
      Subgroup g = whole(spec);
      CompletionContext ctx(construct_group(spec), p, kDefaultEnumerationCap);
      CAPTURE(spec.str());
      CAPTURE(p);
      REQUIRE(BarCohomology(g, p, 1).dimension() == ctx.h1_dimension());
    }
  }
}

TEST_CASE("H^1 representatives are homomorphisms") {
  Subgroup z8 = whole(GroupSpec::cyclic(8));
  BarCohomology h1(z8, 2, 1);
  REQUIRE(h1.dimension() == 1);
  for (const auto& rep : h1.representatives()) CHECK(h1.is_cocycle(rep));
}

TEST_CASE("inflation along Z/4 ->> Z/2") {
  GroupPtr g4 = construct_group(GroupSpec::cyclic(4));
  GroupPtr g2 = construct_group(GroupSpec::cyclic(2));
  GroupHom q = canonical_reduction(g4, g2);
  Subgroup s4 = Subgroup::whole_group(g4, kCap);
  Subgroup s2 = Subgroup::whole_group(g2, kCap);

  BarCohomology src1(s2, 2, 1), dst1(s4, 2, 1);
  InflationMap inf1 = inflation_map(src1, dst1, q);
  CHECK(inf1.rank == 1);

  BarCohomology src2(s2, 2, 2), dst2(s4, 2, 2);
  InflationMap inf2 = inflation_map(src2, dst2, q);
  CHECK(inf2.rank == 0);

  // identity map inflates to the identity on H^2
  GroupHom id = canonical_reduction(g4, g4);
  InflationMap inf_id = inflation_map(dst2, dst2, id);
  CHECK(inf_id.rank == dst2.dimension());
}

TEST_CASE("inflation functoriality on the 2-power tower") {
  GroupPtr g2 = construct_group(GroupSpec::cyclic(2));
  GroupPtr g4 = construct_group(GroupSpec::cyclic(4));
  GroupPtr g8 = construct_group(GroupSpec::cyclic(8));
  Subgroup s2 = Subgroup::whole_group(g2, kCap);
  Subgroup s4 = Subgroup::whole_group(g4, kCap);
  Subgroup s8 = Subgroup::whole_group(g8, kCap);
  const FieldSpec f2 = FieldSpec::prime(2);
  for (unsigned deg : {1u, 2u}) {
    BarCohomology h2g(s2, 2, deg), h4g(s4, 2, deg), h8g(s8, 2, deg);
    InflationMap a = inflation_map(h2g, h4g, canonical_reduction(g4, g2));
    InflationMap b = inflation_map(h4g, h8g, canonical_reduction(g8, g4));
    InflationMap direct = inflation_map(h2g, h8g, canonical_reduction(g8, g2));
    // compose b.matrix * a.matrix and compare entrywise
    REQUIRE(direct.matrix.rows == b.matrix.rows);
    REQUIRE(direct.matrix.cols == a.matrix.cols);
    for (std::size_t r = 0; r < direct.matrix.rows; ++r)
      for (std::size_t c = 0; c < direct.matrix.cols; ++c) {
        Scalar acc = scalar_zero(f2);
        for (std::size_t k = 0; k < a.matrix.rows; ++k)
          acc = scalar_add(f2, acc, scalar_mul(f2, b.matrix.at(r, k), a.matrix.at(k, c)));
        REQUIRE(acc == direct.matrix.at(r, c));
      }
  }
}

TEST_CASE("Frattini-kernel surjections are iso on H^1 over the corpus") {
  // kernel of Z/4 ->> Z/2 is contained in squares: inflation rank = dim H^1
  GroupPtr g4 = construct_group(GroupSpec::cyclic(4));
  GroupPtr g2 = construct_group(GroupSpec::cyclic(2));
  Subgroup s4 = Subgroup::whole_group(g4, kCap);
  Subgroup s2 = Subgroup::whole_group(g2, kCap);
  BarCohomology src(s2, 2, 1), dst(s4, 2, 1);
  InflationMap inf = inflation_map(src, dst, canonical_reduction(g4, g2));
  CHECK(inf.rank == src.dimension());
  CHECK(inf.rank == dst.dimension());
}

namespace {
TowerReport cyclic_tower(std::uint64_t p, unsigned depth, unsigned degree) {
  std::vector<GroupPtr> levels;
  std::vector<GroupHom> maps;
  std::uint64_t n = p;
  for (unsigned l = 0; l < depth; ++l, n *= p) levels.push_back(construct_group(GroupSpec::cyclic(n)));
  for (unsigned j = 0; j + 1 < depth; ++j)
    maps.push_back(canonical_reduction(levels[j + 1], levels[j]));
  return tower_continuous_cohomology(levels, maps, p, degree, kCap);
}
}  // namespace

TEST_CASE("towers") {
  TowerReport d1 = cyclic_tower(2, 5, 1);
  REQUIRE(d1.colimit_dim.has_value());
  CHECK(*d1.colimit_dim == 1);
  CHECK(d1.stabilized);

  TowerReport d2 = cyclic_tower(2, 5, 2);
  REQUIRE(d2.colimit_dim.has_value());
  CHECK(*d2.colimit_dim == 0);
  for (std::size_t r : d2.step_ranks) CHECK(r == 0);

  CHECK(lemma51_consistency(d1, d2, 1, 0).consistent());

  TowerReport t31 = cyclic_tower(3, 3, 1);
  TowerReport t32 = cyclic_tower(3, 3, 2);
  CHECK(*t31.colimit_dim == 1);
  CHECK(*t32.colimit_dim == 0);
  CHECK(lemma51_consistency(t31, t32, 1, 0).consistent());

  // constant tower Z/4 with identity maps, degree 2: colim dim 1
  std::vector<GroupPtr> levels;
  std::vector<GroupHom> maps;
  for (int i = 0; i < 3; ++i) levels.push_back(construct_group(GroupSpec::cyclic(4)));
  for (int i = 0; i + 1 < 3; ++i) maps.push_back(canonical_reduction(levels[i + 1], levels[i]));
  TowerReport ct = tower_continuous_cohomology(levels, maps, 2, 2, kCap);
  CHECK(*ct.colimit_dim == 1);
  // G = Z/4 against its own completion: (h1, h2) = (1, 1)
  TowerReport ct1 = tower_continuous_cohomology(levels, maps, 2, 1, kCap);
  CHECK(lemma51_consistency(ct1, ct, 1, 1).consistent());
}
