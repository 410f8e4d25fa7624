#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "singer/analysis.hpp"

using namespace singer;

namespace {

Word w(std::vector<Syllable> syls) { return free_reduce({std::move(syls)}); }

GroupPresentation make(std::vector<std::string> gens, std::vector<Word> rels) {
  GroupPresentation p;
  p.generators = std::move(gens);
  p.relators = std::move(rels);
  return p;
}

GroupPresentation a2_lattice(int last_exponent) {
  return make({"a", "b", "c"},
              {w({{"a", 7}}), w({{"b", 7}}), w({{"c", 7}}),
               w({{"a", 1}, {"b", 1}, {"c", 1}}),
               w({{"a", 3}, {"b", 3}, {"c", last_exponent}})});
}

std::vector<std::vector<long long>> exponent_matrix(GroupPresentation const& p) {
  std::vector<std::vector<long long>> m(
      p.relators.size(), std::vector<long long>(p.generators.size(), 0));
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (auto const& s : p.relators[r].syllables) {
      auto at = std::find(p.generators.begin(), p.generators.end(), s.gen) -
                p.generators.begin();
      m[r][at] += s.exp;
    }
  return m;
}

void check_against_minor_oracle(GroupPresentation const& p) {
  auto inv = abelianization(p);
  auto oracle = oracles::abelian_invariants_by_minors(
      exponent_matrix(p), static_cast<int>(p.generators.size()));
  CHECK(inv.free_rank == oracle.free_rank);
  REQUIRE(inv.torsion.size() == oracle.torsion.size());
  for (std::size_t i = 0; i < inv.torsion.size(); ++i)
    CHECK(inv.torsion[i] == BigInt(oracle.torsion[i]));
}

}  // namespace

TEST_CASE("bigint arithmetic") {
  CHECK(BigInt(0).to_string() == "0");
  CHECK(BigInt(-123456789012345LL).to_string() == "-123456789012345");
  CHECK((BigInt(1000000007) * BigInt(998244353)).to_string() == "998244359987710471");

  BigInt two100(1);
  for (int i = 0; i < 100; ++i) two100 = two100 * BigInt(2);
  CHECK(two100.to_string() == "1267650600228229401496703205376");
  CHECK(((two100 + BigInt(3)) * (two100 - BigInt(3))).to_string() ==
        "1606938044258990275541962092341162602522202993782792835301367");

  auto [q, r] = BigInt::divmod(BigInt(-7), BigInt(3));
  CHECK(q == BigInt(-2));
  CHECK(r == BigInt(-1));
  std::tie(q, r) = BigInt::divmod(BigInt(7), BigInt(-3));
  CHECK(q == BigInt(-2));
  CHECK(r == BigInt(1));
  std::tie(q, r) = BigInt::divmod(two100, two100 - BigInt(1));
  CHECK(q == BigInt(1));
  CHECK(r == BigInt(1));
  CHECK((two100 % BigInt(1000000007)).to_string() == "976371285");
  CHECK_THROWS_AS(BigInt::divmod(BigInt(1), BigInt(0)), Error);
}

TEST_CASE("smith normal form") {
  auto diag = smith_normal_form({{BigInt(7)}});
  CHECK(diag == std::vector<BigInt>{BigInt(7)});

  diag = smith_normal_form({{BigInt(2), BigInt(4)}, {BigInt(4), BigInt(8)}});
  CHECK(diag == std::vector<BigInt>{BigInt(2), BigInt(0)});

  diag = smith_normal_form(
      {{BigInt(2), BigInt(0)}, {BigInt(0), BigInt(3)}});
  CHECK(diag == std::vector<BigInt>{BigInt(1), BigInt(6)});

  // Divisibility chain on a selection of small matrices, against the
  // independent determinantal-divisor oracle.
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 4);
    int cols = 1 + static_cast<int>(rng() % 4);
    std::vector<std::vector<long long>> m(rows, std::vector<long long>(cols));
    std::vector<std::vector<BigInt>> mb(rows, std::vector<BigInt>(cols));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        m[i][j] = static_cast<long long>(rng() % 13) - 6;
        mb[i][j] = BigInt(m[i][j]);
      }
    auto got = smith_normal_form(mb);
    for (std::size_t i = 0; i + 1 < got.size(); ++i)
      if (!got[i].is_zero() && !got[i + 1].is_zero())
        CHECK((got[i + 1] % got[i]).is_zero());
    auto oracle = oracles::abelian_invariants_by_minors(m, cols);
    std::vector<BigInt> nontrivial;
    for (auto const& d : got)
      if (!d.is_zero() && !(d == BigInt(1))) nontrivial.push_back(d);
    REQUIRE(nontrivial.size() == oracle.torsion.size());
    for (std::size_t i = 0; i < nontrivial.size(); ++i)
      CHECK(nontrivial[i] == BigInt(oracle.torsion[i]));
  }
}

TEST_CASE("abelianization") {
  auto inv = abelianization(make({"a"}, {w({{"a", 7}})}));
  CHECK(inv.free_rank == 0);
  CHECK(inv.torsion == std::vector<BigInt>{BigInt(7)});

  auto first = abelianization(a2_lattice(3));
  CHECK(first.free_rank == 0);
  CHECK(first.torsion == std::vector<BigInt>{BigInt(7), BigInt(7)});
  check_against_minor_oracle(a2_lattice(3));

  auto second = abelianization(a2_lattice(5));
  CHECK(second.free_rank == 0);
  CHECK(second.torsion == std::vector<BigInt>{BigInt(7)});
  check_against_minor_oracle(a2_lattice(5));

  CHECK_FALSE(first == second);

  auto free2 = abelianization(make({"a", "b"}, {}));
  CHECK(free2.free_rank == 2);
  CHECK(free2.torsion.empty());

  CHECK(to_string(first) == "abelianization rank=0 torsion=[7,7]");
  CHECK(to_string(free2) == "abelianization rank=2 torsion=[]");
}

TEST_CASE("abelianization is invariant under simplify and reordering") {
  auto pres = universal_presentation_polygon(quotient_digon(2));
  auto before = abelianization(pres);
  CHECK(before.free_rank == 2);
  CHECK(before.torsion == std::vector<BigInt>{BigInt(3)});
  CHECK(abelianization(simplify(pres)) == before);

  auto shuffled = a2_lattice(3);
  std::reverse(shuffled.relators.begin(), shuffled.relators.end());
  CHECK(abelianization(shuffled) == abelianization(a2_lattice(3)));
}

TEST_CASE("coset enumeration") {
  auto c7 = coset_enumerate(make({"a"}, {w({{"a", 7}})}), {}, 100);
  CHECK(c7.complete);
  CHECK(c7.index == 7);

  auto c3 = coset_enumerate(make({"a"}, {w({{"a", 3}})}), {}, 100);
  CHECK(c3.complete);
  CHECK(c3.index == 3);

  auto free2 = coset_enumerate(make({"a", "b"}, {}), {}, 1000);
  CHECK_FALSE(free2.complete);

  // S3 = <a, b | a^2, b^2, (ab)^3>.
  auto s3 = coset_enumerate(
      make({"a", "b"}, {w({{"a", 2}}), w({{"b", 2}}),
                        w({{"a", 1}, {"b", 1}, {"a", 1}, {"b", 1}, {"a", 1}, {"b", 1}})}),
      {}, 100);
  CHECK(s3.complete);
  CHECK(s3.index == 6);

  // Quaternion group <a, b | a^4, a^2 b^-2, b^-1 a b a>.
  auto q8 = coset_enumerate(
      make({"a", "b"}, {w({{"a", 4}}), w({{"a", 2}, {"b", -2}}),
                        w({{"b", -1}, {"a", 1}, {"b", 1}, {"a", 1}})}),
      {}, 200);
  CHECK(q8.complete);
  CHECK(q8.index == 8);

  // Z/6 over the subgroup <a^2> has index 2.
  auto sub = coset_enumerate(make({"a"}, {w({{"a", 6}})}), {w({{"a", 2}})}, 100);
  CHECK(sub.complete);
  CHECK(sub.index == 2);

  // <a, b | a b a^-1 b^-2, b a b^-1 a^-2> is trivial; the table collapses
  // through coincidences.
  auto trivial_group = coset_enumerate(
      make({"a", "b"}, {w({{"a", 1}, {"b", 1}, {"a", -1}, {"b", -2}}),
                        w({{"b", 1}, {"a", 1}, {"b", -1}, {"a", -2}})}),
      {}, 5000);
  CHECK(trivial_group.complete);
  CHECK(trivial_group.index == 1);
  CHECK(trivial_group.cosets_defined > 1);

  // A5 = <a, b | a^2, b^3, (ab)^5> has order 60.
  auto a5 = coset_enumerate(
      make({"a", "b"},
           {w({{"a", 2}}), w({{"b", 3}}),
            power(w({{"a", 1}, {"b", 1}}), 5)}),
      {}, 5000);
  CHECK(a5.complete);
  CHECK(a5.index == 60);

  // Z/3 x Z/5 via commuting generators.
  auto z15 = coset_enumerate(
      make({"a", "b"},
           {w({{"a", 1}, {"b", 1}, {"a", -1}, {"b", -1}}), w({{"a", 3}}), w({{"b", 5}})}),
      {}, 200);
  CHECK(z15.complete);
  CHECK(z15.index == 15);
}

TEST_CASE("completed enumerations agree with abelian data") {
  // When the table closes over the trivial subgroup, the group order equals
  // the index, and the torsion product of the abelianization divides it.
  std::vector<GroupPresentation> finite = {
      make({"a"}, {w({{"a", 7}})}),
      make({"a"}, {w({{"a", 12}})}),
      make({"a", "b"}, {w({{"a", 2}}), w({{"b", 2}}),
                        w({{"a", 1}, {"b", 1}, {"a", 1}, {"b", 1}, {"a", 1}, {"b", 1}})}),
  };
  for (auto const& p : finite) {
    auto table = coset_enumerate(p, {}, 1000);
    REQUIRE(table.complete);
    auto inv = abelianization(p);
    BigInt product(1);
    for (auto const& d : inv.torsion) product = product * d;
    CHECK((BigInt(table.index) % product).is_zero());
  }
}
