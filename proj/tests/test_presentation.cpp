#include <doctest.h>

#include <fstream>
#include <sstream>

#include "singer/presentation.hpp"

using namespace singer;

namespace {

Word w(std::vector<Syllable> syls) { return free_reduce({std::move(syls)}); }

GluingMatrix load(std::string const& name) {
  std::ifstream in(std::string(SINGER_DATA_DIR) + "/" + name);
  REQUIRE(in);
  return parse_gluing(in);
}

std::string golden(std::string const& name) {
  std::ifstream in(std::string(SINGER_GOLDEN_DIR) + "/" + name);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("word operations") {
  CHECK(free_reduce({{{"x", 1}, {"x", -1}}}).empty());
  CHECK(free_reduce({{{"x", 2}, {"x", -1}, {"y", 1}}}) ==
        w({{"x", 1}, {"y", 1}}));
  CHECK(inverse(w({{"x", 1}, {"y", -2}})) == w({{"y", 2}, {"x", -1}}));
  CHECK(concat(w({{"x", 1}}), w({{"x", -1}, {"y", 3}})) == w({{"y", 3}}));
  CHECK(power(w({{"x", 1}, {"y", 1}}), -1) == w({{"y", -1}, {"x", -1}}));
}

TEST_CASE("universal presentation of the quotient digon") {
  auto pres = universal_presentation_polygon(quotient_digon(2));
  CHECK(pres.generators ==
        std::vector<std::string>{"g_1_s", "g_1_t", "g_2_s", "g_2_t", "a"});
  REQUIRE(pres.relators.size() == 3);
  CHECK(pres.relators[0] == w({{"a", 3}}));
  CHECK(pres.relators[1] == w({{"a", 1}, {"g_1_t", 1}, {"g_1_s", -1}}));
  CHECK(pres.relators[2] == w({{"a", 2}, {"g_2_t", 1}, {"g_2_s", -1}}));

  auto q1 = universal_presentation_polygon(quotient_digon(1));
  CHECK(q1.relators[0] == w({{"a", 2}}));
  CHECK(q1.relators[1] == w({{"a", 1}, {"g_1_t", 1}, {"g_1_s", -1}}));
}

TEST_CASE("universal presentation of the quotient triangle") {
  auto t = quotient_triangle(based_difference_set(difference_set({0, 1, 3}, 7)));
  auto pres = universal_presentation_polygon(t);
  CHECK(pres.generators ==
        std::vector<std::string>{"g_1_s", "g_1_t", "g_3_s", "g_3_t", "a"});
  REQUIRE(pres.relators.size() == 3);
  CHECK(pres.relators[0] == w({{"a", 7}}));
  CHECK(pres.relators[1] == w({{"a", 1}, {"g_1_t", 1}, {"g_1_s", -1}}));
  CHECK(pres.relators[2] == w({{"a", 3}, {"g_3_t", 1}, {"g_3_s", -1}}));
}

TEST_CASE("fundamental groups of the quotients") {
  auto f2 = fundamental_presentation_polygon(quotient_digon(2));
  CHECK(f2.generators == std::vector<std::string>{"a"});
  CHECK(f2.relators == std::vector<Word>{w({{"a", 3}})});

  auto f1 = fundamental_presentation_polygon(quotient_digon(1));
  CHECK(f1.relators == std::vector<Word>{w({{"a", 2}})});

  auto t = quotient_triangle(based_difference_set(difference_set({0, 1, 3}, 7)));
  auto ft = fundamental_presentation_polygon(t);
  CHECK(ft.generators == std::vector<std::string>{"a"});
  CHECK(ft.relators == std::vector<Word>{w({{"a", 7}})});
}

TEST_CASE("universal presentation of a Weyl graph") {
  auto g = [] {
    std::istringstream in(
        "vertices s t u\n"
        "edge s t 3\nedge t u 3\nedge u s 3\n"
        "order 2\n"
        "column s t : 1 3\ncolumn t u : 5 1\ncolumn u s : 6 4\n");
    return parse_gluing(in);
  }();
  auto pres = universal_presentation_weyl(build_weyl_graph(g));
  CHECK(pres.generators.size() == 9);   // six g's and three a's
  CHECK(pres.relators.size() == 9);     // three powers, six column relations
  CHECK(pres.relators[0] == w({{"a_s_t", 7}}));
  CHECK(pres.relators[3] == w({{"a_s_t", 1}, {"g_1_t", 1}, {"g_1_s", -1}}));
  CHECK(pres.relators[4] == w({{"a_s_t", 3}, {"g_2_t", 1}, {"g_2_s", -1}}));
  CHECK(pres.relators[5] == w({{"a_t_u", 5}, {"g_1_u", 1}, {"g_1_t", -1}}));
  CHECK(pres.relators[8] == w({{"a_u_s", 4}, {"g_2_s", 1}, {"g_2_u", -1}}));
}

TEST_CASE("universal presentations of single-edge Weyl graphs") {
  std::istringstream digon("vertices s t\nedge s t 2\norder 2\ncolumn s t : 1 2\n");
  auto pd = universal_presentation_weyl(build_weyl_graph(parse_gluing(digon)));
  CHECK(pd.generators ==
        std::vector<std::string>{"g_1_s", "g_1_t", "g_2_s", "g_2_t", "a_s_t"});
  REQUIRE(pd.relators.size() == 3);
  CHECK(pd.relators[0] == w({{"a_s_t", 3}}));
  CHECK(pd.relators[1] == w({{"a_s_t", 1}, {"g_1_t", 1}, {"g_1_s", -1}}));
  CHECK(pd.relators[2] == w({{"a_s_t", 2}, {"g_2_t", 1}, {"g_2_s", -1}}));

  std::istringstream tri("vertices s t\nedge s t 3\norder 2\ncolumn s t : 1 3\n");
  auto pt = universal_presentation_weyl(build_weyl_graph(parse_gluing(tri)));
  REQUIRE(pt.relators.size() == 3);
  CHECK(pt.relators[0] == w({{"a_s_t", 7}}));
  CHECK(pt.relators[1] == w({{"a_s_t", 1}, {"g_1_t", 1}, {"g_1_s", -1}}));
  // The column entry for n = 2 is 3, so the relation reads a^3 = g_2_s g_2_t^-1.
  CHECK(pt.relators[2] == w({{"a_s_t", 3}, {"g_2_t", 1}, {"g_2_s", -1}}));
}

TEST_CASE("lattice presentations match the goldens") {
  for (std::string name : {"a2tilde_1", "a2tilde_2", "hyperbolic_square",
                           "hyperbolic_mixed", "wild_pendant", "wild_two_cycles"})
    CHECK(to_text(lattice_presentation(load(name + ".gluing"))) ==
          golden(name + ".pres"));
}

TEST_CASE("a tree defining graph yields a single cyclic lattice") {
  std::istringstream in(
      "vertices s t\nedge s t 3\norder 2\ncolumn s t : 1 3\n");
  auto pres = lattice_presentation(parse_gluing(in));
  CHECK(pres.generators == std::vector<std::string>{"a_s_t"});
  CHECK(pres.relators == std::vector<Word>{w({{"a_s_t", 7}})});

  std::istringstream in2(
      "vertices s t\nedge s t 2\norder 2\ncolumn s t : 1 2\n");
  auto pres2 = lattice_presentation(parse_gluing(in2));
  CHECK(pres2.relators == std::vector<Word>{w({{"a_s_t", 3}})});
}

TEST_CASE("cycle relators") {
  auto g = load("a2tilde_1.gluing");
  auto forward = cycle_relator(g, {"s", "t", "u", "s"}, 2);
  CHECK(forward == w({{"a_s_t", 3}, {"a_t_u", 3}, {"a_u_s", 3}}));

  // Reversing the traversal direction inverts the relator.
  auto backward = cycle_relator(g, {"s", "u", "t", "s"}, 2);
  CHECK(backward == inverse(forward));

  // A backtracking closed walk contributes nothing.
  CHECK(cycle_relator(g, {"s", "t", "s"}, 1).empty());
  CHECK(cycle_relator(g, {"s", "t", "s"}, 2).empty());

  CHECK_THROWS_AS(cycle_relator(g, {"s", "u", "x", "s"}, 1), Error);
}

TEST_CASE("cycle relators telescope in the universal group") {
  for (std::string name : {"a2tilde_1", "a2tilde_2", "hyperbolic_square",
                           "hyperbolic_mixed", "wild_pendant", "wild_two_cycles"}) {
    auto g = load(name + ".gluing");
    for (auto const& cycle : cycle_basis(defining_graph(g)))
      for (int n = 1; n <= g.q; ++n) CHECK(cycle_relator_telescopes(g, cycle, n));
  }
}

TEST_CASE("simplify") {
  // Eliminating the g_(n,t) and keeping the free part.
  auto pres = simplify(universal_presentation_polygon(quotient_digon(2)));
  CHECK(pres.generators == std::vector<std::string>{"g_1_s", "g_2_s", "a"});
  CHECK(pres.relators == std::vector<Word>{w({{"a", 3}})});

  GroupPresentation trivial;
  trivial.generators = {"x"};
  trivial.relators = {Word{{{"x", 1}, {"x", -1}}}};
  auto s = simplify(trivial);
  CHECK(s.generators == std::vector<std::string>{"x"});
  CHECK(s.relators.empty());

  // Already-simplified presentations are fixed points.
  GroupPresentation cyclic;
  cyclic.generators = {"a"};
  cyclic.relators = {w({{"a", 7}})};
  auto fixed = simplify(cyclic);
  CHECK(fixed.generators == cyclic.generators);
  CHECK(fixed.relators == cyclic.relators);
}

TEST_CASE("presentation text round trip") {
  auto pres = lattice_presentation(load("a2tilde_1.gluing"));
  auto text = to_text(pres);
  std::istringstream in(text);
  auto parsed = parse_presentation(in);
  CHECK(parsed.generators == pres.generators);
  CHECK(parsed.relators == pres.relators);

  std::istringstream bad1("rel a^1\n");
  CHECK_THROWS_AS(parse_presentation(bad1), Error);  // undeclared generator
  std::istringstream bad2("gen a\nrel a\n");
  CHECK_THROWS_AS(parse_presentation(bad2), Error);  // missing exponent
  std::istringstream bad3("gen a\ngen a\n");
  CHECK_THROWS_AS(parse_presentation(bad3), Error);
}
