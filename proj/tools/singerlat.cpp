// singerlat: difference sets, Singer polygons, gluing matrices, and the
// lattice presentations they encode, from the command line.
//
// Exit codes: 0 success, 1 domain failure (invalid input or failed check),
// 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "singer/analysis.hpp"
#include "singer/chambers.hpp"
#include "singer/diffsets.hpp"
#include "singer/polygons.hpp"
#include "singer/presentation.hpp"
#include "singer/weyl.hpp"

namespace {

std::vector<int> parse_int_list(std::string const& csv) {
  std::vector<int> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw singer::Error("ParseError", "empty entry in list '" + csv + "'");
    try {
      values.push_back(std::stoi(item));
    } catch (std::exception const&) {
      throw singer::Error("ParseError", "bad integer '" + item + "'");
    }
  }
  if (values.empty()) throw singer::Error("ParseError", "empty list");
  return values;
}

singer::GluingMatrix load_gluing(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw singer::Error("FileNotFound", "cannot open " + path);
  return singer::parse_gluing(in);
}

singer::GroupPresentation load_presentation(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw singer::Error("FileNotFound", "cannot open " + path);
  return singer::parse_presentation(in);
}

// Builds either the digon or triangle chamber system + quotient polygon
// from the CLI's --digon / --triangle flags.
struct PolygonChoice {
  std::optional<std::string> digon;    // "q" or "q1,q2"
  std::optional<std::string> triangle; // "d0,d1,..."
};

int run_diffset_verify(int delta, std::string const& csv) {
  auto elements = parse_int_list(csv);
  for (int& e : elements) e = ((e % delta) + delta) % delta;
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end()) {
    std::cout << "invalid repeated-residue\n";
    return 1;
  }
  auto rep = singer::verify_difference_set(elements, delta);
  if (rep.valid) {
    std::cout << "valid order=" << rep.order << "\n";
    return 0;
  }
  if (rep.first_duplicated)
    std::cout << "invalid duplicated=" << *rep.first_duplicated << "\n";
  else
    std::cout << "invalid missing=" << *rep.first_missing << "\n";
  return 1;
}

int run_polygon_build(PolygonChoice const& choice, std::optional<int> check_m) {
  singer::ChamberSystem c;
  if (choice.digon) {
    auto qs = parse_int_list(*choice.digon);
    int q1 = qs.at(0);
    int q2 = qs.size() > 1 ? qs.at(1) : qs.at(0);
    c = singer::build_digon(q1, q2);
    std::cout << "chamber-system digon chambers=" << c.size();
  } else {
    auto elements = parse_int_list(*choice.triangle);
    int q = static_cast<int>(elements.size()) - 1;
    auto d = singer::based_difference_set(
        singer::difference_set(elements, q * q + q + 1));
    c = singer::build_triangle(d);
    std::cout << "chamber-system triangle chambers=" << c.size();
  }
  std::cout << " s-panels=" << c.panels[0].size() << "x" << c.panels[0][0].size()
            << " t-panels=" << c.panels[1].size() << "x" << c.panels[1][0].size()
            << "\n";
  if (!check_m) return 0;
  auto rep = singer::verify_generalized_polygon(c, *check_m);
  std::cout << "check m=" << *check_m << (rep.pass ? " pass" : " fail")
            << " diameter=" << rep.diameter << " girth=" << rep.girth
            << " thickness=" << rep.thickness;
  if (!rep.pass) std::cout << " reason=\"" << rep.failure << "\"";
  std::cout << "\n";
  return rep.pass ? 0 : 1;
}

int run_polygon_suites(PolygonChoice const& choice) {
  singer::SingerPolygon p;
  if (choice.digon) {
    p = singer::quotient_digon(parse_int_list(*choice.digon).at(0));
  } else {
    auto elements = parse_int_list(*choice.triangle);
    int q = static_cast<int>(elements.size()) - 1;
    p = singer::quotient_triangle(singer::based_difference_set(
        singer::difference_set(elements, q * q + q + 1)));
  }
  std::cout << singer::to_text(p);
  return 0;
}

int run_polygon_cover_check(PolygonChoice const& choice) {
  singer::ChamberSystem total;
  singer::SingerPolygon quotient;
  if (choice.digon) {
    int q = parse_int_list(*choice.digon).at(0);
    total = singer::build_digon(q, q);
    quotient = singer::quotient_digon(q);
  } else {
    auto elements = parse_int_list(*choice.triangle);
    int q = static_cast<int>(elements.size()) - 1;
    auto d = singer::based_difference_set(
        singer::difference_set(elements, q * q + q + 1));
    total = singer::build_triangle(d);
    quotient = singer::quotient_triangle(d);
  }
  auto action = singer::standard_action(total);
  bool ok = singer::verify_covering(total, action, quotient);
  std::cout << "cover-check m=" << quotient.gonality << " q=" << quotient.q
            << (ok ? " pass" : " fail") << " suites=" << quotient.suites.size()
            << " fiber=" << action.order << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Singer difference sets, polygons, and cyclic lattice presentations"};
  app.require_subcommand(1);

  // diffset ------------------------------------------------------------
  auto* diffset = app.add_subcommand("diffset", "difference-set operations");
  diffset->require_subcommand(1);

  int gen_q = 2;
  auto* ds_gen = diffset->add_subcommand("gen", "Singer difference set of order q");
  ds_gen->add_option("--q", gen_q, "prime-power order")->required();

  int verify_delta = 7;
  std::string verify_set;
  auto* ds_verify = diffset->add_subcommand("verify", "check the difference property");
  ds_verify->add_option("--delta", verify_delta, "modulus")->required();
  ds_verify->add_option("--set", verify_set, "comma-separated residues")->required();

  int classes_q = 2;
  auto* ds_classes = diffset->add_subcommand("classes", "canonical class representatives");
  ds_classes->add_option("--q", classes_q, "order (at most 5)")->required();

  // polygon ------------------------------------------------------------
  auto* polygon = app.add_subcommand("polygon", "chamber systems and Singer polygons");
  polygon->require_subcommand(1);

  PolygonChoice build_choice, suites_choice, cover_choice;
  std::optional<int> check_m;
  auto* pg_build = polygon->add_subcommand("build", "build and optionally check axioms");
  auto* b1 = pg_build->add_option("--digon", build_choice.digon, "q or q1,q2");
  auto* b2 = pg_build->add_option("--triangle", build_choice.triangle, "difference set d0,d1,...");
  b1->excludes(b2);
  pg_build->add_option("--check", check_m, "verify generalized m-gon axioms");

  auto* pg_suites = polygon->add_subcommand("suites", "defining suites of the quotient");
  auto* s1 = pg_suites->add_option("--digon", suites_choice.digon, "q");
  auto* s2 = pg_suites->add_option("--triangle", suites_choice.triangle, "difference set d0,d1,...");
  s1->excludes(s2);

  auto* pg_cover = polygon->add_subcommand("cover-check", "verify the covering by suite lifting");
  auto* c1 = pg_cover->add_option("--digon", cover_choice.digon, "q");
  auto* c2 = pg_cover->add_option("--triangle", cover_choice.triangle, "difference set d0,d1,...");
  c1->excludes(c2);

  // gluing -------------------------------------------------------------
  auto* gluing = app.add_subcommand("gluing", "gluing matrices and Weyl data");
  gluing->require_subcommand(1);

  std::string validate_path, present_path, weyl_path, extract_path;
  bool universal = false;
  gluing->add_subcommand("validate", "validate a gluing-matrix file")
      ->add_option("file", validate_path, "gluing file")->required();
  auto* gl_present = gluing->add_subcommand("present", "lattice presentation of a gluing file");
  gl_present->add_option("file", present_path, "gluing file")->required();
  gl_present->add_flag("--universal", universal, "emit the universal group instead");
  gluing->add_subcommand("weyl", "serialized Weyl data of a gluing file")
      ->add_option("file", weyl_path, "gluing file")->required();
  gluing->add_subcommand("extract", "recover a gluing matrix from Weyl data")
      ->add_option("file", extract_path, "weyl file")->required();

  // group --------------------------------------------------------------
  auto* group = app.add_subcommand("group", "presentation analysis");
  group->require_subcommand(1);

  std::string abel_path, enum_path;
  long long limit = 100000;
  group->add_subcommand("abelianize", "Smith-normal-form abelianization")
      ->add_option("file", abel_path, "presentation file")->required();
  auto* gr_enum = group->add_subcommand("enumerate", "Todd-Coxeter over the trivial subgroup");
  gr_enum->add_option("file", enum_path, "presentation file")->required();
  gr_enum->add_option("--limit", limit, "maximum cosets (default 100000)");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (ds_gen->parsed())
      std::cout << singer::to_line(singer::singer_difference_set(gen_q).set) << "\n";
    else if (ds_verify->parsed())
      return run_diffset_verify(verify_delta, verify_set);
    else if (ds_classes->parsed()) {
      for (auto const& rep : singer::enumerate_difference_sets(classes_q).representatives)
        std::cout << singer::to_line(rep) << "\n";
    } else if (pg_build->parsed()) {
      if (!build_choice.digon && !build_choice.triangle)
        throw CLI::ValidationError("polygon build", "need --digon or --triangle");
      return run_polygon_build(build_choice, check_m);
    } else if (pg_suites->parsed()) {
      if (!suites_choice.digon && !suites_choice.triangle)
        throw CLI::ValidationError("polygon suites", "need --digon or --triangle");
      return run_polygon_suites(suites_choice);
    } else if (pg_cover->parsed()) {
      if (!cover_choice.digon && !cover_choice.triangle)
        throw CLI::ValidationError("polygon cover-check", "need --digon or --triangle");
      return run_polygon_cover_check(cover_choice);
    } else if (gluing->get_subcommand("validate")->parsed()) {
      auto g = load_gluing(validate_path);
      auto rep = singer::validate_gluing(g);
      if (rep.valid) {
        std::cout << "valid q=" << g.q << " vertices=" << g.vertices.size()
                  << " edges=" << g.edges.size() << "\n";
        return 0;
      }
      std::cout << "invalid: " << rep.message << "\n";
      return 1;
    } else if (gl_present->parsed()) {
      auto g = load_gluing(present_path);
      if (universal)
        std::cout << singer::to_text(
            singer::universal_presentation_weyl(singer::build_weyl_graph(g)));
      else
        std::cout << singer::to_text(singer::lattice_presentation(g));
    } else if (gluing->get_subcommand("weyl")->parsed()) {
      std::cout << singer::write_weyl(singer::build_weyl_graph(load_gluing(weyl_path)));
    } else if (gluing->get_subcommand("extract")->parsed()) {
      std::ifstream in(extract_path);
      if (!in) throw singer::Error("FileNotFound", "cannot open " + extract_path);
      std::cout << singer::write_gluing(
          singer::extract_gluing_matrix(singer::parse_weyl(in)));
    } else if (group->get_subcommand("abelianize")->parsed()) {
      std::cout << singer::to_string(singer::abelianization(load_presentation(abel_path)))
                << "\n";
    } else if (gr_enum->parsed()) {
      auto table = singer::coset_enumerate(load_presentation(enum_path), {}, limit);
      if (table.complete)
        std::cout << "complete index=" << table.index
                  << " cosets-defined=" << table.cosets_defined << "\n";
      else
        std::cout << "exceeded max-cosets=" << limit << "\n";
    }
  } catch (CLI::ValidationError const& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (singer::Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
