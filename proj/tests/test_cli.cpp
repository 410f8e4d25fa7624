// Golden-file checks for the singerlat command line.
//
// Usage: cli_tests <path-to-singerlat> <data-dir> <golden-dir>
// Runs each subcommand, compares exit codes and captured stdout against the
// expected text, and prints one line per check.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int failures = 0;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(std::string const& command) {
  RunResult result;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) {
    std::cerr << "cannot spawn: " << command << "\n";
    std::exit(2);
  }
  std::array<char, 4096> buffer;
  std::size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "missing file: " << path << "\n";
    std::exit(2);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void expect(std::string const& name, RunResult const& got, int exit_code,
            std::string const& output) {
  bool ok = got.exit_code == exit_code && got.output == output;
  std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
  if (!ok) {
    ++failures;
    std::cout << "  expected exit " << exit_code << ", got " << got.exit_code << "\n";
    std::cout << "  expected output:\n" << output << "  actual output:\n" << got.output;
  }
}

void expect_exit(std::string const& name, RunResult const& got, int exit_code) {
  bool ok = got.exit_code == exit_code;
  std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
  if (!ok) {
    ++failures;
    std::cout << "  expected exit " << exit_code << ", got " << got.exit_code
              << "; output:\n" << got.output;
  }
}

void expect_contains(std::string const& name, RunResult const& got, int exit_code,
                     std::string const& needle) {
  bool ok = got.exit_code == exit_code && got.output.find(needle) != std::string::npos;
  std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
  if (!ok) {
    ++failures;
    std::cout << "  expected exit " << exit_code << " and substring '" << needle
              << "', got exit " << got.exit_code << ":\n" << got.output;
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: cli_tests <singerlat> <data-dir> <golden-dir>\n";
    return 2;
  }
  std::string cli = argv[1];
  std::string data = argv[2];
  std::string golden = argv[3];

  expect("diffset verify valid", run(cli + " diffset verify --delta 7 --set 0,1,3"), 0,
         "valid order=2\n");
  expect("diffset verify invalid", run(cli + " diffset verify --delta 7 --set 0,1,2"),
         1, "invalid duplicated=1\n");
  expect("diffset gen q=2", run(cli + " diffset gen --q 2"), 0,
         "diffset q=2 delta=7 : 0 1 3\n");
  expect_contains("diffset gen rejects non prime powers", run(cli + " diffset gen --q 6"),
                  1, "NotPrimePower");
  expect("diffset classes q=2", run(cli + " diffset classes --q 2"), 0,
         "diffset q=2 delta=7 : 0 1 3\n");

  expect("digon suites golden", run(cli + " polygon suites --digon 2"), 0,
         slurp(golden + "/digon_q2.suites"));
  expect("triangle suites golden", run(cli + " polygon suites --triangle 0,1,3"), 0,
         slurp(golden + "/triangle_013.suites"));

  expect_contains("polygon build digon", run(cli + " polygon build --digon 2,2 --check 2"),
                  0, "check m=2 pass");
  expect_contains("polygon build wrong gonality",
                  run(cli + " polygon build --digon 1,2 --check 3"), 1, "fail");
  expect_contains("polygon build triangle",
                  run(cli + " polygon build --triangle 0,1,3,9 --check 3"), 0,
                  "check m=3 pass");
  expect("polygon cover-check digon", run(cli + " polygon cover-check --digon 2"), 0,
         "cover-check m=2 q=2 pass suites=4 fiber=3\n");
  expect("polygon cover-check triangle",
         run(cli + " polygon cover-check --triangle 0,1,3"), 0,
         "cover-check m=3 q=2 pass suites=8 fiber=7\n");

  std::string tmp = std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp";
  for (std::string name : {"a2tilde_1", "a2tilde_2", "hyperbolic_square",
                           "hyperbolic_mixed", "wild_pendant", "wild_two_cycles"}) {
    std::string file = data + "/" + name + ".gluing";
    expect_contains("gluing validate " + name, run(cli + " gluing validate " + file), 0,
                    "valid");
    auto first = run(cli + " gluing present " + file);
    expect("gluing present " + name, first, 0, slurp(golden + "/" + name + ".pres"));
    // Output is byte-deterministic across runs.
    auto second = run(cli + " gluing present " + file);
    expect("gluing present " + name + " repeats identically", second, first.exit_code,
           first.output);
    // Every shipped file round-trips validate -> present -> abelianize.
    std::string pres = tmp + "/cli_tests_" + name + ".pres";
    {
      std::ofstream out(pres);
      out << first.output;
    }
    expect_exit("group abelianize " + name, run(cli + " group abelianize " + pres), 0);
    std::remove(pres.c_str());
  }

  expect_contains("gluing present --universal",
                  run(cli + " gluing present --universal " + data + "/a2tilde_1.gluing"),
                  0, "gen g_1_s\n");

  // Weyl round trip: serialize, extract, and compare with the parsed input.
  std::string weyl_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                          "/cli_tests_a2tilde_1.weyl";
  {
    auto weyl = run(cli + " gluing weyl " + data + "/a2tilde_1.gluing");
    expect_exit("gluing weyl", weyl, 0);
    std::ofstream out(weyl_path);
    out << weyl.output;
  }
  expect("gluing extract recovers the matrix", run(cli + " gluing extract " + weyl_path),
         0,
         "vertices s t u\n"
         "edge s t 3\nedge t u 3\nedge u s 3\n"
         "order 2\n"
         "column s t : 1 3\ncolumn t u : 1 3\ncolumn u s : 1 3\n");

  // group subcommands read presentation files.
  std::string pres_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                          "/cli_tests_a2tilde_1.pres";
  {
    std::ofstream out(pres_path);
    out << slurp(golden + "/a2tilde_1.pres");
  }
  expect("group abelianize", run(cli + " group abelianize " + pres_path), 0,
         "abelianization rank=0 torsion=[7,7]\n");
  {
    std::ofstream out(pres_path);
    out << "gen a\nrel a^7\n";
  }
  expect("group enumerate", run(cli + " group enumerate " + pres_path + " --limit 100"),
         0, "complete index=7 cosets-defined=7\n");
  {
    std::ofstream out(pres_path);
    out << "gen a\ngen b\n";
  }
  expect("group enumerate free group exceeds",
         run(cli + " group enumerate " + pres_path + " --limit 50"), 0,
         "exceeded max-cosets=50\n");

  expect_exit("unknown flag is a usage error", run(cli + " diffset gen --qq 2"), 2);
  expect_exit("unknown subcommand is a usage error", run(cli + " frobnicate"), 2);
  expect_exit("missing required flag is a usage error", run(cli + " diffset gen"), 2);
  expect_exit("missing file is a domain error",
              run(cli + " gluing validate /nonexistent.gluing"), 1);

  std::remove(weyl_path.c_str());
  std::remove(pres_path.c_str());

  if (failures) {
    std::cout << failures << " CLI check(s) failed\n";
    return 1;
  }
  std::cout << "all CLI checks passed\n";
  return 0;
}
