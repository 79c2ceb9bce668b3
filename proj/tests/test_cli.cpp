#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "kadapt/json_io.hpp"

namespace {

std::string tmp_path(const std::string& stem) {
  static int counter = 0;
  return std::string(KADAPT_TEST_TMPDIR) + "/" + stem + "_" + std::to_string(counter++);
}

struct CmdResult {
  int code = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  const std::string capture = tmp_path("out");
  const std::string cmd =
      std::string("\"") + KADAPT_CLI_PATH + "\" " + args + " >" + capture + " 2>&1";
  const int status = std::system(cmd.c_str());
  CmdResult res;
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(capture);
  std::stringstream ss;
  ss << in.rdbuf();
  res.out = ss.str();
  std::remove(capture.c_str());
  return res;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("cli solve reproduces the simplex numbers") {
  const std::string inst = tmp_path("su3") + ".json";
  auto gen = run_cli("generate builtin --name simplex-units --n 3 -o " + inst);
  REQUIRE(gen.code == 0);
  CHECK(gen.out.find("t=7") != std::string::npos);

  auto res = run_cli("solve " + inst + " --oracle");
  REQUIRE(res.code == 0);
  CHECK(first_line(res.out) == "v*=1/3 k_lb=2 k_ub=3 k_opt=3");

  auto js = run_cli("solve " + inst + " --json --oracle");
  REQUIRE(js.code == 0);
  auto j = nlohmann::json::parse(js.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["v_star"] == "1/3");
  CHECK(j["k_lb"] == 2);
  CHECK(j["k_ub"] == 3);
  CHECK(j["k_opt"] == 3);
  CHECK(j["policies"].size() == 3);
  CHECK(j["trace"][0]["newly_covered"] == 4);

  auto fl = run_cli("solve " + inst + " --float");
  CHECK(first_line(fl.out).rfind("v*=0.333333", 0) == 0);
}

TEST_CASE("cli generate knapsack echoes the family parameters") {
  const std::string inst = tmp_path("k") + ".json";
  auto gen = run_cli("generate knapsack --n 20 --t 40 --seed 1 -o " + inst);
  REQUIRE(gen.code == 0);
  CHECK(gen.out.find("Gamma=5") != std::string::npos);
  CHECK(gen.out.find("b=") != std::string::npos);

  // the written file loads and is deterministic in the seed
  auto loaded = kadapt::load_instance(inst);
  const auto& fin = std::get<kadapt::FiniteInstance>(loaded);
  CHECK(fin.t() == 40);
  CHECK(fin.n_y == 20);
  CHECK(fin.generated);
  const std::string inst2 = tmp_path("k") + ".json";
  run_cli("generate knapsack --n 20 --t 40 --seed 1 -o " + inst2);
  std::ifstream a(inst), b(inst2);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}

TEST_CASE("cli generate setcover round-trips") {
  const std::string subsets = tmp_path("subsets") + ".json";
  {
    std::ofstream out(subsets);
    out << "[[1,2],[2,3],[3]]";
  }
  const std::string inst = tmp_path("sc") + ".json";
  auto gen = run_cli("generate setcover --universe 3 --subsets " + subsets + " -o " + inst);
  REQUIRE(gen.code == 0);
  auto res = run_cli("solve " + inst + " --oracle");
  REQUIRE(res.code == 0);
  // {1,2} and {3} cover the universe
  CHECK(first_line(res.out).find("k_opt=2") != std::string::npos);
}

TEST_CASE("cli bounds subcommands") {
  CHECK(first_line(run_cli("bounds objective --nxi 2").out) == "k = 3");
  CHECK(first_line(run_cli("bounds gap --L 1 --diam 2 --s 2 --k 4").out)
            .rfind("gap <= 1.386294", 0) == 0);
  CHECK(first_line(run_cli("bounds policies --L 1 --diam 2 --nxi 2 --alpha 0").out) ==
        "k = 3");
  CHECK(first_line(run_cli("bounds cgap --L 1 --diam 2 --nxi 3 --s 4").out)
            .rfind("gap <= 0", 0) == 0);

  const std::string inst = tmp_path("rr") + ".json";
  REQUIRE(run_cli("generate builtin --name recourse-regions -o " + inst).code == 0);
  auto rep = run_cli("bounds constraint " + inst + " --obj-certain");
  REQUIRE(rep.code == 0);
  CHECK(first_line(rep.out) == "constraint_k_bound: k = 4");
  auto js = run_cli("bounds constraint " + inst + " --obj-certain --json");
  auto j = nlohmann::json::parse(js.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["value"] == 4);
}

TEST_CASE("cli regions dump") {
  const std::string inst = tmp_path("rr") + ".json";
  REQUIRE(run_cli("generate builtin --name recourse-regions -o " + inst).code == 0);
  const std::string dump = tmp_path("regions") + ".json";
  const std::string csv = tmp_path("regions") + ".csv";
  auto res = run_cli("regions " + inst + " --stability --json " + dump + " --csv " + csv);
  REQUIRE(res.code == 0);
  CHECK(res.out.find("regions (empirical R)  = 3") != std::string::npos);
  CHECK(res.out.find("all regions stable") != std::string::npos);

  std::ifstream dump_in(dump);
  auto j = nlohmann::json::parse(dump_in);
  CHECK(j["schema_version"] == 1);
  CHECK(j["r_empirical"] == 3);
  CHECK(j["eta_bound_mixed"] == 9);
  REQUIRE(j["regions"].size() == 3);
  CHECK(j["regions"][1]["feasible_set"].size() == 1);

  std::ifstream cf(csv);
  std::string header;
  std::getline(cf, header);
  CHECK(header == "region,signs,witness,feasible_set");
  std::string row;
  int rows = 0;
  while (std::getline(cf, row))
    if (!row.empty()) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("cli sweep is deterministic and parallel-stable") {
  auto a = run_cli("sweep --var t --values 6,10 --n 6 --reps 3 --seed 5");
  REQUIRE(a.code == 0);
  auto b = run_cli("sweep --var t --values 6,10 --n 6 --reps 3 --seed 5 --parallel 3");
  CHECK(a.out == b.out);
  CHECK(first_line(a.out) ==
        "sweep_var,value,rep,seed,v_star,k_lb,k_ub,runtime_ms,guarantee_bound");
  int lines = 0;
  for (char c : a.out)
    if (c == '\n') ++lines;
  CHECK(lines == 7);  // header + 2 values x 3 reps

  auto c = run_cli("sweep --var n --values 5..7 --t 6 --reps 1 --seed 5");
  REQUIRE(c.code == 0);
  CHECK(c.out.find("n,5,0,") != std::string::npos);
  CHECK(c.out.find("n,7,0,") != std::string::npos);
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("solve /nonexistent.json").code == 2);
  CHECK(run_cli("generate knapsack --n 0 --t 5").code == 2);
  CHECK(run_cli("sweep --var t --values , --n 5").code == 2);
  CHECK(run_cli("nonsense").code == 2);

  const std::string inf = tmp_path("inf") + ".json";
  {
    std::ofstream out(inf);
    out << R"({"schema_version":1,"kind":"finite","name":"inf","seed":0,
      "generated":false,"n_y":1,"y_space":{"lower":[0],"upper":[1]},
      "scenarios":[{"objective":[1],
        "constraints":[{"row":[1],"sense":">=","rhs":2}]}]})";
  }
  auto infeasible = run_cli("solve " + inf);
  CHECK(infeasible.code == 3);
  CHECK(infeasible.out.find("scenario 0") != std::string::npos);

  //4-dimensional uncertainty trips the arrangement guard
  const std::string wide = tmp_path("wide") + ".json";
  {
    std::ofstream out(wide);
    nlohmann::json j{{"schema_version", 1}, {"kind", "affine"}, {"name", "wide"},
                     {"seed", 0},           {"generated", false}, {"n_x", 1},
                     {"n_y", 1},            {"n_xi", 4},          {"m", 1}};
    j["X"] = {{0}};
    j["y_space"] = {{"lower", {0}}, {"upper", {1}}};
    j["A"] = {{0}};
    j["Ai"] = {{{0}}, {{0}}, {{0}}, {{0}}};
    j["B"] = {{1}};
    j["Bi"] = {{{0}}, {{0}}, {{0}}, {{0}}};
    j["H"] = {{1, 0, 0, 0}};
    j["h"] = {0};
    j["U_box"] = {{"lower", {0, 0, 0, 0}}, {"upper", {1, 1, 1, 1}}};
    j["objective"] = {{"c0", {1}}};
    out << j.dump();
  }
  auto guard = run_cli("regions " + wide);
  CHECK(guard.code == 4);
}

TEST_CASE("cli accepts composed builtin names") {
  auto res = run_cli("generate builtin --name \"cardinality-band(4)\"");
  REQUIRE(res.code == 0);
  auto j = nlohmann::json::parse(res.out);
  CHECK(j["name"] == "cardinality-band(4)");
  CHECK(j["kind"] == "finite");
}
