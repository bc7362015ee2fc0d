#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "hlim/cli.hpp"

using namespace hlim::cli;
using nlohmann::json;

namespace {

JobSpec job(const std::string& command) {
  JobSpec s;
  s.command = command;
  return s;
}

std::vector<std::size_t> dims(const json& report) { return report["results"]["dims"].get<std::vector<std::size_t>>(); }

std::string error_field(const JobSpec& s) {
  try {
    validate(s);
    (void)run(s);
  } catch (const SpecError& e) {
    return e.field();
  }
  return {};
}

int run_main(std::vector<std::string> args) {
  args.insert(args.begin(), "hlim");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  return hlim::cli::main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("lambda of S3 over F3 vanishes by the O_p shortcut") {
  JobSpec s = job("lambda");
  s.group = "S3";
  s.p = 3;
  s.module = "trivial1";
  s.n_degrees = 4;
  const json r = run(s);
  CHECK(dims(r) == std::vector<std::size_t>{0, 0, 0, 0});
  for (const json& d : r["results"]["degrees"]) {
    CHECK(d["provenance"] == "SHORTCUT_OP");
    CHECK(d["safe_window"] == json::array({0, 3}));
  }
  CHECK(r["input"] == to_json(s));
  CHECK(r["artifact_version"] == kArtifactVersion);
  CHECK(r["extrapolation"].is_null());
  CHECK_FALSE(report_failed(r));
}

TEST_CASE("corpus lambda at the second truncation") {
  JobSpec s = job("corpus");
  s.family = "hgm-gamma0";
  s.level = 2;
  s.op = "lambda";
  s.n_degrees = 3;
  CHECK(dims(run(s)) == std::vector<std::size_t>{0, 4, 0});
}

TEST_CASE("routes agree") {
  JobSpec s = job("lambda");
  s.group = "S4";
  s.p = 2;
  s.module = "perm";
  s.n_degrees = 3;
  s.route = "bar";
  const auto bar = dims(run(s));
  s.route = "subgroup-complex";
  const json sc = run(s);
  CHECK(dims(sc) == bar);
  CHECK(sc["results"]["degrees"][0]["provenance"] == "SUBGROUP_COMPLEX");
}

TEST_CASE("group and module grammar") {
  JobSpec s = job("lambda");
  s.p = 2;
  s.n_degrees = 2;
  // S3 from explicit generators and with explicit generator matrices for the sign-free permutation module
  s.group = "gens(3; (0 1 2); (0 1))";
  s.module = "mat(3; 0,0,1/1,0,0/0,1,0; 0,1,0/1,0,0/0,0,1)";
  const auto by_matrices = dims(run(s));
  s.module = "perm";
  CHECK(by_matrices == dims(run(s)));
  s.group = "direct(S3, C2)";
  s.module = "outer(perm, trivial1)";
  CHECK(run(s)["results"]["module_dim"] == 3);
  s.group = "semidirect(C7, C3, 2)";
  s.module = "trivial1";
  CHECK(run(s)["results"]["group"]["order"] == 21);
  s.group = "wreath(C2, 2)";
  CHECK(run(s)["results"]["group"]["order"] == 8);
  s.group = "hgm-gamma0@1";
  s.module = "field";
  CHECK(dims(run(s)) == std::vector<std::size_t>{0, 2});
  s.group.clear();
  s.p = 3;
  s.module = "S4/p3/perm";
  CHECK(run(s)["results"]["group"]["order"] == 24);
}

TEST_CASE("higher limits and cohomology") {
  JobSpec s = job("higher-limits");
  s.group = "S4";
  s.p = 2;
  s.module = "perm";
  s.functor = "fixed-point";
  s.n_degrees = 2;
  CHECK(dims(run(s)) == std::vector<std::size_t>{1, 0});
  s.functor = "constant(2)";
  s.objects = "containing(O_p)";
  CHECK(dims(run(s))[0] == 2);
  JobSpec c = job("cohomology");
  c.group = "C2";
  c.p = 2;
  c.module = "trivial1";
  c.n_degrees = 4;
  CHECK(dims(run(c)) == std::vector<std::size_t>{1, 1, 1, 1});
}

TEST_CASE("spectral jobs") {
  JobSpec s = job("spectral");
  s.theorem = "lhs";
  s.group = "C4";
  s.p = 2;
  s.module = "trivial1";
  s.normal = "gen((0 2)(1 3))";
  s.n_degrees = 3;
  const json r = run(s);
  CHECK(r["results"]["convergence"]["ok"] == true);
  CHECK(r["results"]["e2"]["entries"][1][1] == 1);
  s.theorem = "product";
  s.group = "direct(C3, C3)";
  s.p = 3;
  s.module = "outer(trivial1, trivial1)";
  CHECK_FALSE(report_failed(run(s)));
}

TEST_CASE("tower reports carry the extrapolation tag") {
  JobSpec s = job("tower");
  s.family = "hgm-gamma0";
  s.level = 2;
  s.degree = 1;
  const json r = run(s);
  CHECK(r["extrapolation"].is_string());
  CHECK(r["results"]["window"].size() == 3);
  CHECK(r["results"]["window"][2]["dim"] == 4);
  s.family = "finite-s3";
  CHECK(run(s)["extrapolation"].is_null());
}

TEST_CASE("verify reports") {
  JobSpec s = job("verify");
  s.suite = "reduction";
  const json r = run(s);
  CHECK_FALSE(report_failed(r));
  CHECK(r["results"]["suites"][0]["suite"] == "reduction");
  CHECK(r["timings"]["suites"].contains("reduction"));
  CHECK(summary(r).find("PASS reduction (6/6)") != std::string::npos);
}

TEST_CASE("malformed jobs name the field") {
  JobSpec s = job("lambda");
  s.group = "S3";
  s.p = 4;
  s.module = "trivial1";
  CHECK(error_field(s) == "p");
  s.p = 3;
  s.module = "mat(2; 1,0/0,1)";
  CHECK(error_field(s) == "module");
  s.module = "trivial1";
  s.group = "Q8x";
  CHECK(error_field(s) == "group");
  s.group = "S3";
  s.route = "fast";
  CHECK(error_field(s) == "route");
  s.route = "auto";
  s.n_degrees = 0;
  CHECK(error_field(s) == "N");
  CHECK(error_field(job("explode")) == "command");
  JobSpec v = job("verify");
  v.suite = "nope";
  CHECK(error_field(v) == "suite");
  JobSpec t = job("tower");
  t.family = "hgm-gamma0";
  CHECK(error_field(t) == "truncate");
  try {
    (void)spec_from_json(json{{"command", "lambda"}, {"colour", "red"}});
    FAIL("unknown key accepted");
  } catch (const SpecError& e) {
    CHECK(e.field() == "colour");
  }
  try {
    (void)spec_from_json(json{{"p", "three"}});
    FAIL("string prime accepted");
  } catch (const SpecError& e) {
    CHECK(e.field() == "p");
  }
}

TEST_CASE("reports are deterministic apart from timings") {
  const JobSpec s = sample_spec();
  json a = run(s), b = run(s);
  a.erase("timings");
  b.erase("timings");
  CHECK(a.dump() == b.dump());
}

TEST_CASE("describe") {
  CHECK(command_names().size() == 7);
  const json d = describe_json();
  CHECK(d["commands"].size() == 7);
  const auto required = d["report"]["required"].get<std::vector<std::string>>();
  CHECK(std::find(required.begin(), required.end(), "extrapolation") != required.end());
  const std::string text = describe_text();
  for (const std::string& c : command_names()) CHECK(text.find("  " + c + " ") != std::string::npos);
  const JobSpec sample = sample_spec();
  CHECK(to_json(spec_from_json(to_json(sample))) == to_json(sample));
  CHECK(spec_from_json(json::parse(to_json(sample).dump())).module == "trivial1");
}

TEST_CASE("exit status") {
  CHECK(run_main({"lambda", "--group", "S3", "--p", "3", "--module", "trivial1", "--N", "2"}) == 0);
  CHECK(run_main({"lambda", "--group", "S3", "--p", "4", "--module", "trivial1"}) == 2);
  CHECK(run_main({"lambda", "--bogus"}) == 2);
  CHECK(run_main({"describe", "--format", "json"}) == 0);
}
