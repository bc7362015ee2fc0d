#include <set>

#include "doctest.h"
#include "hlim/corpus.hpp"
#include "hlim/suites.hpp"

using namespace hlim;

TEST_CASE("suite registry") {
  const auto suites = registered_suites();
  CHECK(suites.size() == 12);
  for (const char* id : {"icM-acyclic", "op-vanishing", "category-laws"}) {
    bool found = false;
    for (const SuiteInfo& s : suites) found = found || s.id == id;
    CHECK(found);
  }
}

TEST_CASE("failures are data") {
  const SuiteReport empty = run_suite("");
  CHECK_FALSE(empty.passed);
  CHECK(empty.error == "empty suite id");
  CHECK(empty.to_json()["error"] == "empty suite id");
  const SuiteReport unknown = run_suite("no-such-suite");
  CHECK_FALSE(unknown.passed);
  CHECK(unknown.cases.empty());
}

TEST_CASE("small suites run and serialize") {
  const auto reports = run_suites({"reduction", "sylow-order-p", "wreath"});
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].suite == "reduction");
  for (const SuiteReport& r : reports) {
    CHECK(r.passed);
    CHECK(r.passed_cases() == r.cases.size());
    const auto j = r.to_json();
    CHECK(j["cases"].size() == r.cases.size());
    CHECK(j.contains("seconds"));
    CHECK_FALSE(r.to_json(false).contains("seconds"));
  }
  CHECK(reports[0].cases.size() >= 5);
  // deterministic apart from timings
  CHECK(run_suite("reduction").to_json(false) == reports[0].to_json(false));
}

TEST_CASE("finite corpus") {
  const auto groups = corpus_groups();
  for (const CorpusGroup& g : groups) CHECK(g.group.order() <= 200);
  CHECK(corpus_groups(10).size() < groups.size());
  const auto modules = finite_corpus();
  CHECK(modules.size() >= 60);
  std::set<std::string> names;
  for (const CorpusModule& m : modules) names.insert(m.name);
  CHECK(names.size() == modules.size());
}
