// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "pwh/cli.hpp"
#include "pwh/io.hpp"
#include "pwh/relations.hpp"
#include "pwh/verify.hpp"

using namespace pwh;

namespace {

constexpr std::uint64_t kSeed = 42;
// wall-clock budgets in seconds; 0 means none
constexpr double kIdentityBudget = 10;
constexpr double kPjoinBudget = 20;
constexpr double kFoldClassifyBudget = 30;

struct Outcome {
  bool passed;
  std::string detail;
};

Outcome from_reports(std::initializer_list<Report> reports) {
  std::size_t cases = 0;
  std::string detail;
  bool ok = true;
  for (const auto& r : reports) {
    ok = ok && r.passed();
    for (const auto& c : r.checks) {
      cases += c.cases;
      if (!c.passed) {
        detail += " [" + c.suite + ": " + c.statement + "]";
        for (const auto& ce : c.counterexamples) detail += " {" + ce + "}";
      }
    }
  }
  return {ok, std::to_string(cases) + " cases" + detail};
}

std::string cli(const std::vector<std::string>& args, const std::string& input, int* code) {
  std::istringstream in(input);
  std::ostringstream out, err;
  *code = run_cli(args, in, out, err);
  return out.str();
}

Outcome ac1() {
  Partition p = Partition::parse("1|2,3|4");
  SimplicialComplex k = identity_complex(p);
  std::vector<VertexSet> facets{labels({1, 2}), labels({1, 3}), labels({2, 3}), labels({2, 4}), labels({3, 4})};
  std::vector<VertexSet> mf = minimal_missing_faces(k);
  std::sort(mf.begin(), mf.end());
  std::vector<VertexSet> want_mf{labels({1, 2, 3}), labels({1, 4}), labels({2, 3, 4})};
  std::sort(want_mf.begin(), want_mf.end());
  bool ok = k.maximal_faces() == facets && mf == want_mf && k.vertices() == range_labels(4);
  return {ok, describe(k)};
}

Outcome ac10() {
  Rng rng(kSeed);
  std::size_t bad = 0;
  std::string first;
  auto note = [&](const std::string& what) {
    if (bad++ == 0) first = what;
  };
  for (int t = 0; t < 100; ++t) {
    SimplicialComplex k = random_complex(std::uniform_int_distribution<int>(1, 9)(rng), rng);
    std::string once = serialize_complex(k);
    if (serialize_complex(parse_complex(once)) != once) note("complex " + once);
    // through the command line: twice dualized gives the input back
    if (k == simplex(k.vertices())) continue;
    int c1 = 0, c2 = 0;
    std::string d = cli({"complex", "dual"}, once, &c1);
    std::string dd = cli({"complex", "dual"}, d, &c2);
    if (c1 || c2 || dd != once + "\n") note("cli dual " + once);
  }
  for (int t = 0; t < 20; ++t) {
    int m = std::uniform_int_distribution<int>(3, 7)(rng);
    Partition p = random_partition(m, std::uniform_int_distribution<int>(3, m)(rng), rng);
    std::vector<int> dims;
    std::string dims_text;
    for (int i = 0; i < m; ++i) {
      dims.push_back(std::uniform_int_distribution<int>(2, 4)(rng));
      dims_text += (i ? "," : "") + std::to_string(dims.back());
    }
    Relation r = t % 4 == 3 ? folded_relation(p, random_fold(p.ground(), rng), default_leaves(p, dims))
                            : relation(p, default_leaves(p, dims, t % 2 == 1), {t % 2 ? TrivialityMode::DJ : TrivialityMode::General, t % 3 == 0});
    std::string once = serialize_relation(r);
    if (serialize_relation(relation_from_json(parse_json(once))) != once) note("relation " + p.str());
    int code = 0;
    std::string out = cli({"relation", "--partition", p.str(), "--dims", dims_text}, "", &code);
    if (code || serialize_relation(relation_from_json(parse_json(out))) + "\n" != out) note("cli relation " + p.str());
  }
  return {bad == 0, "100 complexes, 20 relations" + (bad ? ", " + std::to_string(bad) + " mismatches, first " + first : "")};
}

}  // namespace

int main() {
  struct Criterion {
    std::string id, statement;
    double budget;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1", "identity complex fixture for 1|2,3|4 and its MF", 0, ac1},
      {"AC2", "K_Pi constructions agree and MF(K_Pi) = {[m] minus P_i}, 3 <= k <= m <= 7", kIdentityBudget,
       [] { return from_reports({run_suite("identity", {7, 0, kSeed})}); }},
      {"AC3", "MF formula vs brute force: K <= 4 vertices, pairs <= 3 vertices, 200 random larger", kPjoinBudget,
       [] { return from_reports({run_suite("pjoin", {4, 200, kSeed})}); }},
      {"AC4", "Alexander duality: exhaustive <= 5 vertices, 500 random <= 9 vertices", 0,
       [] { return from_reports({run_suite("dual", {5, 500, kSeed})}); }},
      {"AC5", "fold fixtures, 300 random fold property cases, L_psi maximality exhaustive <= 4", 0,
       [] { return from_reports({run_suite("folds", {5, 300, kSeed}), run_suite("lpsi", {4, 300, kSeed})}); }},
      {"AC6", "fold classification of K_Pi and its L_psi, every fold, m <= 7", kFoldClassifyBudget,
       [] { return from_reports({run_suite("fold-classify", {7, 0, kSeed})}); }},
      {"AC7", "eta(7), eta(8) fixtures and separation for 3 <= k <= 16", 0,
       [] { return from_reports({run_suite("eta", {})}); }},
      {"AC8", "Koszul signs (1000 random), singleton signs m <= 8, graded Jacobi pattern", 0,
       [] { return from_reports({run_suite("signs", {8, 1000, kSeed})}); }},
      {"AC9", "relations on 100 random partitions, DJ, folded annotations, fold-across example", 0,
       [] { return from_reports({run_suite("relations", {5, 100, kSeed})}); }},
      {"AC10", "serialize, parse, serialize is byte-identical, also through the CLI", 0, ac10},
  };

  bool all = true;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = c.budget == 0 || secs < c.budget;
    bool ok = o.passed && in_time;
    all = all && ok;
    char timing[64];
    if (c.budget > 0) std::snprintf(timing, sizeof timing, "%.2fs of %.0fs", secs, c.budget);
    else std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << c.id << ' ' << (ok ? "PASS" : "FAIL") << "  " << c.statement << "  (" << timing << "; " << o.detail
              << (in_time ? "" : "; over budget") << ")\n";
  }
  return all ? 0 : 1;
}
