#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pwh/complex.hpp"
#include "pwh/folds.hpp"
#include "pwh/io.hpp"
#include "pwh/relations.hpp"

namespace pwh {

/// k × k grid over '*', '1', '-'; row i, column j are 1-based.
struct EtaMatrix {
  int k = 0;
  std::vector<std::string> rows;

  char at(int i, int j) const { return rows.at(i - 1).at(j - 1); }
};

/// Diagonal '*'; '1' above the anti-diagonal and on it when i < j, '-'
/// otherwise; for even k the entries (k/2+1, k/2−1) and (k/2+1, k/2) swap.
EtaMatrix eta_matrix(int k);
/// One line per row, entries separated by single spaces.
std::string render(const EtaMatrix& h);
/// For all i < j some r ∉ {i, j} has η(i,r) = '1' and η(j,r) = '-'.
bool check_eta_separation(int k);

/// Every complex on vertices 1..n (VOID and ghosts included), n ≤ 5.
std::vector<SimplicialComplex> enumerate_complexes(int n);

using Rng = std::mt19937_64;

/// Non-VOID complex on 1..n.
SimplicialComplex random_complex(int n, Rng& rng);
SimplicialComplex random_complex(int n, std::uint64_t seed);
/// k nonempty blocks on 1..m in random order.
Partition random_partition(int m, int k, Rng& rng);
Partition random_partition(int m, int k, std::uint64_t seed);
/// Random fold on a vertex set with at least two vertices.
Fold random_fold(const VertexSet& vertices, Rng& rng);
Fold random_fold(const SimplicialComplex& k, std::uint64_t seed);

/// Set partitions of 1..m, blocks ordered by least element.
void for_each_set_partition(int m, const std::function<void(const std::vector<VertexSet>&)>& f);
/// Every fold on the vertex set (one per idempotent non-identity self-map).
void for_each_fold(const VertexSet& vertices, const std::function<void(const Fold&)>& f);

struct Budget {
  int max_vertices = 5;
  int samples = 200;
  std::uint64_t seed = 42;
};

struct CheckResult {
  std::string suite;
  std::string statement;
  bool passed = true;
  std::size_t cases = 0;
  double seconds = 0;
  std::vector<std::string> counterexamples;  // first few only
};

struct Report {
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// mf, dual, pjoin, folds, lpsi, identity, fold-classify, eta, signs,
/// relations or all.
Report run_suite(std::string_view name, const Budget& budget = {});
const std::vector<std::string>& suite_names();

std::string report_to_text(const Report& r);
Json report_to_json(const Report& r);

}  // namespace pwh
