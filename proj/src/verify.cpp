#include "pwh/verify.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <numeric>

#include "pwh/error.hpp"

namespace pwh {

EtaMatrix eta_matrix(int k) {
  if (k < 3) domain_error("bad-k", "the eta matrix needs k ≥ 3", std::to_string(k));
  EtaMatrix h;
  h.k = k;
  h.rows.assign(k, std::string(k, '-'));
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= k; ++j) {
      char& c = h.rows[i - 1][j - 1];
      if (i == j) c = '*';
      else if (i + j < k + 1 || (i + j == k + 1 && i < j)) c = '1';
      else c = '-';
    }
  }
  if (k % 2 == 0) {
    std::string& row = h.rows[k / 2];
    std::swap(row[k / 2 - 2], row[k / 2 - 1]);
  }
  return h;
}

std::string render(const EtaMatrix& h) {
  std::string out;
  for (const auto& row : h.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ' ';
      out += row[j];
    }
    out += '\n';
  }
  return out;
}

bool check_eta_separation(int k) {
  EtaMatrix h = eta_matrix(k);
  for (int i = 1; i <= k; ++i) {
    for (int j = i + 1; j <= k; ++j) {
      bool found = false;
      for (int r = 1; r <= k && !found; ++r) {
        found = r != i && r != j && h.at(i, r) == '1' && h.at(j, r) == '-';
      }
      if (!found) return false;
    }
  }
  return true;
}

std::vector<SimplicialComplex> enumerate_complexes(int n) {
  if (n < 0 || n > 5) domain_error("enumeration-too-large", "exhaustive enumeration is capped at 5 vertices", std::to_string(n));
  const Mask total = Mask{1} << n;
  std::vector<Mask> order(total);
  std::iota(order.begin(), order.end(), Mask{0});
  std::stable_sort(order.begin(), order.end(), [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b); });
  std::vector<char> in(total, 0);
  auto vertices = std::make_shared<const VertexSet>(range_labels(n));
  std::vector<SimplicialComplex> out;

  std::function<void(std::size_t)> dfs = [&](std::size_t idx) {
    if (idx == order.size()) {
      std::vector<Mask> facets;
      for (Mask m = 0; m < total; ++m) {
        if (!in[m]) continue;
        bool maximal = true;
        for (int b = 0; b < n && maximal; ++b) maximal = (m >> b & 1) || !in[m | Mask{1} << b];
        if (maximal) facets.push_back(m);
      }
      out.push_back(SimplicialComplex::from_masks(vertices, std::move(facets)));
      return;
    }
    Mask m = order[idx];
    dfs(idx + 1);
    for (int b = 0; b < n; ++b) {
      if ((m >> b & 1) && !in[m & ~(Mask{1} << b)]) return;
    }
    in[m] = 1;
    dfs(idx + 1);
    in[m] = 0;
  };
  dfs(0);
  return out;
}

SimplicialComplex random_complex(int n, Rng& rng) {
  if (n < 1) domain_error("bad-size", "random complexes need a vertex");
  const Mask full = (Mask{1} << n) - 1;
  int count = std::uniform_int_distribution<int>(0, n + 1)(rng);
  std::vector<Mask> facets;
  for (int i = 0; i < count; ++i) facets.push_back(rng() & full);
  if (facets.empty()) facets.push_back(0);
  return SimplicialComplex::from_masks(range_labels(n), std::move(facets));
}

SimplicialComplex random_complex(int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_complex(n, rng);
}

Partition random_partition(int m, int k, Rng& rng) {
  if (k < 1 || k > m) domain_error("bad-partition", "need 1 ≤ k ≤ m");
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 1);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<VertexId>> blocks(k);
  for (int t = 0; t < m; ++t) {
    std::size_t b = t < k ? t : std::uniform_int_distribution<int>(0, k - 1)(rng);
    blocks[b].push_back(VertexId(perm[t]));
  }
  return Partition::from_blocks(std::move(blocks));
}

Partition random_partition(int m, int k, std::uint64_t seed) {
  Rng rng(seed);
  return random_partition(m, k, rng);
}

Fold random_fold(const VertexSet& vertices, Rng& rng) {
  int n = static_cast<int>(vertices.size());
  if (n < 2) domain_error("bad-size", "a fold needs two vertices");
  std::vector<VertexId> vs = vertices;
  std::shuffle(vs.begin(), vs.end(), rng);
  int c = std::uniform_int_distribution<int>(1, n / 2)(rng);
  int t = std::uniform_int_distribution<int>(c, n - c)(rng);
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (int s = 0; s < t; ++s) {
    int target = s < c ? s : std::uniform_int_distribution<int>(0, c - 1)(rng);
    pairs.emplace_back(vs[c + s], vs[target]);
  }
  return Fold::from_pairs(std::move(pairs));
}

Fold random_fold(const SimplicialComplex& k, std::uint64_t seed) {
  Rng rng(seed);
  return random_fold(k.vertices(), rng);
}

void for_each_set_partition(int m, const std::function<void(const std::vector<VertexSet>&)>& f) {
  std::vector<VertexSet> blocks;
  std::function<void(int)> rec = [&](int v) {
    if (v > m) {
      f(blocks);
      return;
    }
    for (std::size_t b = 0; b <= blocks.size(); ++b) {
      if (b == blocks.size()) blocks.emplace_back();
      blocks[b].push_back(VertexId(v));
      rec(v + 1);
      blocks[b].pop_back();
      if (blocks[b].empty()) blocks.pop_back();
    }
  };
  rec(1);
}

void for_each_fold(const VertexSet& vertices, const std::function<void(const Fold&)>& f) {
  const int n = static_cast<int>(vertices.size());
  const Mask full = (Mask{1} << n) - 1;
  for (Mask fixed = 1; fixed < full; ++fixed) {
    std::vector<int> targets, sources;
    for (int b = 0; b < n; ++b) (fixed >> b & 1 ? targets : sources).push_back(b);
    std::vector<std::size_t> choice(sources.size(), 0);
    while (true) {
      std::vector<std::pair<VertexId, VertexId>> pairs;
      for (std::size_t s = 0; s < sources.size(); ++s) pairs.emplace_back(vertices[sources[s]], vertices[targets[choice[s]]]);
      f(Fold::from_pairs(std::move(pairs)));
      std::size_t s = 0;
      while (s < choice.size() && ++choice[s] == targets.size()) choice[s++] = 0;
      if (s == choice.size()) break;
    }
  }
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string report_to_text(const Report& r) {
  std::size_t width = 5;
  for (const auto& c : r.checks) width = std::max(width, c.suite.size());
  std::string out;
  char buf[64];
  for (const auto& c : r.checks) {
    std::snprintf(buf, sizeof buf, "%-*s  %s  %9zu  %7.2fs  ", static_cast<int>(width), c.suite.c_str(),
                  c.passed ? "pass" : "FAIL", c.cases, c.seconds);
    out += buf + c.statement + '\n';
    for (const auto& ce : c.counterexamples) out += "    counterexample: " + ce + '\n';
  }
  out += r.passed() ? "all checks passed\n" : "some checks FAILED\n";
  return out;
}

Json report_to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json j;
    j["suite"] = c.suite;
    j["statement"] = c.statement;
    j["passed"] = c.passed;
    j["cases"] = c.cases;
    j["seconds"] = c.seconds;
    j["counterexamples"] = c.counterexamples;
    checks.push_back(std::move(j));
  }
  Json out;
  out["passed"] = r.passed();
  out["checks"] = std::move(checks);
  return out;
}

}  // namespace pwh
