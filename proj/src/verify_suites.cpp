#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <set>

#include "pwh/error.hpp"
#include "pwh/folds.hpp"
#include "pwh/polyjoin.hpp"
#include "pwh/relations.hpp"
#include "pwh/verify.hpp"

namespace pwh {

namespace {

using Clock = std::chrono::steady_clock;
using FacetSet = std::set<VertexSet>;

class Check {
 public:
  Check(std::string suite, std::string statement) : start_(Clock::now()) {
    r_.suite = std::move(suite);
    r_.statement = std::move(statement);
  }

  template <class Describe>
  void expect(bool ok, Describe&& describe) {
    ++r_.cases;
    if (ok) return;
    r_.passed = false;
    if (r_.counterexamples.size() < 5) r_.counterexamples.push_back(describe());
  }

  void fail(std::string why) {
    r_.passed = false;
    if (r_.counterexamples.size() < 5) r_.counterexamples.push_back(std::move(why));
  }

  CheckResult finish() {
    r_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    return r_;
  }

 private:
  CheckResult r_;
  Clock::time_point start_;
};

// Runs body and turns a stray exception into a failed check.
template <class Body>
CheckResult run_check(std::string suite, std::string statement, Body&& body) {
  Check c(std::move(suite), std::move(statement));
  try {
    body(c);
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
  return c.finish();
}

// ---- set-based oracles, independent of the library algorithms ----

// Dense face table on an explicit label list (in any order).
struct Naive {
  std::vector<VertexId> labels;
  std::vector<char> faces;

  int n() const { return static_cast<int>(labels.size()); }
  VertexSet set_of(Mask m) const {
    std::vector<VertexId> out;
    for (int b = 0; b < n(); ++b) {
      if (m >> b & 1) out.push_back(labels[b]);
    }
    return make_vertex_set(std::move(out));
  }
};

Mask local_mask(const std::vector<VertexId>& labels, const VertexSet& face) {
  Mask m = 0;
  for (const auto& v : face) {
    auto it = std::find(labels.begin(), labels.end(), v);
    m |= Mask{1} << (it - labels.begin());
  }
  return m;
}

void close_down(Naive& k) {
  const Mask total = Mask{1} << k.n();
  for (Mask m = total; m-- > 0;) {
    if (!k.faces[m]) continue;
    for (int b = 0; b < k.n(); ++b) {
      if (m >> b & 1) k.faces[m & ~(Mask{1} << b)] = 1;
    }
  }
}

Naive naive_of(const SimplicialComplex& k) {
  Naive out{k.vertices(), std::vector<char>(std::size_t{1} << k.vertex_count(), 0)};
  for (const auto& f : k.maximal_faces()) out.faces[local_mask(out.labels, f)] = 1;
  close_down(out);
  return out;
}

FacetSet naive_facets(const Naive& k) {
  FacetSet out;
  const Mask total = Mask{1} << k.n();
  for (Mask m = 0; m < total; ++m) {
    if (!k.faces[m]) continue;
    bool maximal = true;
    for (int b = 0; b < k.n() && maximal; ++b) maximal = (m >> b & 1) || !k.faces[m | Mask{1} << b];
    if (maximal) out.insert(k.set_of(m));
  }
  return out;
}

FacetSet naive_mf(const Naive& k) {
  FacetSet out;
  const Mask total = Mask{1} << k.n();
  for (Mask m = 0; m < total; ++m) {
    if (k.faces[m]) continue;
    bool minimal = true;
    for (int b = 0; b < k.n() && minimal; ++b) minimal = !(m >> b & 1) || k.faces[m & ~(Mask{1} << b)];
    if (minimal) out.insert(k.set_of(m));
  }
  return out;
}

FacetSet as_set(const std::vector<VertexSet>& v) { return FacetSet(v.begin(), v.end()); }

bool same(const Naive& a, const SimplicialComplex& k) {
  return make_vertex_set(a.labels) == k.vertices() && naive_facets(a) == as_set(k.maximal_faces());
}

std::string show(const SimplicialComplex& k) { return describe(k); }

std::string show_facets(const FacetSet& s) {
  std::string out = "[";
  for (const auto& f : s) out += (out.size() > 1 ? "," : "") + to_string(f);
  return out + "]";
}

// Image of every face under the fold, on V∖I.
Naive naive_fold(const Naive& k, const Fold& fold) {
  std::vector<VertexId> rest;
  for (const auto& v : k.labels) {
    if (!contains(fold.sources(), v)) rest.push_back(v);
  }
  std::map<VertexId, VertexId> psi(fold.mapping().begin(), fold.mapping().end());
  Naive out{rest, std::vector<char>(std::size_t{1} << rest.size(), 0)};
  const Mask total = Mask{1} << k.n();
  for (Mask m = 0; m < total; ++m) {
    if (!k.faces[m]) continue;
    Mask img = 0;
    for (int b = 0; b < k.n(); ++b) {
      if (!(m >> b & 1)) continue;
      VertexId v = k.labels[b];
      if (auto it = psi.find(v); it != psi.end()) v = it->second;
      img |= Mask{1} << (std::find(rest.begin(), rest.end(), v) - rest.begin());
    }
    out.faces[img] = 1;
  }
  return out;
}

// {σ ⊆ V : ψ̄(σ) is a face of the folded complex}
Naive naive_lpsi(const Naive& k, const Fold& fold) {
  Naive folded = naive_fold(k, fold);
  std::map<VertexId, VertexId> psi(fold.mapping().begin(), fold.mapping().end());
  Naive out{k.labels, std::vector<char>(k.faces.size(), 0)};
  for (Mask m = 0; m < out.faces.size(); ++m) {
    Mask img = 0;
    for (int b = 0; b < k.n(); ++b) {
      if (!(m >> b & 1)) continue;
      VertexId v = k.labels[b];
      if (auto it = psi.find(v); it != psi.end()) v = it->second;
      img |= Mask{1} << (std::find(folded.labels.begin(), folded.labels.end(), v) - folded.labels.begin());
    }
    out.faces[m] = folded.faces[img];
  }
  return out;
}

int bubble_sign(std::vector<int> images, const std::vector<int>& dims) {
  int sign = 1;
  for (std::size_t pass = 0; pass < images.size(); ++pass) {
    for (std::size_t i = 0; i + 1 < images.size(); ++i) {
      if (images[i] > images[i + 1]) {
        if ((dims[images[i] - 1] * dims[images[i + 1] - 1]) % 2) sign = -sign;
        std::swap(images[i], images[i + 1]);
      }
    }
  }
  return sign;
}

// Vertices 1..n as bits 0..n−1.
Mask ground_mask(const VertexSet& s) {
  Mask m = 0;
  for (const auto& v : s) m |= Mask{1} << (v[0] - 1);
  return m;
}

std::vector<Mask> ground_facets(const SimplicialComplex& k) {
  Mask bit[64];
  for (std::size_t b = 0; b < k.vertex_count(); ++b) bit[b] = Mask{1} << (k.vertices()[b][0] - 1);
  std::vector<Mask> out;
  out.reserve(k.facet_masks().size());
  for (Mask f : k.facet_masks()) {
    Mask g = 0;
    for (Mask r = f; r; r &= r - 1) g |= bit[std::countr_zero(r)];
    out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int rand_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

SimplicialComplex without_ghosts(SimplicialComplex k) {
  std::vector<VertexSet> fs = k.maximal_faces();
  for (const auto& v : k.vertices()) fs.push_back({v});
  return SimplicialComplex::from_faces(k.vertices(), fs);
}

// ---- suites ----

void suite_mf(const Budget& b, Report& out) {
  Rng rng(b.seed);
  out.checks.push_back(run_check("mf", "MF(K) is the set of inclusion-minimal non-faces", [&](Check& c) {
    auto test = [&](const SimplicialComplex& k) {
      if (k.is_void()) return;
      FacetSet expected = naive_mf(naive_of(k));
      FacetSet got = as_set(minimal_missing_faces(k));
      c.expect(got == expected, [&] { return show(k) + " gives " + show_facets(got); });
    };
    for (int n = 0; n <= std::min(b.max_vertices, 5); ++n) {
      for (const auto& k : enumerate_complexes(n)) test(k);
    }
    for (int s = 0; s < b.samples; ++s) test(random_complex(rand_int(rng, 1, 9), rng));
  }));
  out.checks.push_back(run_check("mf", "a complex is determined by its minimal missing faces", [&](Check& c) {
    auto test = [&](const SimplicialComplex& k) {
      if (k.is_void()) return;
      SimplicialComplex back = from_minimal_missing_faces(k.vertices(), minimal_missing_faces(k));
      c.expect(back == k, [&] { return show(k) + " rebuilt as " + show(back); });
    };
    for (int n = 0; n <= std::min(b.max_vertices, 5); ++n) {
      for (const auto& k : enumerate_complexes(n)) test(k);
    }
    for (int s = 0; s < b.samples; ++s) test(random_complex(rand_int(rng, 1, 9), rng));
  }));
}

void suite_dual(const Budget& b, Report& out) {
  std::vector<SimplicialComplex> cases;
  for (int n = 1; n <= std::min(b.max_vertices, 5); ++n) {
    for (auto& k : enumerate_complexes(n)) {
      if (!k.is_void()) cases.push_back(std::move(k));
    }
  }
  std::size_t exhaustive = cases.size();
  Rng rng(b.seed);
  for (int s = 0; s < b.samples; ++s) cases.push_back(random_complex(rand_int(rng, 1, 9), rng));
  std::string scope = " (" + std::to_string(exhaustive) + " exhaustive, " + std::to_string(b.samples) + " random)";

  out.checks.push_back(run_check("dual", "faces of the dual are complements of non-faces" + scope, [&](Check& c) {
    for (const auto& k : cases) {
      Naive nk = naive_of(k);
      Naive d{nk.labels, std::vector<char>(nk.faces.size(), 0)};
      const Mask full = (Mask{1} << nk.n()) - 1;
      for (Mask m = 0; m <= full; ++m) d.faces[m] = !nk.faces[full ^ m];
      SimplicialComplex got = alexander_dual(k);
      c.expect(same(d, got), [&] { return show(k) + " dual " + show(got); });
    }
  }));
  out.checks.push_back(run_check("dual", "Alexander duality is an involution" + scope, [&](Check& c) {
    for (const auto& k : cases) {
      SimplicialComplex d = alexander_dual(k);
      if (d.is_void()) {
        c.expect(k == simplex(k.vertices()), [&] { return show(k) + " has a VOID dual"; });
        continue;
      }
      SimplicialComplex dd = alexander_dual(d);
      c.expect(dd == k, [&] { return show(k) + " double dual " + show(dd); });
    }
  }));
  out.checks.push_back(run_check("dual", "maximal faces of the dual are complements of MF(K)" + scope, [&](Check& c) {
    for (const auto& k : cases) {
      FacetSet comp;
      for (const auto& f : minimal_missing_faces(k)) comp.insert(set_difference(k.vertices(), f));
      FacetSet got = as_set(alexander_dual(k).maximal_faces());
      c.expect(got == comp, [&] { return show(k); });
    }
  }));
}

struct PairCase {
  SimplicialComplex big, small;
};

std::vector<PairCase> all_pairs(int max_n) {
  std::vector<PairCase> out;
  for (int n = 1; n <= max_n; ++n) {
    auto all = enumerate_complexes(n);
    for (const auto& s : all) {
      if (s.is_void()) continue;
      for (const auto& t : all) {
        if (is_subcomplex(t, s)) out.push_back({s, t});
      }
    }
  }
  return out;
}

// The definition: union over all faces σ of K of the joins of S_i (i ∈ σ) and T_i (i ∉ σ).
Naive naive_pjoin(const SimplicialComplex& k, const std::vector<PairCase>& pairs) {
  Naive nk = naive_of(k);
  std::vector<VertexId> labels;
  std::vector<int> offset;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    offset.push_back(static_cast<int>(labels.size()));
    const VertexSet& inner = pairs[i].big.vertices();
    for (const auto& u : inner) labels.push_back(inner.size() == 1 ? k.vertices()[i] : k.vertices()[i].extended(u));
  }
  Naive out{labels, std::vector<char>(std::size_t{1} << labels.size(), 0)};
  std::vector<std::vector<Mask>> big_f, small_f;
  for (const auto& p : pairs) {
    big_f.emplace_back();
    small_f.emplace_back();
    for (const auto& f : p.big.maximal_faces()) big_f.back().push_back(local_mask(p.big.vertices(), f));
    for (const auto& f : p.small.maximal_faces()) small_f.back().push_back(local_mask(p.small.vertices(), f));
  }
  const Mask total = Mask{1} << nk.n();
  for (Mask sigma = 0; sigma < total; ++sigma) {
    if (!nk.faces[sigma]) continue;
    std::function<void(std::size_t, Mask)> rec = [&](std::size_t i, Mask acc) {
      if (i == pairs.size()) {
        out.faces[acc] = 1;
        return;
      }
      const auto& options = (sigma >> i & 1) ? big_f[i] : small_f[i];
      for (Mask f : options) rec(i + 1, acc | f << offset[i]);
    };
    rec(0, 0);
  }
  close_down(out);
  return out;
}

void suite_pjoin(const Budget& b, Report& out) {
  std::vector<PairCase> pairs = all_pairs(3);
  std::vector<SimplicialComplex> ks;
  for (int n = 1; n <= std::min(b.max_vertices, 4); ++n) {
    for (auto& k : enumerate_complexes(n)) {
      if (!k.is_void() && k.realized_vertices() == k.vertices()) ks.push_back(std::move(k));
    }
  }
  struct Case {
    SimplicialComplex k;
    std::vector<PairCase> pairs;
  };
  std::vector<Case> cases;
  const std::size_t np = pairs.size();
  for (const auto& k : ks) {
    std::size_t n = k.vertex_count();
    if (n <= 2) {
      std::size_t combos = n == 1 ? np : np * np;
      for (std::size_t c = 0; c < combos; ++c) {
        std::vector<PairCase> ps{pairs[c % np]};
        if (n == 2) ps.push_back(pairs[c / np]);
        cases.push_back({k, std::move(ps)});
      }
    } else {
      // every pair occurs at every slot
      for (std::size_t p = 0; p < np; ++p) {
        std::vector<PairCase> ps;
        for (std::size_t s = 0; s < n; ++s) ps.push_back(pairs[(p + s * 97) % np]);
        cases.push_back({k, std::move(ps)});
      }
    }
  }
  std::size_t exhaustive = cases.size();
  Rng rng(b.seed);
  for (int s = 0; s < b.samples;) {
    SimplicialComplex k = without_ghosts(random_complex(rand_int(rng, 5, 6), rng));
    std::vector<PairCase> ps;
    std::size_t total = 0;
    for (std::size_t i = 0; i < k.vertex_count(); ++i) {
      ps.push_back(pairs[std::uniform_int_distribution<std::size_t>(0, np - 1)(rng)]);
      total += ps.back().big.vertex_count();
    }
    if (total > 16) continue;
    cases.push_back({k, std::move(ps)});
    ++s;
  }
  std::string scope = " (" + std::to_string(exhaustive) + " structured, " + std::to_string(b.samples) + " random)";

  auto lib_pairs = [](const Case& c) {
    std::vector<SimplicialPair> out;
    for (const auto& p : c.pairs) out.emplace_back(p.big, p.small);
    return out;
  };
  auto show_case = [](const Case& c) {
    std::string s = "K=" + describe(c.k);
    for (const auto& p : c.pairs) s += " (" + describe(p.big) + ", " + describe(p.small) + ")";
    return s;
  };
  std::vector<Naive> naive;
  naive.reserve(cases.size());
  out.checks.push_back(run_check("pjoin", "polyhedral join equals its all-faces definition" + scope, [&](Check& c) {
    for (const auto& cs : cases) {
      naive.push_back(naive_pjoin(cs.k, cs.pairs));
      SimplicialComplex got = polyhedral_join(cs.k, lib_pairs(cs));
      c.expect(same(naive.back(), got), [&] { return show_case(cs); });
    }
  }));
  out.checks.push_back(run_check("pjoin", "MF formula equals brute-force MF of the join" + scope, [&](Check& c) {
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const auto& ps = cases[i].pairs;
      bool void_small = std::any_of(ps.begin(), ps.end(), [](const PairCase& p) { return p.small.is_void(); });
      if (!naive[i].faces[0]) {
        // only VOID T_i can make the join VOID, and MF of VOID is undefined
        std::string code;
        try {
          mf_polyhedral_join(cases[i].k, lib_pairs(cases[i]));
        } catch (const Error& e) {
          code = e.code();
        }
        c.expect(void_small && code == "void-complex", [&] { return show_case(cases[i]) + " (VOID join)"; });
        continue;
      }
      MfRoute route = MfRoute::Formula;
      FacetSet got = as_set(mf_polyhedral_join(cases[i].k, lib_pairs(cases[i]), {}, &route));
      bool routed = (route == MfRoute::Formula) != void_small;
      c.expect(routed && got == naive_mf(naive[i]), [&] { return show_case(cases[i]); });
    }
  }));
}

void suite_folds(const Budget& b, Report& out) {
  Rng rng(b.seed);
  struct Case {
    SimplicialComplex k;
    Fold fold;
  };
  std::vector<Case> cases;
  for (int s = 0; s < b.samples; ++s) {
    SimplicialComplex k = random_complex(rand_int(rng, 3, 7), rng);
    cases.push_back({k, random_fold(k.vertices(), rng)});
  }
  auto show_case = [](const Case& c) { return describe(c.k) + " fold " + c.fold.str(); };
  std::string scope = " (" + std::to_string(b.samples) + " random)";

  out.checks.push_back(run_check("folds", "fixtures: 4->1 folds the square with a diagonal onto a triangle boundary, and its L_psi", [&](Check& c) {
    SimplicialComplex sq =
        SimplicialComplex::from_faces(range_labels(4), {labels({1, 2}), labels({1, 3}), labels({2, 3}), labels({2, 4}), labels({3, 4})});
    Fold f = Fold::parse("4->1");
    c.expect(folded_complex(sq, f) == boundary_simplex(labels({1, 2, 3})), [] { return std::string("folded square"); });
    c.expect(as_set(max_folding_complex(sq, f).maximal_faces()) ==
                 FacetSet{labels({1, 2, 4}), labels({1, 3, 4}), labels({2, 3})},
             [] { return std::string("L_psi of the square"); });
  }));
  out.checks.push_back(run_check("folds", "folded complex is the image of all faces" + scope, [&](Check& c) {
    for (const auto& cs : cases) {
      SimplicialComplex got = folded_complex(cs.k, cs.fold);
      c.expect(same(naive_fold(naive_of(cs.k), cs.fold), got), [&] { return show_case(cs); });
      SimplicialComplex by_char = folded_complex_by_characterization(cs.k, cs.fold);
      c.expect(by_char == got, [&] { return show_case(cs) + " (characterization)"; });
    }
  }));
  out.checks.push_back(run_check("folds", "K folded i->j is isomorphic to K folded j->i" + scope, [&](Check& c) {
    for (const auto& cs : cases) {
      const VertexSet& v = cs.k.vertices();
      std::size_t a = std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng);
      std::size_t d = (a + 1 + std::uniform_int_distribution<std::size_t>(0, v.size() - 2)(rng)) % v.size();
      Fold ij = Fold::from_pairs({{v[a], v[d]}});
      Fold ji = Fold::from_pairs({{v[d], v[a]}});
      c.expect(is_isomorphic(folded_complex(cs.k, ij), folded_complex(cs.k, ji)),
               [&] { return describe(cs.k) + " " + ij.str(); });
    }
  }));
  out.checks.push_back(run_check("folds", "folds decompose into single folds in any order; disjoint folds commute" + scope, [&](Check& c) {
    for (const auto& cs : cases) {
      SimplicialComplex once = folded_complex(cs.k, cs.fold);
      auto pairs = cs.fold.mapping();
      std::shuffle(pairs.begin(), pairs.end(), rng);
      SimplicialComplex step = cs.k;
      for (const auto& p : pairs) step = folded_complex(step, Fold::from_pairs({p}));
      c.expect(step == once, [&] { return show_case(cs) + " iterated"; });
      const VertexSet& js = cs.fold.targets();
      if (js.size() < 2) continue;
      VertexSet first(js.begin(), js.begin() + js.size() / 2);
      std::vector<std::pair<VertexId, VertexId>> pa, pb;
      for (const auto& p : cs.fold.mapping()) (contains(first, p.second) ? pa : pb).push_back(p);
      Fold fa = Fold::from_pairs(pa), fb = Fold::from_pairs(pb);
      SimplicialComplex ab = folded_complex(folded_complex(cs.k, fa), fb);
      SimplicialComplex ba = folded_complex(folded_complex(cs.k, fb), fa);
      c.expect(ab == ba && ab == once, [&] { return show_case(cs) + " split"; });
    }
  }));
  out.checks.push_back(run_check("folds", "block-respecting folds commute with substitution" + scope, [&](Check& c) {
    const JoinOptions inherit{Labeling::Inherit, false};
    for (int s = 0; s < b.samples; ++s) {
      int m = rand_int(rng, 2, 3);
      SimplicialComplex l = random_complex(m, rng);
      std::vector<SimplicialComplex> inner;
      int slot = rand_int(rng, 0, m - 1);
      for (int t = 0; t < m; ++t) {
        int size = t == slot ? rand_int(rng, 2, 3) : rand_int(rng, 1, 3);
        SimplicialComplex raw = random_complex(size, rng);
        std::map<VertexId, VertexId> names;
        for (const auto& u : raw.vertices()) names.emplace(u, size == 1 ? VertexId(t + 1) : VertexId(t + 1).extended(u));
        inner.push_back(relabel(raw, names));
      }
      Fold fold = random_fold(inner[slot].vertices(), rng);
      SimplicialComplex lhs = folded_complex(substitution(l, inner, inherit), fold);
      auto folded_inner = inner;
      folded_inner[slot] = folded_complex(inner[slot], fold);
      SimplicialComplex rhs = substitution(l, folded_inner, inherit);
      c.expect(lhs == rhs, [&] { return describe(l) + " slot " + describe(inner[slot]) + " fold " + fold.str(); });
    }
  }));
  out.checks.push_back(run_check("folds", "L_psi is {s : fold(s) in K folded}, contains K and folds onto K folded" + scope,
                                 [&](Check& c) {
    for (const auto& cs : cases) {
      SimplicialComplex l = max_folding_complex(cs.k, cs.fold);
      c.expect(same(naive_lpsi(naive_of(cs.k), cs.fold), l), [&] { return show_case(cs); });
      c.expect(is_subcomplex(cs.k, l) && folded_complex(l, cs.fold) == folded_complex(cs.k, cs.fold),
               [&] { return show_case(cs); });
    }
  }));
}

void suite_lpsi(const Budget& b, Report& out) {
  out.checks.push_back(run_check("lpsi", "L_psi contains every L' with fold(L') inside fold(K), exhaustive", [&](Check& c) {
    for (int n = 2; n <= std::min(b.max_vertices, 4); ++n) {
      std::vector<SimplicialComplex> all;
      for (auto& k : enumerate_complexes(n)) {
        if (!k.is_void()) all.push_back(std::move(k));
      }
      const std::size_t total = std::size_t{1} << n;
      for_each_fold(range_labels(n), [&](const Fold& fold) {
        std::vector<std::vector<Mask>> images;
        for (const auto& k : all) images.push_back(ground_facets(folded_complex(k, fold)));
        for (std::size_t ki = 0; ki < all.size(); ++ki) {
          std::vector<char> kf(total, 0), lt(total, 0);
          for (Mask f : images[ki]) {
            for (Mask s = f;; s = (s - 1) & f) {
              kf[s] = 1;
              if (!s) break;
            }
          }
          SimplicialComplex lpsi = max_folding_complex(all[ki], fold);
          for (Mask f : ground_facets(lpsi)) {
            for (Mask s = f;; s = (s - 1) & f) {
              lt[s] = 1;
              if (!s) break;
            }
          }
          for (std::size_t li = 0; li < all.size(); ++li) {
            bool inside = std::all_of(images[li].begin(), images[li].end(), [&](Mask f) { return kf[f] != 0; });
            if (!inside) continue;
            std::vector<Mask> lf = ground_facets(all[li]);
            bool contained = std::all_of(lf.begin(), lf.end(), [&](Mask f) { return lt[f] != 0; });
            c.expect(contained, [&] { return describe(all[ki]) + " fold " + fold.str() + " L'=" + describe(all[li]); });
          }
        }
      });
    }
  }));
  out.checks.push_back(run_check("lpsi", "L_psi maximality sampled on 5 and 6 vertices", [&](Check& c) {
    Rng rng(b.seed);
    for (int s = 0; s < b.samples; ++s) {
      SimplicialComplex k = random_complex(rand_int(rng, 5, 6), rng);
      Fold fold = random_fold(k.vertices(), rng);
      SimplicialComplex lpsi = max_folding_complex(k, fold);
      SimplicialComplex kf = folded_complex(k, fold);
      // candidates: L_psi with one extra face, and random complexes
      for (int t = 0; t < 4; ++t) {
        SimplicialComplex lp = random_complex(static_cast<int>(k.vertex_count()), rng);
        if (t < 2) {
          std::vector<VertexSet> fs = lpsi.maximal_faces();
          for (const auto& f : lp.maximal_faces()) fs.push_back(f);
          lp = SimplicialComplex::from_faces(k.vertices(), fs);
        }
        bool inside = is_subcomplex(folded_complex(lp, fold), kf);
        c.expect(!inside || is_subcomplex(lp, lpsi), [&] { return describe(k) + " fold " + fold.str() + " L'=" + describe(lp); });
      }
    }
  }));
}

std::vector<Partition> identity_partitions(int max_m) {
  std::vector<Partition> out;
  for (int m = 3; m <= max_m; ++m) {
    for_each_set_partition(m, [&](const std::vector<VertexSet>& blocks) {
      if (blocks.size() < 3) return;
      out.push_back(Partition::from_blocks(blocks));
    });
  }
  return out;
}

void suite_identity(const Budget& b, Report& out) {
  int max_m = std::min(b.max_vertices, 8);
  std::vector<Partition> parts = identity_partitions(max_m);
  std::string scope = " (3 <= k <= m <= " + std::to_string(max_m) + ")";
  out.checks.push_back(run_check("identity", "composition, MF and union constructions of K_Pi agree" + scope, [&](Check& c) {
    for (const auto& p : parts) {
      for (int order = 0; order < 2; ++order) {
        std::vector<VertexSet> blocks = p.blocks();
        if (order) std::reverse(blocks.begin(), blocks.end());
        Partition q = Partition::from_blocks(blocks);
        SimplicialComplex a = identity_complex(q);
        c.expect(a == identity_complex_by_mf(q) && a == identity_complex_by_union(q), [&] { return q.str(); });
      }
    }
  }));
  out.checks.push_back(run_check("identity", "MF(K_Pi) = {[m] minus P_i}" + scope, [&](Check& c) {
    for (const auto& p : parts) {
      SimplicialComplex k = identity_complex(p);
      std::vector<VertexId> ground = p.ground();
      Naive expected{ground, std::vector<char>(std::size_t{1} << ground.size(), 0)};
      std::vector<Mask> qs;
      FacetSet mf;
      for (std::size_t i = 0; i < p.k(); ++i) {
        qs.push_back(local_mask(ground, p.complement(i)));
        mf.insert(p.complement(i));
      }
      for (Mask m = 0; m < expected.faces.size(); ++m) {
        expected.faces[m] = std::none_of(qs.begin(), qs.end(), [&](Mask q) { return (m & q) == q; });
      }
      c.expect(as_set(minimal_missing_faces(k)) == mf && same(expected, k), [&] { return p.str(); });
    }
  }));
}

void suite_fold_classify(const Budget& b, Report& out) {
  int max_m = std::min(b.max_vertices, 7);
  std::string scope = " (all partitions and folds, m <= " + std::to_string(max_m) + ")";
  std::vector<Partition> parts = identity_partitions(max_m);
  std::vector<std::pair<std::vector<Mask>, std::vector<Mask>>> expected_cache;
  CheckResult folded_check, lpsi_check;
  Check cf("fold-classify", "folded K_Pi follows the three-case split" + scope);
  Check cl("fold-classify", "L_psi of K_Pi follows its three-case split" + scope);
  try {
    for (const auto& p : parts) {
      const int m = static_cast<int>(p.m());
      const Mask full = (Mask{1} << m) - 1;
      SimplicialComplex k = identity_complex(p);
      std::vector<Mask> blocks;
      for (const auto& bl : p.blocks()) blocks.push_back(ground_mask(bl));
      for_each_fold(p.ground(), [&](const Fold& fold) {
        Mask im = ground_mask(fold.sources()), jm = ground_mask(fold.targets());
        std::vector<Mask> want_fold, want_l;
        auto within = std::find_if(blocks.begin(), blocks.end(), [&](Mask bl) { return ((im | jm) & ~bl) == 0; });
        if (within != blocks.end()) {
          Mask q = full & ~*within;
          for (int v = 0; v < m; ++v) {
            if (!(q >> v & 1)) continue;
            want_fold.push_back((q & ~(Mask{1} << v)) | (*within & ~im));
            want_l.push_back((q & ~(Mask{1} << v)) | *within);
          }
        } else if (std::popcount(im) == 1 && std::popcount(jm) == 1) {
          Mask rest = full & ~im;
          for (int v = 0; v < m; ++v) {
            if (rest >> v & 1) want_fold.push_back(rest & ~(Mask{1} << v));
            if (!((im | jm) >> v & 1)) want_l.push_back(full & ~(Mask{1} << v));
          }
          // MF {[m]∖I, [m]∖J}: drop one vertex outside I ∪ J, or both i and j
          want_l.push_back(full & ~(im | jm));
        } else {
          want_fold.push_back(full & ~im);
          want_l.push_back(full);
        }
        std::sort(want_fold.begin(), want_fold.end());
        std::sort(want_l.begin(), want_l.end());
        SimplicialComplex got = folded_complex(k, fold);
        cf.expect(ground_facets(got) == want_fold && got.vertex_count() == p.m() - fold.sources().size(),
                  [&] { return p.str() + " fold " + fold.str(); });
        SimplicialComplex l = max_folding_complex(k, fold);
        cl.expect(ground_facets(l) == want_l && l.vertex_count() == p.m(), [&] { return p.str() + " fold " + fold.str(); });
      });
    }
  } catch (const std::exception& e) {
    cf.fail(std::string("exception: ") + e.what());
  }
  out.checks.push_back(cf.finish());
  out.checks.push_back(cl.finish());
}

void suite_eta(const Budget&, Report& out) {
  out.checks.push_back(run_check("eta", "eta rule fixtures for k = 3, 7, 8", [&](Check& c) {
    const std::string k3 = "* 1 1\n1 * -\n- - *\n";
    const std::string k7 =
        "* 1 1 1 1 1 1\n1 * 1 1 1 1 -\n1 1 * 1 1 - -\n1 1 1 * - - -\n1 1 - - * - -\n1 - - - - * -\n- - - - - - *\n";
    const std::string k8 =
        "* 1 1 1 1 1 1 1\n1 * 1 1 1 1 1 -\n1 1 * 1 1 1 - -\n1 1 1 * 1 - - -\n1 1 - 1 * - - -\n"
        "1 1 - - - * - -\n1 - - - - - * -\n- - - - - - - *\n";
    c.expect(render(eta_matrix(3)) == k3, [] { return render(eta_matrix(3)); });
    c.expect(render(eta_matrix(7)) == k7, [] { return render(eta_matrix(7)); });
    c.expect(render(eta_matrix(8)) == k8, [] { return render(eta_matrix(8)); });
  }));
  out.checks.push_back(run_check("eta", "separation: every i < j has r with eta(i,r) = 1 and eta(j,r) = - (3 <= k <= 16)",
                                 [&](Check& c) {
    for (int k = 3; k <= 16; ++k) {
      EtaMatrix h = eta_matrix(k);
      bool shape = true;
      for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= k; ++j) shape &= (i == j) == (h.at(i, j) == '*');
      }
      c.expect(shape && check_eta_separation(k), [&] { return "k=" + std::to_string(k); });
    }
  }));
}

void suite_signs(const Budget& b, Report& out) {
  out.checks.push_back(run_check("signs", "Koszul sign equals the adjacent-transposition count (" + std::to_string(b.samples) + " random)",
                                 [&](Check& c) {
    Rng rng(b.seed);
    for (int s = 0; s < b.samples; ++s) {
      int n = rand_int(rng, 1, 9);
      std::vector<int> images(n), dims(n);
      std::iota(images.begin(), images.end(), 1);
      std::shuffle(images.begin(), images.end(), rng);
      for (auto& d : dims) d = rand_int(rng, 0, 5);
      int got = koszul_sign(Permutation::from_images(images), dims);
      c.expect(got == bubble_sign(images, dims), [&] { return Permutation::from_images(images).str(); });
    }
  }));
  out.checks.push_back(run_check("signs", "singleton relation signs are (-1)^{p_i(p_{i+1}+...+p_m)}, m <= 8, dims in {2,3}",
                                 [&](Check& c) {
    for (int m = 3; m <= 8; ++m) {
      Partition p = Partition::singletons(m);
      for (int mask = 0; mask < (1 << m); ++mask) {
        std::vector<int> dims;
        for (int t = 0; t < m; ++t) dims.push_back(mask >> t & 1 ? 3 : 2);
        Relation r = relation(p, default_leaves(p, dims));
        bool ok = r.summands.size() == static_cast<std::size_t>(m);
        for (int i = 0; ok && i < m; ++i) {
          int tail = 0;
          for (int t = i + 1; t < m; ++t) tail += dims[t];
          ok = r.summands[i].sign == ((dims[i] * tail) % 2 ? -1 : 1);
        }
        c.expect(ok, [&] { return "m=" + std::to_string(m) + " dims mask " + std::to_string(mask); });
      }
    }
  }));
  out.checks.push_back(run_check("signs", "m = 3 signs give the graded Jacobi pattern after renormalization", [&](Check& c) {
    Partition p = Partition::singletons(3);
    for (int p1 = 2; p1 <= 5; ++p1) {
      for (int p2 = 2; p2 <= 5; ++p2) {
        for (int p3 = 2; p3 <= 5; ++p3) {
          std::vector<int> d{p1, p2, p3};
          Relation r = relation(p, default_leaves(p, d));
          int global = (p1 * p3) % 2 ? -1 : 1;
          // summand i is hw(hw(f_a, f_b), f_i); rewrite the inner bracket as hw(f_{i+1}, f_{i+2}) cyclically
          std::vector<int> want{(p1 * p2) % 2 ? -1 : 1, (p2 * p3) % 2 ? -1 : 1, (p1 * p3) % 2 ? -1 : 1};
          bool ok = true;
          for (int i = 0; i < 3; ++i) {
            int a = (i + 1) % 3, bb = (i + 2) % 3;
            int swap = a < bb ? 1 : ((d[a] * d[bb]) % 2 ? -1 : 1);
            ok &= global * *r.summands[i].sign * swap == want[i];
          }
          c.expect(ok, [&] { return "dims " + std::to_string(p1) + "," + std::to_string(p2) + "," + std::to_string(p3); });
        }
      }
    }
  }));
}

void suite_relations(const Budget& b, Report& out) {
  Rng rng(b.seed);
  std::vector<Partition> parts;
  for (int s = 0; s < b.samples; ++s) {
    int m = rand_int(rng, 3, 8);
    parts.push_back(random_partition(m, rand_int(rng, 3, m), rng));
  }
  std::string scope = " (" + std::to_string(b.samples) + " random partitions, m <= 8)";
  out.checks.push_back(run_check("relations", "k summands of degree r_1+...+r_m-2 with codomains inside K_Pi" + scope, [&](Check& c) {
    for (const auto& p : parts) {
      std::vector<int> dims;
      int total = 0;
      for (std::size_t t = 0; t < p.m(); ++t) total += dims.emplace_back(rand_int(rng, 2, 5));
      Relation r = relation(p, default_leaves(p, dims));
      bool ok = r.summands.size() == p.k() && r.ambient == identity_complex(p);
      for (const auto& s : r.summands) {
        ok = ok && s.degree == total - 2 && is_subcomplex(codomain_complex(s.expr), r.ambient);
      }
      c.expect(ok, [&] { return p.str(); });
    }
  }));
  out.checks.push_back(run_check("relations", "every DJ summand is NonTrivial" + scope, [&](Check& c) {
    for (const auto& p : parts) {
      Relation r = relation(p, default_leaves(p, std::nullopt, true), {TrivialityMode::DJ, false});
      bool ok = std::all_of(r.summands.begin(), r.summands.end(),
                            [](const Summand& s) { return s.triviality.status == TrivialityStatus::NonTrivial; });
      c.expect(ok, [&] { return p.str(); });
    }
  }));
  out.checks.push_back(run_check("relations", "folded relations: cross-block single folds keep exactly the two touched summands, others are all Trivial" + scope,
                                 [&](Check& c) {
    for (const auto& p : parts) {
      auto leaves = default_leaves(p, std::nullopt);
      // a single cross-block fold
      std::size_t bi = rand_int(rng, 0, static_cast<int>(p.k()) - 1);
      std::size_t bj = (bi + 1 + rand_int(rng, 0, static_cast<int>(p.k()) - 2)) % p.k();
      const VertexSet& si = p.blocks()[bi];
      const VertexSet& sj = p.blocks()[bj];
      Fold cross = Fold::from_pairs({{si[rand_int(rng, 0, static_cast<int>(si.size()) - 1)], sj[rand_int(rng, 0, static_cast<int>(sj.size()) - 1)]}});
      Relation r = folded_relation(p, cross, leaves);
      bool ok = r.summands.size() == p.k();
      for (std::size_t i = 0; i < r.summands.size(); ++i) {
        bool trivial = r.summands[i].triviality.status == TrivialityStatus::Trivial;
        ok = ok && trivial == (i != bi && i != bj);
      }
      c.expect(ok, [&] { return p.str() + " fold " + cross.str(); });
      // a multi-vertex fold, and a within-block fold when a block allows one
      Fold multi = random_fold(p.ground(), rng);
      while (multi.sources().size() < 2 && p.m() >= 3) multi = random_fold(p.ground(), rng);
      std::vector<Fold> others;
      if (multi.sources().size() >= 2) others.push_back(multi);
      for (const auto& bl : p.blocks()) {
        if (bl.size() >= 2) {
          others.push_back(random_fold(bl, rng));
          break;
        }
      }
      for (const auto& f : others) {
        Relation rf = folded_relation(p, f, leaves);
        bool all = std::all_of(rf.summands.begin(), rf.summands.end(),
                               [](const Summand& s) { return s.triviality.status == TrivialityStatus::Trivial; });
        c.expect(all, [&] { return p.str() + " fold " + f.str(); });
      }
    }
  }));
  int max_m = std::min(b.max_vertices, 5);
  out.checks.push_back(run_check("relations", "engine annotations on folded relations match the classification, exhaustive m <= " + std::to_string(max_m),
                                 [&](Check& c) {
    for (const auto& p : identity_partitions(max_m)) {
      auto leaves = default_leaves(p, std::nullopt);
      for_each_fold(p.ground(), [&](const Fold& fold) {
        Relation r = folded_relation(p, fold, leaves);
        for (std::size_t i = 0; i < r.summands.size(); ++i) {
          bool trivial = r.summands[i].triviality.status == TrivialityStatus::Trivial;
          c.expect(trivial == predicted_folded_trivial(p, fold, i),
                   [&] { return p.str() + " fold " + fold.str() + " summand " + std::to_string(i + 1); });
        }
      });
    }
  }));
  out.checks.push_back(run_check("relations", "fold across: ambient and middle summand for K_1 = boundary of a triangle and K_1 = an edge",
                                 [&](Check& c) {
    Relation r = fold_across_relation(4, boundary_simplex(range_labels(3)), point(VertexId(4)), Fold::parse("4->1_1"));
    std::vector<VertexId> k1v{VertexId({1, 1}), VertexId({1, 2}), VertexId({1, 3})};
    std::vector<SimplicialComplex> inner{boundary_simplex(make_vertex_set(k1v)), point(VertexId(2)), point(VertexId(3))};
    SimplicialComplex want = substitution(boundary_simplex(range_labels(3)), inner, JoinOptions{Labeling::Inherit, false});
    c.expect(r.ambient == want, [&] { return describe(r.ambient); });
    c.expect(r.summands.size() == 3 && r.summands[1].triviality.status != TrivialityStatus::Trivial,
             [] { return std::string("middle summand marked Trivial"); });
    Relation t = fold_across_relation(4, simplex(range_labels(2)), point(VertexId(4)), Fold::parse("4->1_1"));
    c.expect(t.summands[1].triviality.status == TrivialityStatus::Trivial,
             [] { return std::string("edge case: middle summand not Trivial"); });
  }));
}

using SuiteFn = void (*)(const Budget&, Report&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> all{
      {"mf", suite_mf},         {"dual", suite_dual},         {"pjoin", suite_pjoin},
      {"folds", suite_folds},   {"lpsi", suite_lpsi},         {"identity", suite_identity},
      {"fold-classify", suite_fold_classify},                 {"eta", suite_eta},
      {"signs", suite_signs},   {"relations", suite_relations}};
  return all;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, f] : suites()) out.push_back(n);
    out.push_back("all");
    return out;
  }();
  return names;
}

Report run_suite(std::string_view name, const Budget& budget) {
  Report r;
  for (const auto& [n, f] : suites()) {
    if (name == "all" || name == n) f(budget, r);
  }
  if (r.checks.empty()) domain_error("unknown-suite", "unknown suite", std::string(name));
  return r;
}

}  // namespace pwh
