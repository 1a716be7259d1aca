#include "pwh/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pwh/error.hpp"
#include "pwh/expr_io.hpp"
#include "pwh/folds.hpp"
#include "pwh/io.hpp"
#include "pwh/polyjoin.hpp"
#include "pwh/relations.hpp"
#include "pwh/verify.hpp"

namespace pwh {

namespace {

struct Streams {
  std::istream& in;
  std::ostream& out;
};

std::string read_source(const std::string& path, Streams& io) {
  if (path == "-") {
    std::ostringstream buf;
    buf << io.in.rdbuf();
    return buf.str();
  }
  std::ifstream f(path);
  if (!f) input_error("unreadable-file", "cannot read file", path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

void emit(const std::string& payload, const std::string& path, Streams& io) {
  if (path == "-") {
    io.out << payload;
    return;
  }
  std::ofstream f(path);
  if (!f) input_error("unwritable-file", "cannot write file", path);
  f << payload;
}

SimplicialComplex load_complex(const std::string& path, Streams& io) { return parse_complex(read_source(path, io)); }

std::string format_complex(const SimplicialComplex& k, const std::string& format) {
  if (format == "text") return complex_to_text(k);
  if (format == "dot") return complex_to_dot(k);
  return serialize_complex(k) + "\n";
}

std::string format_faces(const std::vector<VertexSet>& faces, const std::string& key, const std::string& format) {
  if (format == "text") {
    std::string out;
    for (const auto& f : faces) out += to_string(f) + "\n";
    return out;
  }
  Json arr = Json::array();
  for (const auto& f : faces) arr.push_back(vertex_set_to_json(f));
  Json j;
  j[key] = std::move(arr);
  return j.dump() + "\n";
}

std::string status_name(TrivialityStatus s) {
  switch (s) {
    case TrivialityStatus::Trivial: return "Trivial";
    case TrivialityStatus::NonTrivial: return "NonTrivial";
    case TrivialityStatus::Unknown: break;
  }
  return "Unknown";
}

std::string format_relation(const Relation& r, const std::string& format) {
  if (format != "text") return serialize_relation(r) + "\n";
  std::string out = "ambient: " + describe(r.ambient) + "\n";
  for (std::size_t i = 0; i < r.summands.size(); ++i) {
    const Summand& s = r.summands[i];
    int c = s.coefficient * s.sign.value_or(1);
    out += std::to_string(i + 1) + ": " + (c < 0 ? "-" : "+") + std::to_string(std::abs(c)) + " " + pretty(s.expr) +
           " o " + s.permutation.str();
    if (s.degree) out += "  deg " + std::to_string(*s.degree);
    out += "  [" + status_name(s.triviality.status);
    if (!s.triviality.rule.empty()) out += " " + s.triviality.rule;
    out += "]\n";
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      input_error("bad-" + what, "expected a comma-separated integer list", text);
    }
  }
  return out;
}

// "S.json,T.json" or "(S.json,T.json)"
std::pair<std::string, std::string> split_pair(std::string text) {
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') text = text.substr(1, text.size() - 2);
  auto comma = text.find(',');
  if (comma == std::string::npos) input_error("bad-pair", "expected S,T", text);
  return {text.substr(0, comma), text.substr(comma + 1)};
}

JoinOptions join_options(bool inherit, bool no_flatten) {
  return JoinOptions{inherit ? Labeling::Inherit : Labeling::Nest, !no_flatten};
}

int dispatch(const std::vector<std::string>& args, Streams& io) {
  CLI::App app{"Polyhedral joins, folds and higher Whitehead relations", "pwh"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string in_path = "-", out_path = "-", format = "json";
  auto add_io = [&](CLI::App* c, bool input) {
    if (input) c->add_option("--in", in_path, "input file or -")->capture_default_str();
    c->add_option("--out", out_path, "output file or -")->capture_default_str();
    c->add_option("--format", format, "json, text or dot")
        ->check(CLI::IsMember({"json", "text", "dot"}))
        ->capture_default_str();
  };

  // complex
  CLI::App* complex = app.add_subcommand("complex", "operations on simplicial complexes");
  complex->require_subcommand(1);
  CLI::App* c_mf = complex->add_subcommand("mf", "minimal missing faces");
  CLI::App* c_dual = complex->add_subcommand("dual", "Alexander dual");
  CLI::App* c_skel = complex->add_subcommand("skeleton", "d-skeleton");
  CLI::App* c_fold = complex->add_subcommand("fold", "folded complex");
  CLI::App* c_lpsi = complex->add_subcommand("lpsi", "maximal complex with the same fold");
  CLI::App* c_join = complex->add_subcommand("join", "join of two complexes");
  CLI::App* c_union = complex->add_subcommand("union", "union of two complexes");
  CLI::App* c_iso = complex->add_subcommand("iso", "isomorphism test");
  CLI::App* c_subst = complex->add_subcommand("subst", "substitution K<S_1,...,S_m>");
  CLI::App* c_comp = complex->add_subcommand("compose", "composition K(S_1,...,S_m)");
  CLI::App* c_pjoin = complex->add_subcommand("pjoin", "polyhedral join over pairs (S_i, T_i)");
  for (CLI::App* c : {c_mf, c_dual, c_skel, c_fold, c_lpsi}) add_io(c, true);
  for (CLI::App* c : {c_join, c_union, c_iso, c_subst, c_comp, c_pjoin}) add_io(c, false);

  int dim = 0;
  c_skel->add_option("--dim", dim, "skeleton dimension")->required();
  std::string map_text;
  c_fold->add_option("--map", map_text, "fold such as \"4->1;5->2\"")->required();
  c_lpsi->add_option("--map", map_text, "fold such as \"4->1\"")->required();
  std::vector<std::string> two;
  for (CLI::App* c : {c_join, c_union, c_iso}) c->add_option("inputs", two, "two complex files")->required()->expected(2);

  std::string outer;
  std::vector<std::string> inner_paths, pair_specs;
  bool inherit = false, no_flatten = false;
  for (CLI::App* c : {c_subst, c_comp, c_pjoin}) {
    c->add_option("--outer", outer, "outer complex K")->required();
    c->add_flag("--inherit", inherit, "keep inner labels as given");
    c->add_flag("--no-flatten", no_flatten, "nest labels of one-vertex inner complexes too");
  }
  c_subst->add_option("--inner", inner_paths, "inner complexes in vertex order")->required();
  c_comp->add_option("--inner", inner_paths, "inner complexes in vertex order")->required();
  c_pjoin->add_option("--pairs", pair_specs, "pairs as S.json,T.json")->required();

  // identity
  CLI::App* identity = app.add_subcommand("identity", "the complex K_Pi");
  add_io(identity, false);
  std::string partition;
  identity->add_option("--partition", partition, "blocks such as \"1|2,3|4\"")->required();

  // relation
  CLI::App* rel = app.add_subcommand("relation", "higher Whitehead relation for a partition");
  rel->require_subcommand(0, 1);
  CLI::App* r_fold = rel->add_subcommand("fold", "relation over a folded K_Pi");
  CLI::App* r_within = rel->add_subcommand("fold-within", "block-respecting fold of K_Pi<S>");
  CLI::App* r_across = rel->add_subcommand("fold-across", "fold identifying K_m with a subcomplex of K_1");
  std::string dims_text;
  bool dj = false, collect_flag = false;
  for (CLI::App* c : {rel, r_fold, r_within}) {
    add_io(c, false);
    auto* opt = c->add_option("--partition", partition, "blocks such as \"1|2,3|4\"");
    if (c != rel) opt->required();
  }
  add_io(r_across, false);
  for (CLI::App* c : {rel, r_fold, r_within, r_across}) {
    c->add_option("--dims", dims_text, "sphere dimensions, one per ground vertex");
    c->add_flag("--dj", dj, "Davis-Januszkiewicz mode: CP^inf codomains");
    c->add_flag("--collect", collect_flag, "merge equal summands");
  }
  r_fold->add_option("--map", map_text, "fold")->required();
  r_within->add_option("--map", map_text, "fold")->required();
  r_within->add_option("--inner", inner_paths, "inner complexes S_1..S_m")->required();
  std::string null_text;
  r_within->add_option("--null", null_text, "1-based slots whose folded argument is null");
  std::string k1_path, km_path;
  int m_across = 0;
  r_across->add_option("--k1", k1_path, "K_1")->required();
  r_across->add_option("--km", km_path, "K_m")->required();
  r_across->add_option("--map", map_text, "fold")->required();
  r_across->add_option("--m", m_across, "number of ground vertices")->required();

  // triviality
  CLI::App* triv = app.add_subcommand("triviality", "classify an expression");
  add_io(triv, true);
  triv->add_flag("--dj", dj, "Davis-Januszkiewicz mode");

  // eta
  CLI::App* eta = app.add_subcommand("eta", "the eta matrix");
  int eta_k = 0;
  bool eta_check = false;
  eta->add_option("--k", eta_k, "size")->required();
  eta->add_flag("--check", eta_check, "also test the separation property");
  eta->add_option("--out", out_path, "output file or -");

  // verify
  CLI::App* ver = app.add_subcommand("verify", "property suites against independent oracles");
  std::string suite = "all";
  Budget budget;
  ver->add_option("--suite", suite, "suite name")->check(CLI::IsMember(suite_names()))->capture_default_str();
  ver->add_option("--max-vertices", budget.max_vertices, "exhaustive range")->capture_default_str();
  ver->add_option("--samples", budget.samples, "random cases per check")->capture_default_str();
  ver->add_option("--seed", budget.seed, "random seed")->capture_default_str();
  ver->add_option("--out", out_path, "output file or -");
  std::string report_format = "text";
  ver->add_option("--format", report_format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    int code = app.exit(e, o, e2);
    io.out << o.str();
    if (!e2.str().empty()) throw Error(ErrorKind::Input, "usage", e2.str());
    return code == 0 ? 0 : 2;
  }

  auto fold = [&] { return Fold::parse(map_text); };
  auto dims = [&]() -> std::optional<std::vector<int>> {
    if (dims_text.empty()) return std::nullopt;
    return parse_int_list(dims_text, "dims");
  };
  RelationOptions ropts{dj ? TrivialityMode::DJ : TrivialityMode::General, collect_flag};

  if (complex->parsed()) {
    auto result = [&](const SimplicialComplex& k) { emit(format_complex(k, format), out_path, io); };
    if (c_mf->parsed()) {
      emit(format_faces(minimal_missing_faces(load_complex(in_path, io)), "minimal_missing_faces", format), out_path, io);
    } else if (c_dual->parsed()) {
      result(alexander_dual(load_complex(in_path, io)));
    } else if (c_skel->parsed()) {
      result(skeleton(load_complex(in_path, io), dim));
    } else if (c_fold->parsed()) {
      result(folded_complex(load_complex(in_path, io), fold()));
    } else if (c_lpsi->parsed()) {
      result(max_folding_complex(load_complex(in_path, io), fold()));
    } else if (c_join->parsed()) {
      result(join(load_complex(two[0], io), load_complex(two[1], io)));
    } else if (c_union->parsed()) {
      result(complex_union(load_complex(two[0], io), load_complex(two[1], io)));
    } else if (c_iso->parsed()) {
      auto iso = find_isomorphism(load_complex(two[0], io), load_complex(two[1], io));
      if (format == "text") {
        std::string s = iso ? "isomorphic\n" : "not isomorphic\n";
        if (iso) {
          for (const auto& [a, b] : *iso) s += a.str() + " -> " + b.str() + "\n";
        }
        emit(s, out_path, io);
      } else {
        Json j;
        j["isomorphic"] = iso.has_value();
        if (iso) {
          Json map = Json::object();
          for (const auto& [a, b] : *iso) map[a.str()] = b.str();
          j["map"] = std::move(map);
        }
        emit(j.dump() + "\n", out_path, io);
      }
    } else {
      SimplicialComplex k = load_complex(outer, io);
      JoinOptions jo = join_options(inherit, no_flatten);
      if (c_pjoin->parsed()) {
        std::vector<SimplicialPair> pairs;
        for (const auto& spec : pair_specs) {
          auto [s, t] = split_pair(spec);
          pairs.emplace_back(load_complex(s, io), load_complex(t, io));
        }
        result(polyhedral_join(k, pairs, jo));
      } else {
        std::vector<SimplicialComplex> inner;
        for (const auto& p : inner_paths) inner.push_back(load_complex(p, io));
        result(c_subst->parsed() ? substitution(k, inner, jo) : composition(k, inner, jo));
      }
    }
  } else if (identity->parsed()) {
    emit(format_complex(identity_complex(Partition::parse(partition)), format), out_path, io);
  } else if (rel->parsed()) {
    Relation r;
    if (r_across->parsed()) {
      r = fold_across_relation(m_across, load_complex(k1_path, io), load_complex(km_path, io), fold(), {}, ropts);
    } else {
      if (partition.empty()) input_error("usage", "--partition is required");
      Partition p = Partition::parse(partition);
      if (r_within->parsed()) {
        std::vector<SimplicialComplex> inner;
        for (const auto& path : inner_paths) inner.push_back(load_complex(path, io));
        std::vector<bool> nulls(inner.size(), false);
        if (!null_text.empty()) {
          for (int s : parse_int_list(null_text, "null")) {
            if (s < 1 || s > static_cast<int>(nulls.size())) input_error("bad-null", "slot out of range", std::to_string(s));
            nulls[s - 1] = true;
          }
        }
        r = fold_within_relation(p, inner, fold(), {}, nulls, ropts);
      } else {
        auto leaves = default_leaves(p, dims(), dj);
        r = r_fold->parsed() ? folded_relation(p, fold(), leaves, ropts) : relation(p, leaves, ropts);
      }
    }
    emit(format_relation(r, format), out_path, io);
  } else if (triv->parsed()) {
    HwExpr e = expr_from_json(parse_json(read_source(in_path, io)));
    Triviality t = triviality(e, dj ? TrivialityMode::DJ : TrivialityMode::General);
    if (format == "text") {
      std::string s = status_name(t.status);
      if (!t.rule.empty()) s += " " + t.rule;
      if (t.certificate) s += " " + to_string(*t.certificate);
      emit(s + "\n", out_path, io);
    } else {
      emit(triviality_to_json(t).dump() + "\n", out_path, io);
    }
  } else if (eta->parsed()) {
    std::string s = render(eta_matrix(eta_k));
    bool ok = true;
    if (eta_check) {
      ok = check_eta_separation(eta_k);
      s += ok ? "separation: ok\n" : "separation: FAILED\n";
    }
    emit(s, out_path, io);
    return ok ? 0 : 1;
  } else if (ver->parsed()) {
    Report r = run_suite(suite, budget);
    emit(report_format == "json" ? report_to_json(r).dump(2) + "\n" : report_to_text(r), out_path, io);
    return r.passed() ? 0 : 1;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Streams io{in, out};
  try {
    return dispatch(args, io);
  } catch (const Error& e) {
    err << "error [" << e.code() << "]: " << e.what();
    if (!e.offending().empty()) err << " (" << e.offending() << ")";
    err << "\n";
    return e.kind() == ErrorKind::Domain ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, in, out, err);
}

}  // namespace pwh
