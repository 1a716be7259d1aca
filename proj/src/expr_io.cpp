#include "pwh/expr_io.hpp"

#include "pwh/error.hpp"

namespace pwh {

namespace {

const Json& field(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    input_error("bad-json", std::string(where) + " is missing \"" + key + "\"");
  }
  return j[key];
}

bool get_bool(const Json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_boolean()) input_error("bad-json", std::string("\"") + key + "\" must be a boolean");
  return j[key].get<bool>();
}

std::string get_string(const Json& j, const char* key, const char* where) {
  const Json& v = field(j, key, where);
  if (!v.is_string()) input_error("bad-json", std::string("\"") + key + "\" must be a string");
  return v.get<std::string>();
}

}  // namespace

Json leaf_to_json(const MapLeaf& leaf) {
  Json out;
  out["name"] = leaf.name;
  if (leaf.sphere_dim) out["sphere_dim"] = *leaf.sphere_dim;
  out["suspension"] = leaf.suspension;
  out["null"] = leaf.is_null;
  out["codomain"] = Json{{"name", leaf.codomain.name},
                         {"h_space", leaf.codomain.h_space},
                         {"associative", leaf.codomain.associative}};
  if (leaf.vertex) out["vertex"] = leaf.vertex->str();
  return out;
}

MapLeaf leaf_from_json(const Json& j) {
  if (!j.is_object()) input_error("bad-json", "a leaf must be an object");
  MapLeaf leaf;
  leaf.name = get_string(j, "name", "leaf");
  if (j.contains("sphere_dim") && !j["sphere_dim"].is_null()) {
    if (!j["sphere_dim"].is_number_integer()) input_error("bad-json", "\"sphere_dim\" must be an integer");
    leaf.sphere_dim = j["sphere_dim"].get<int>();
  }
  leaf.suspension = get_bool(j, "suspension", true);
  leaf.is_null = get_bool(j, "null", false);
  if (j.contains("codomain")) {
    const Json& c = j["codomain"];
    if (!c.is_object()) input_error("bad-json", "\"codomain\" must be an object");
    leaf.codomain.name = get_string(c, "name", "codomain");
    leaf.codomain.h_space = get_bool(c, "h_space", false);
    leaf.codomain.associative = get_bool(c, "associative", false);
  }
  if (j.contains("vertex") && !j["vertex"].is_null()) {
    leaf.vertex = VertexId::parse(get_string(j, "vertex", "leaf"));
  }
  return leaf;
}

Json fold_to_json(const Fold& fold) {
  Json map = Json::object();
  for (const auto& [i, t] : fold.mapping()) map[i.str()] = t.str();
  return Json{{"I", vertex_set_to_json(fold.sources())},
              {"J", vertex_set_to_json(fold.targets())},
              {"map", map}};
}

Json expr_to_json(const HwExpr& e) {
  switch (e.kind()) {
    case ExprKind::Leaf: return Json{{"leaf", leaf_to_json(e.as_leaf())}};
    case ExprKind::Sum: {
      Json terms = Json::array();
      for (const auto& t : e.terms()) terms.push_back(leaf_to_json(t));
      return Json{{"sum", Json{{"terms", terms}}}};
    }
    case ExprKind::Hw: {
      Json args = Json::array();
      for (const auto& a : e.args()) args.push_back(expr_to_json(a));
      Json node;
      node["args"] = std::move(args);
      node["ambient"] = e.ambient() ? complex_to_json(*e.ambient()) : Json(nullptr);
      return Json{{"hw", node}};
    }
    case ExprKind::Folded: {
      Json node;
      node["inner"] = expr_to_json(e.inner());
      Json fold = fold_to_json(e.fold());
      for (auto& [k, v] : fold.items()) node[k] = v;
      node["null"] = e.declared_null();
      return Json{{"folded", node}};
    }
  }
  return {};
}

HwExpr expr_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1) {
    input_error("bad-json", "an expression is an object with one of leaf, sum, hw, folded");
  }
  const std::string& key = j.begin().key();
  const Json& body = j.begin().value();
  if (key == "leaf") return HwExpr::leaf(leaf_from_json(body));
  if (key == "sum") {
    const Json& terms = field(body, "terms", "sum");
    if (!terms.is_array()) input_error("bad-json", "\"terms\" must be an array");
    std::vector<MapLeaf> ts;
    for (const auto& t : terms) ts.push_back(leaf_from_json(t));
    return HwExpr::sum(std::move(ts));
  }
  if (key == "hw") {
    const Json& args = field(body, "args", "hw");
    if (!args.is_array()) input_error("bad-json", "\"args\" must be an array");
    std::vector<HwExpr> as;
    for (const auto& a : args) as.push_back(expr_from_json(a));
    std::optional<SimplicialComplex> amb;
    if (body.contains("ambient") && !body["ambient"].is_null()) amb = complex_from_json(body["ambient"]);
    return HwExpr::hw(std::move(as), std::move(amb));
  }
  if (key == "folded") {
    HwExpr inner = expr_from_json(field(body, "inner", "folded"));
    const Json& map = field(body, "map", "folded");
    if (!map.is_object()) input_error("bad-json", "\"map\" must be an object of source: target");
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (const auto& [src, dst] : map.items()) {
      if (!dst.is_string()) input_error("bad-json", "fold targets must be strings", src);
      pairs.emplace_back(VertexId::parse(src), VertexId::parse(dst.get<std::string>()));
    }
    Fold fold = Fold::from_pairs(std::move(pairs));
    if (body.contains("I") && vertex_set_from_json(body["I"], "I") != fold.sources()) {
      input_error("bad-json", "\"I\" disagrees with \"map\"");
    }
    if (body.contains("J") && vertex_set_from_json(body["J"], "J") != fold.targets()) {
      input_error("bad-json", "\"J\" disagrees with \"map\"");
    }
    return HwExpr::folded(std::move(inner), std::move(fold), get_bool(body, "null", false));
  }
  input_error("bad-json", "unknown expression kind", key);
}

Json triviality_to_json(const Triviality& t) {
  Json out;
  out["status"] = to_string(t.status);
  out["rule"] = t.rule.empty() ? Json(nullptr) : Json(t.rule);
  out["certificate"] = t.certificate ? vertex_set_to_json(*t.certificate) : Json(nullptr);
  out["detail"] = t.detail;
  return out;
}

Triviality triviality_from_json(const Json& j) {
  Triviality t;
  std::string s = get_string(j, "status", "triviality");
  if (s == "Trivial") t.status = TrivialityStatus::Trivial;
  else if (s == "NonTrivial") t.status = TrivialityStatus::NonTrivial;
  else if (s == "Unknown") t.status = TrivialityStatus::Unknown;
  else input_error("bad-json", "unknown triviality status", s);
  if (j.contains("rule") && !j["rule"].is_null()) t.rule = get_string(j, "rule", "triviality");
  if (j.contains("certificate") && !j["certificate"].is_null()) {
    t.certificate = vertex_set_from_json(j["certificate"], "certificate");
  }
  if (j.contains("detail")) t.detail = get_string(j, "detail", "triviality");
  return t;
}

}  // namespace pwh
