#include "pwh/io.hpp"

#include <bit>
#include <cctype>
#include <sstream>

#include "pwh/error.hpp"

namespace pwh {

Json vertex_set_to_json(const VertexSet& s) {
  Json out = Json::array();
  for (const auto& v : s) out.push_back(v.str());
  return out;
}

VertexSet vertex_set_from_json(const Json& j, std::string_view what) {
  if (!j.is_array()) input_error("bad-json", std::string(what) + " must be an array");
  std::vector<VertexId> out;
  for (const auto& item : j) {
    if (item.is_string()) {
      out.push_back(VertexId::parse(item.get<std::string>()));
    } else if (item.is_number_integer()) {
      out.emplace_back(item.get<int>());
    } else {
      input_error("bad-json", std::string(what) + " entries must be vertex labels", item.dump());
    }
  }
  std::size_t n = out.size();
  VertexSet set = make_vertex_set(std::move(out));
  if (set.size() != n) input_error("duplicate-vertex", std::string(what) + " repeats a vertex", j.dump());
  return set;
}

Json complex_to_json(const SimplicialComplex& k) {
  Json out;
  out["vertices"] = vertex_set_to_json(k.vertices());
  Json facets = Json::array();
  for (const auto& f : k.maximal_faces()) facets.push_back(vertex_set_to_json(f));
  out["maximal_faces"] = std::move(facets);
  return out;
}

SimplicialComplex complex_from_json(const Json& j) {
  if (!j.is_object()) input_error("bad-json", "a complex must be a JSON object");
  if (!j.contains("vertices")) input_error("bad-json", "complex is missing \"vertices\"");
  if (!j.contains("maximal_faces")) input_error("bad-json", "complex is missing \"maximal_faces\"");
  for (const auto& [key, value] : j.items()) {
    if (key != "vertices" && key != "maximal_faces") {
      input_error("bad-json", "unexpected key in complex", key);
    }
  }
  VertexSet vertices = vertex_set_from_json(j["vertices"], "vertices");
  const Json& mf = j["maximal_faces"];
  if (!mf.is_array()) input_error("bad-json", "\"maximal_faces\" must be an array");
  std::vector<VertexSet> faces;
  for (const auto& f : mf) faces.push_back(vertex_set_from_json(f, "face"));
  return SimplicialComplex::from_faces(std::move(vertices), faces);
}

std::string complex_to_text(const SimplicialComplex& k) {
  std::string out = "vertices:";
  for (const auto& v : k.vertices()) out += " " + v.str();
  out += "\nfaces:";
  for (const auto& f : k.maximal_faces()) {
    out += " {";
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) out += ' ';
      out += f[i].str();
    }
    out += '}';
  }
  return out + "\n";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<VertexId> split_labels(std::string_view s) {
  std::vector<VertexId> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) || s[pos] == ',')) ++pos;
    std::size_t end = pos;
    while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end])) && s[end] != ',') ++end;
    if (end > pos) out.push_back(VertexId::parse(s.substr(pos, end - pos)));
    pos = end;
  }
  return out;
}

}  // namespace

SimplicialComplex complex_from_text(std::string_view text) {
  std::optional<VertexSet> vertices;
  std::optional<std::vector<VertexSet>> faces;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos) input_error("bad-text", "expected 'key: value'", std::string(line));
    std::string_view key = trim(line.substr(0, colon));
    std::string_view value = trim(line.substr(colon + 1));
    if (key == "vertices") {
      if (vertices) input_error("bad-text", "duplicate 'vertices' line");
      auto list = split_labels(value);
      std::size_t n = list.size();
      vertices = make_vertex_set(std::move(list));
      if (vertices->size() != n) input_error("duplicate-vertex", "vertex listed twice", std::string(value));
    } else if (key == "faces") {
      if (faces) input_error("bad-text", "duplicate 'faces' line");
      faces.emplace();
      std::size_t pos = 0;
      while (pos < value.size()) {
        if (std::isspace(static_cast<unsigned char>(value[pos])) || value[pos] == ',') {
          ++pos;
          continue;
        }
        if (value[pos] != '{') input_error("bad-text", "faces must be written {a b c}", std::string(value));
        auto close = value.find('}', pos);
        if (close == std::string_view::npos) input_error("bad-text", "unterminated face", std::string(value));
        faces->push_back(make_vertex_set(split_labels(value.substr(pos + 1, close - pos - 1))));
        pos = close + 1;
      }
    } else {
      input_error("bad-text", "unknown key", std::string(key));
    }
  }
  if (!vertices) input_error("bad-text", "missing 'vertices' line");
  if (!faces) input_error("bad-text", "missing 'faces' line");
  return SimplicialComplex::from_faces(std::move(*vertices), *faces);
}

std::string complex_to_dot(const SimplicialComplex& k) {
  std::ostringstream out;
  out << "graph K {\n";
  for (const auto& v : k.vertices()) {
    bool ghost = !k.is_face({v});
    out << "  \"" << v.str() << "\"" << (ghost ? " [style=dashed]" : "") << ";\n";
  }
  const auto& all = k.face_masks();
  for (Mask m : all) {
    if (std::popcount(m) != 2) continue;
    VertexSet e = k.face_of(m);
    out << "  \"" << e[0].str() << "\" -- \"" << e[1].str() << "\";\n";
  }
  int t = 0;
  for (Mask m : all) {
    if (std::popcount(m) != 3) continue;
    VertexSet f = k.face_of(m);
    std::string name = "t" + std::to_string(t++);
    out << "  " << name << " [shape=triangle, style=filled, fillcolor=lightgrey, label=\"\"];\n";
    for (const auto& v : f) out << "  " << name << " -- \"" << v.str() << "\" [style=dotted];\n";
  }
  out << "}\n";
  return out.str();
}

Json parse_json(std::string_view content) {
  try {
    return Json::parse(content);
  } catch (const Json::parse_error& e) {
    input_error("bad-json", std::string("malformed JSON: ") + e.what());
  }
}

SimplicialComplex parse_complex(std::string_view content) {
  std::string_view t = trim(content);
  if (!t.empty() && t.front() == '{') return complex_from_json(parse_json(t));
  return complex_from_text(content);
}

std::string serialize_complex(const SimplicialComplex& k) { return complex_to_json(k).dump(); }

}  // namespace pwh
