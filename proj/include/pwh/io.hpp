#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "pwh/complex.hpp"

namespace pwh {

using Json = nlohmann::ordered_json;

/// {"vertices":[...],"maximal_faces":[[...],...]}; VOID is [] and EMPTY is [[]].
Json complex_to_json(const SimplicialComplex& k);
/// Throws input errors naming the offending field or face.
SimplicialComplex complex_from_json(const Json& j);

/// "vertices: 1 2 3\nfaces: {1 2} {2 3}\n"
std::string complex_to_text(const SimplicialComplex& k);
SimplicialComplex complex_from_text(std::string_view text);

/// 1-skeleton as an undirected graph; 2-faces appear as filled triangle nodes.
std::string complex_to_dot(const SimplicialComplex& k);

/// JSON when the first non-blank character is '{', the text form otherwise.
SimplicialComplex parse_complex(std::string_view content);
/// Canonical compact JSON; stable under parse/serialize.
std::string serialize_complex(const SimplicialComplex& k);

Json vertex_set_to_json(const VertexSet& s);
VertexSet vertex_set_from_json(const Json& j, std::string_view what);

/// Parses a JSON document, turning syntax errors into input errors.
Json parse_json(std::string_view content);

}  // namespace pwh
