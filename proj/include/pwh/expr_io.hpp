#pragma once

#include "pwh/io.hpp"
#include "pwh/whitehead.hpp"

namespace pwh {

Json leaf_to_json(const MapLeaf& leaf);
MapLeaf leaf_from_json(const Json& j);

/// {"leaf":{…}}, {"sum":{"terms":[…]}}, {"hw":{"args":[…],"ambient":…}},
/// {"folded":{"inner":…,"I":[…],"J":[…],"map":{…},"null":…}}
Json expr_to_json(const HwExpr& e);
HwExpr expr_from_json(const Json& j);

Json fold_to_json(const Fold& fold);
Json triviality_to_json(const Triviality& t);
Triviality triviality_from_json(const Json& j);

}  // namespace pwh
