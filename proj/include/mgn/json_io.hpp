#ifndef MGN_JSON_IO_HPP
#define MGN_JSON_IO_HPP

#include "mgn/ggraph.hpp"
#include "mgn/graph.hpp"
#include "mgn/taut.hpp"

#include <json.hpp>

namespace mgn {

using json = nlohmann::json;

json to_json(const StableGraph& g);
StableGraph graph_from_json(const json& j);
json to_json(const Decoration& d);
Decoration decoration_from_json(const json& j, const StableGraph& g);
json to_json(const Space& s);
Space space_from_json(const json& j);
json to_json(const TautClass& x);
TautClass taut_from_json(const json& j);
json to_json(const GGraph& gg);

// aligned human-readable coefficient table
std::string coefficient_table(const TautClass& x);

}  // namespace mgn

#endif
