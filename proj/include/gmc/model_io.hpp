#pragma once

// The gmcmodel/1 document format: a JSON object
//
//   format    "gmcmodel/1"
//   pcm       PCM descriptor
//   objects   {"names": [...], "unit": name, "mult": [[x, y, x.y], ...]}
//   hom       [{"grade", "dom", "cod", "labels": [...]}]   absent = empty
//   id        {object: label}
//   comp      [{"grade", "objects": [x, y, z], "table": [[f, g, f;g], ...]}]
//   regrade   [{"from", "to", "dom", "cod", "map": {f: g}}]   e -> e defaults to identity
//   tensor    [{"grades": [e, e2], "objects": [x, y, x2, y2], "table": [[f, g, f*g], ...]}]
//   braiding  [[x, y, label], ...]   optional
//
// Grades are written in the PCM's grade syntax. Saving is deterministic.

#include <string>
#include <string_view>

#include <json.hpp>

#include "gmc/finmodel.hpp"

namespace gmc {

// ParseError on malformed JSON or a wrong shape; IllFormed (with coordinates)
// on missing or out-of-range table entries.
FiniteGradedModel load_model(std::string_view text);
FiniteGradedModel load_model_file(const std::string& path);
std::string save_model(const FiniteGradedModel& m);

// The line layout shared by every document the tool writes.
std::string layout(const nlohmann::ordered_json& doc);

}  // namespace gmc
