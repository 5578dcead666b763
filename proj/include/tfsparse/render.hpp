#pragma once

#include <string>

#include <json.hpp>

#include "tfsparse/afs.hpp"
#include "tfsparse/mrs.hpp"
#include "tfsparse/signature.hpp"

namespace tfsparse {

using Json = nlohmann::ordered_json;

// Grammar-file syntax, so the output reads back with read_amrs. Only shared
// nodes get tags, numbered by first occurrence.
std::string render_avm(const Afs& a, const TypeHierarchy& h);
// Elements separated by ", "; the empty sequence renders as "".
std::string render_amrs(const Amrs& a, const TypeHierarchy& h);

// {"type", "tag"?, "features": [[FEAT, avm-or-{"ref": n}], ...]}
Json avm_json(const Afs& a, const TypeHierarchy& h);
// One AVM per index, tags shared across the array.
Json amrs_json(const Amrs& a, const TypeHierarchy& h);

}  // namespace tfsparse
