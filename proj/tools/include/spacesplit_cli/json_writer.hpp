#pragma once

#include <json.hpp>

#include <string>

namespace spacesplit::cli {

/// Pretty JSON with every floating-point number printed to 17 significant
/// digits. Non-finite numbers become null.
std::string dump_json(const nlohmann::ordered_json& j);

}  // namespace spacesplit::cli
