#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

namespace lempert::cli {

using Json = nlohmann::ordered_json;

/// Serializes with every floating-point number printed to 17 significant
/// digits; non-finite numbers become null.
std::string dump17(const Json& j, int indent = 2);

/// One "path,value" row per scalar leaf, paths joined with '.'.
std::string to_csv(const Json& j);

Json complex_json(std::complex<double> z);
Json complex_list_json(const std::vector<std::complex<double>>& zs);

}  // namespace lempert::cli
