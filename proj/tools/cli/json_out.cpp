#include "json_out.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace lempert::cli {
namespace {

std::string number17(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep floats recognisable as floats after a round trip.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void write(std::ostringstream& os, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{" << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << "," << nl;
        first = false;
        os << pad << Json(it.key()).dump() << (indent > 0 ? ": " : ":");
        write(os, it.value(), indent, depth + 1);
      }
      os << nl << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      // Short numeric arrays ([re, im] pairs) stay on one line.
      const bool flat = j.size() <= 2 && std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_number(); });
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[" << (flat ? "" : nl);
      bool first = true;
      for (const auto& e : j) {
        if (!first) os << "," << (flat ? " " : nl);
        first = false;
        if (!flat) os << pad;
        write(os, e, indent, depth + 1);
      }
      os << (flat ? "" : nl) << (flat ? "" : close_pad) << "]";
      return;
    }
    case Json::value_t::number_float:
      os << number17(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

void flatten(const Json& j, const std::string& path, std::ostringstream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "." + std::to_string(i), os);
  } else if (j.is_number_float()) {
    os << path << "," << number17(j.get<double>()) << "\n";
  } else if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      s = q + "\"";
    }
    os << path << "," << s << "\n";
  } else {
    os << path << "," << j.dump() << "\n";
  }
}

}  // namespace

std::string dump17(const Json& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  return os.str();
}

std::string to_csv(const Json& j) {
  std::ostringstream os;
  os << "key,value\n";
  flatten(j, "", os);
  return os.str();
}

Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

Json complex_list_json(const std::vector<std::complex<double>>& zs) {
  Json out = Json::array();
  for (const auto& z : zs) out.push_back(complex_json(z));
  return out;
}

}  // namespace lempert::cli
