#include "singosc4/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace singosc4 {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15e", x);
  return buf;
}

namespace {

void emit(std::ostream& os, const nlohmann::json& j, int indent) {
  const std::string pad(2 * (indent + 1), ' '), close(2 * indent, ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map order: sorted
        if (!first) os << ",\n";
        first = false;
        os << pad << nlohmann::json(it.key()).dump() << ": ";
        emit(os, it.value(), indent + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // arrays of scalars stay on one line
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      os << "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) os << (flat ? ", " : ",");
        first = false;
        if (!flat) os << "\n" << pad;
        emit(os, e, indent + 1);
      }
      if (!flat) os << "\n" << close;
      os << "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? format_double(x) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

void write_json(std::ostream& os, const nlohmann::json& j) {
  emit(os, j, 0);
  os << "\n";
}

std::string dump_json(const nlohmann::json& j) {
  std::ostringstream os;
  write_json(os, j);
  return os.str();
}

std::string csv_header(const std::string& kind) {
  return "# singosc4 " + kind + " schema=" + std::to_string(kSchemaVersion);
}

}  // namespace singosc4
