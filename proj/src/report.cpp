#include "ionforge/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ionforge/errors.hpp"

namespace ionforge {

namespace {

std::string escape_json(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

// CSV fields are plain labels and numbers; quote only when needed.
std::string escape_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string value_to_string(const ReportEntry& e, bool json) {
  if (std::holds_alternative<double>(e.value)) {
    return format_number(std::get<double>(e.value));
  }
  if (std::holds_alternative<long>(e.value)) {
    return std::to_string(std::get<long>(e.value));
  }
  if (std::holds_alternative<bool>(e.value)) {
    return std::get<bool>(e.value) ? "true" : "false";
  }
  const std::string& s = std::get<std::string>(e.value);
  return json ? "\"" + escape_json(s) + "\"" : escape_csv(s);
}

}  // namespace

std::string format_number(double v) {
  if (!std::isfinite(v)) {
    throw DomainError("reports cannot carry non-finite numbers");
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ReportSection& ReportSection::num(std::string key, double v,
                                  std::string unit) {
  entries.push_back({std::move(key), v, std::move(unit)});
  return *this;
}

ReportSection& ReportSection::integer(std::string key, long v,
                                      std::string unit) {
  entries.push_back({std::move(key), v, std::move(unit)});
  return *this;
}

ReportSection& ReportSection::flag(std::string key, bool v) {
  entries.push_back({std::move(key), v, "bool"});
  return *this;
}

ReportSection& ReportSection::text(std::string key, std::string v) {
  entries.push_back({std::move(key), std::move(v), "text"});
  return *this;
}

ReportSection& Report::section(std::string name) {
  sections.push_back(ReportSection{std::move(name), {}});
  return sections.back();
}

const ReportSection* Report::find(const std::string& name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::string emit_json(const Report& report) {
  std::ostringstream out;
  out << "{\n  \"schema_version\": " << report.schema_version;
  out << ",\n  \"title\": \"" << escape_json(report.title) << "\"";
  for (const auto& sec : report.sections) {
    out << ",\n  \"" << escape_json(sec.name) << "\": {";
    bool first = true;
    for (const auto& e : sec.entries) {
      out << (first ? "\n" : ",\n");
      first = false;
      out << "    \"" << escape_json(e.key) << "\": {\"value\": "
          << value_to_string(e, true) << ", \"unit\": \""
          << escape_json(e.unit) << "\"}";
    }
    out << "\n  }";
  }
  out << "\n}\n";
  return out.str();
}

std::string emit_csv(const Report& report) {
  std::ostringstream out;
  for (const auto& sec : report.sections) {
    out << "# section: " << sec.name << "\n";
    out << "name,value,unit\n";
    for (const auto& e : sec.entries) {
      out << escape_csv(e.key) << "," << value_to_string(e, false) << ","
          << escape_csv(e.unit) << "\n";
    }
    out << "\n";
  }
  return out.str();
}

std::string emit(const Report& report, const std::string& format) {
  if (format == "json") return emit_json(report);
  if (format == "csv") return emit_csv(report);
  throw DomainError("unknown output format '" + format + "'");
}

}  // namespace ionforge
