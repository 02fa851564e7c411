#pragma once

#include <string>
#include <variant>
#include <vector>

namespace ionforge {

// One labelled value. Every numeric entry carries a unit string ("1" marks a
// dimensionless quantity).
struct ReportEntry {
  std::string key;
  std::variant<double, long, bool, std::string> value;
  std::string unit;
};

struct ReportSection {
  std::string name;
  std::vector<ReportEntry> entries;

  ReportSection& num(std::string key, double v, std::string unit);
  ReportSection& integer(std::string key, long v, std::string unit);
  ReportSection& flag(std::string key, bool v);
  ReportSection& text(std::string key, std::string v);
};

// Ordered, deterministic report. Emission preserves insertion order so that
// identical inputs give byte-identical output.
struct Report {
  int schema_version = 1;
  std::string title;
  std::vector<ReportSection> sections;

  ReportSection& section(std::string name);
  const ReportSection* find(const std::string& name) const;
};

// Doubles rendered with 12 significant digits (%.12g); this is the one
// number format used by every emitter.
std::string format_number(double v);

// JSON with stable key order:
// {"schema_version":1,"title":...,"<section>":{"<key>":{"value":...,"unit":...}}}
std::string emit_json(const Report& report);

// One table per section: a "# section: <name>" line, a header row
// "name,value,unit", then one row per entry.
std::string emit_csv(const Report& report);

std::string emit(const Report& report, const std::string& format);

}  // namespace ionforge
