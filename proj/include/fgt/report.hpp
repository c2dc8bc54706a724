#pragma once

#include "fgt/formal_group.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fgt {

using OrderedJson = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// Analyses in dependency order.
inline const std::vector<std::string> kAnalysisOrder{"axioms", "mulp", "strict", "torsion", "delta"};

/// One run request, as read from a spec file.
struct RunSpec {
  std::string name;
  int p = 0;
  int f = 1;
  int precision = 8;
  std::optional<int> trunc;
  GroupDescriptor group;
  /// Normalized, duplicates removed, "all" expanded, in dependency order.
  std::vector<std::string> analyses;
};

/// SpecError with "line L, column C" for syntax errors and the JSON pointer
/// of the offending field otherwise.
RunSpec parse_run_spec(const std::string& text);
RunSpec run_spec_from_json(const nlohmann::json& doc);
OrderedJson run_spec_to_json(const RunSpec& spec);

/// p^h + p + 2 with h the largest height the group needs resolved
/// (elliptic curves count as height 2).
int default_truncation(int p, const GroupDescriptor& group);

FormalGroupLaw build_group(const ConfigPtr& ring, int trunc, const GroupDescriptor& group);

struct RunOptions {
  bool timing = false;
};

struct RunReport {
  OrderedJson doc;
  /// Every requested analysis finished without error.
  bool complete = false;
};

RunReport run(const RunSpec& spec, const RunOptions& options = {});

enum class OutputFormat { kJson, kTable };

std::string emit(const RunReport& report, OutputFormat format);

/// Structural check of a report document; returns the problems found.
std::vector<std::string> validate_report(const nlohmann::json& doc);

}  // namespace fgt
