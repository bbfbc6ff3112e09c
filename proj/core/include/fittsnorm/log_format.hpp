#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fittsnorm/core.hpp"

namespace fittsnorm {

/// One problem found while reading a trial log.
struct Diagnostic {
  std::size_t line = 0;  ///< 1-based
  std::string key;       ///< offending key, empty for whole-line problems
  std::string message;

  [[nodiscard]] std::string to_string() const;
};

struct ParseOptions {
  /// Throw ValidationError at the first malformed line instead of collecting diagnostics.
  bool strict = false;
};

struct ParseResult {
  std::vector<TrialRecord> records;
  std::vector<Diagnostic> diagnostics;
  /// Lines starting with '#', without the leading '#'.
  std::vector<std::string> header_lines;
};

/// Reads one JSON object per line. Blank lines are skipped.
[[nodiscard]] ParseResult parse_log(std::istream& in, const ParseOptions& options = {});
/// Throws IoError when the file cannot be opened.
[[nodiscard]] ParseResult read_log_file(const std::filesystem::path& path,
                                        const ParseOptions& options = {});

/// Shortest decimal form with at most six fractional digits ("320", "12.5", "-0.000001").
[[nodiscard]] std::string format_number(double value);

/// Canonical single-line form: fixed key order, then unknown keys as read.
[[nodiscard]] std::string serialize_record(const TrialRecord& record);

void write_log(std::ostream& out, std::span<const TrialRecord> records,
               std::span<const std::string> header_lines = {});
/// Throws IoError when the file cannot be written.
void write_log_file(const std::filesystem::path& path, std::span<const TrialRecord> records,
                    std::span<const std::string> header_lines = {});

}  // namespace fittsnorm
