#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "defprior/empirical_bayes.hpp"

namespace defprior {

struct CsvParseError {
  std::size_t line = 0;
  std::string message;
};

struct CsvReadResult {
  std::vector<RawRecord> records;
  std::vector<CsvParseError> errors;

  bool ok() const noexcept { return errors.empty(); }
};

/// Reads `study_id,p_value` CSV (UTF-8, optional BOM, LF or CRLF). Blank lines
/// are skipped. Rows whose p_value is not a decimal number are reported in
/// `errors` with their 1-based line number; range checks are left to ingest().
CsvReadResult read_records_csv(std::istream& in);

/// Writes the same format; p-values use 17 significant digits so reading the
/// file back reproduces every double exactly.
void write_records_csv(std::ostream& out, std::span<const RawRecord> records);

}  // namespace defprior
