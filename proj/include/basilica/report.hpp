#pragma once

#include <string>
#include <vector>

#include "basilica/quotient.hpp"
#include "basilica/theory.hpp"
#include "basilica/wordprob.hpp"
#include "json.hpp"

namespace basilica {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

// Payload serialisers.  The CLI wraps these in an envelope carrying schema,
// version, flags, seed and wallclock.
nlohmann::json json_of(const CheckReport& r);
nlohmann::json json_of(const SuiteItem& it);
nlohmann::json json_of(const SuiteReport& r);
nlohmann::json json_of(const RelatorEntry& e);
nlohmann::json json_of(const RelatorReport& r);
nlohmann::json json_of(const QuotientRecord& r);
nlohmann::json json_of(const HausdorffEntry& e);
nlohmann::json json_of(const HausdorffSeries& s);

// Comma-separated, quoted where needed, header row, LF line endings.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

// Fixed-width text rendering of the same shape.
std::string text_table(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows);

// Decimal rendering of an exact rational, for display only.
std::string decimal_of(const mpq_class& q, int digits = 6);

}  // namespace basilica
