#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

namespace ontoforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kVersion = "0.1.0";

// Entry point shared by the executable and in-process tests.
//   ontoforge index <files...> --format obo|jsonl|terms|github --store DIR
//   ontoforge complete --store DIR (--query FILE | --label TEXT) --output FILE
//   ontoforge eval split|run|score|sheets-make|sheets-ingest|report ...
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// UTC, second resolution, e.g. 2024-05-01T12:00:00Z.
std::string utc_timestamp();

} // namespace ontoforge::cli
