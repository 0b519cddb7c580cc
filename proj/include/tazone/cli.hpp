#pragma once

#include "tazone/explorer.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tazone::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int missing_file = 2;
inline constexpr int diagnostics = 3;
inline constexpr int inconclusive = 4;
inline constexpr int divergence = 5;
}  // namespace exit_code

struct RunConfig {
  std::string spec_path;
  std::vector<std::string> queries;       // inline --query values
  std::optional<std::string> query_file;  // --queries
  SearchOptions options;
  bool faithful = false;  // forces equal subsumption and no extrapolation
  bool stats = false;
  bool witness = false;
  bool selftest = false;
};

// Reads queries from `in` when neither inline queries nor a query file are
// given (except in selftest mode, which then checks the generated product
// suite).
int run(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

// Query file lines minus blanks and `//` comments.
std::vector<std::string> query_lines(std::istream& in);

}  // namespace tazone::cli
