#pragma once

#include "ffcount/io.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace ffcount {

inline constexpr int kSchemaVersion = 1;

struct Flags {
  std::optional<int> trunc;
  std::optional<int> guard;
  std::uint64_t seed = 0;
  std::string seed_source = "default";  // default, flag or env
};

struct Outcome {
  Json report;
  std::string csv;  // empty when the task has no CSV summary
  int exit_code = 0;  // 0 pass, 1 verification failure, 2 input error
};

// Runs a problem file {schema_version, task, payload}. Input errors yield exit code 2 and a
// report with status "error" carrying the JSON pointer.
Outcome dispatch(const Json& problem, const Flags& flags);

// Throws InputError unless report has exactly the report fields with valid values.
void validate_report(const Json& report);

// Command-line entry point.
int cli_main(int argc, char** argv);

}  // namespace ffcount
