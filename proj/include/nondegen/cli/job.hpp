#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nondegen/cli/artifacts.hpp"
#include "nondegen/cli/serialize.hpp"

namespace nondegen::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitPrecondition = 2,
  kExitBudget = 3,
  kExitCertificate = 4,
};

const std::vector<std::string>& known_commands();

struct OutputPaths {
  std::optional<std::string> result;
  std::optional<std::string> csv;
  std::optional<std::string> svg;
};

struct JobSpec {
  std::string command;
  std::uint64_t seed = 0;
  Json params = Json::object();
  OutputPaths outputs;
};

/// Top-level keys: "command", "seed", "params", "outputs"; anything else is
/// rejected.
JobSpec parse_job(const Json& j);
JobSpec parse_job_text(const std::string& text);

struct JobOutput {
  Json result;
  CsvTable csv;
  Scatter svg;
};

/// Runs the command. Throws the library's error types on failure.
JobOutput execute(const JobSpec& job, unsigned threads = 1);

/// {"schema": 1, "command", "seed", "result"}
Json result_document(const JobSpec& job, const Json& result);
std::string dump_document(const Json& doc);

struct RunRequest {
  std::string command;
  std::filesystem::path job_file;
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

/// Reads the job, executes it and writes the artifacts. Returns the exit
/// status; diagnostics go to `err`.
int run(const RunRequest& request, std::ostream& err);

}  // namespace nondegen::cli
