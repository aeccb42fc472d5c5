#ifndef BOSEGAS_CLI_HPP
#define BOSEGAS_CLI_HPP

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bosegas/ensembles.hpp"

namespace bosegas::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "0.1.0";

// Exit statuses of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitThreshold = 4;
inline constexpr int kExitInterrupted = 130;

struct McConfig {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
};

struct OutputConfig {
  std::string path = "out";
  std::string format = "csv";  // csv | json
};

struct VerifyConfig {
  std::string what;  // claim | series | free-energy
  int j = 1;         // claim moment order
  int order = 6;     // series truncation order
  int trials = 20;   // free-energy perturbation trials
};

struct RunConfig {
  int schema = kSchemaVersion;
  std::string command;  // reduce | limit | sweep | verify | sample
  EnsembleSpec ensemble;
  bool has_ensemble = false;
  int m = 1;
  std::vector<int> n_list;
  std::string limit;  // uniform | noninteracting | condensate | meanfield
  McConfig mc;
  std::map<std::string, double> tolerances;
  OutputConfig output;
  VerifyConfig verify;
};

// Strict parse: unknown fields anywhere are a ValidationError naming the
// offending JSON path.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// The resolved configuration, echoed into every manifest.
nlohmann::json config_echo(const RunConfig& config);

struct RunOutcome {
  int exit_code = kExitOk;
  std::vector<std::string> outputs;  // artifact paths written
};

// Dispatches config.command, writes artifacts plus a manifest next to them.
// A set cancel flag truncates sweeps between rows; partial artifacts are
// flushed with the manifest marked truncated.
RunOutcome run(const RunConfig& config, const std::atomic<bool>* cancel = nullptr);

}  // namespace bosegas::cli

#endif
