#pragma once

#include <cstdint>
#include <string>

namespace gapkit {

inline constexpr int kExitPassed = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitHalted = 3;

enum class Subcommand {
  kScan,
  kIdentities,
  kBounds,
  kOppermann,
  kAndrica,
  kRecords,
  kAudit,
  kAll,
};

enum class OutputFormat { kCsv, kJson, kBoth };

struct RunConfig {
  Subcommand cmd = Subcommand::kAll;
  std::uint64_t limit = 0;   // 0: per-subcommand default
  std::uint64_t n_max = 2000;  // identities anchor ceiling
  std::string output_dir = "gapkit-out";
  OutputFormat format = OutputFormat::kBoth;
  std::uint64_t checkpoint_every = 0;  // segments/blocks; 0 disables
  unsigned threads = 1;
  std::uint64_t exact_until = 20000;
  std::uint64_t segment_size = 1ull << 20;
  std::uint64_t halt_after_checkpoints = 0;  // testing aid; 0 disables
};

const char* subcommand_name(Subcommand cmd);

int run(const RunConfig& cfg);
int resume(const std::string& checkpoint_path);

}  // namespace gapkit
