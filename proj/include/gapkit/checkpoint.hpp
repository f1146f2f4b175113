#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "gapkit/check_report.hpp"
#include "gapkit/errors.hpp"

namespace gapkit {

std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

// Single-document resumable run state. The digest covers every other field;
// a mismatch or an unknown schema version raises CheckpointError.
struct Checkpoint {
  int schema_version = 1;
  std::string subcommand;
  Json config = Json::object();
  std::uint64_t last_completed = 0;  // segments (scan) or blocks (oppermann)
  bool completed = false;
  int exit_code = 0;
  Json state;  // module-owned resumable payload; null once completed

  Json to_json() const;
  static Checkpoint from_json(const Json& j);
  void save(const std::string& path) const;  // atomic tmp + rename
  static Checkpoint load(const std::string& path);
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace gapkit
