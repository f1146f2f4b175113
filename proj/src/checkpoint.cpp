#include "gapkit/checkpoint.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace gapkit {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (const char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

Json Checkpoint::to_json() const {
  Json j;
  j["schema_version"] = schema_version;
  j["subcommand"] = subcommand;
  j["config"] = config;
  j["last_completed"] = last_completed;
  j["completed"] = completed;
  j["exit_code"] = exit_code;
  j["state"] = state;
  j["digest"] = fnv1a64_hex(j.dump());
  return j;
}

Checkpoint Checkpoint::from_json(const Json& j) {
  if (!j.is_object() || !j.contains("digest") || !j.contains("schema_version"))
    throw CheckpointError("checkpoint is malformed");
  Json body = j;
  const std::string digest = body.at("digest").get<std::string>();
  body.erase("digest");
  if (fnv1a64_hex(body.dump()) != digest)
    throw CheckpointError("checkpoint digest mismatch");
  Checkpoint c;
  c.schema_version = body.at("schema_version").get<int>();
  if (c.schema_version != 1)
    throw CheckpointError("unsupported checkpoint schema version");
  c.subcommand = body.at("subcommand").get<std::string>();
  c.config = body.at("config");
  c.last_completed = body.at("last_completed").get<std::uint64_t>();
  c.completed = body.at("completed").get<bool>();
  c.exit_code = body.at("exit_code").get<int>();
  c.state = body.at("state");
  return c;
}

void Checkpoint::save(const std::string& path) const {
  const std::string tmp = path + ".tmp";
  write_text_file(tmp, to_json().dump(2) + "\n");
  std::filesystem::rename(tmp, path);
}

Checkpoint Checkpoint::load(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const std::exception& e) {
    throw CheckpointError(std::string("cannot read checkpoint: ") + e.what());
  }
  return from_json(j);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(),
            static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in.good() && !in.eof())
    throw std::runtime_error("read failed: " + path);
  return ss.str();
}

}  // namespace gapkit
