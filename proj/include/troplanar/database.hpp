#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace troplanar {

std::string sha256_hex(std::string_view bytes);

// Newline-delimited JSON, append only. Each append is flushed.
class EventLog {
 public:
  explicit EventLog(std::filesystem::path file);
  void append(const nlohmann::json& event);
  const std::filesystem::path& path() const { return path_; }

  // Complete lines only; a torn final line from an interrupted write is skipped.
  static std::vector<nlohmann::json> read(const std::filesystem::path& file);

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

// Snapshots live in dir/snapshots/<sha256>.json; dir/HEAD names the latest.
struct SnapshotRef {
  std::string hash;
  std::filesystem::path file;
};

SnapshotRef write_snapshot(const std::filesystem::path& dir, const std::string& bytes);
std::optional<SnapshotRef> head_snapshot(const std::filesystem::path& dir);
std::string read_file(const std::filesystem::path& file);

}  // namespace troplanar
