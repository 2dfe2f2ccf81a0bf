#include "troplanar/database.hpp"

#include <openssl/evp.h>

#include <sstream>
#include <stdexcept>

namespace troplanar {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

EventLog::EventLog(std::filesystem::path file) : path_(std::move(file)) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  // Drop a torn trailing line so new events start on a fresh line.
  if (std::filesystem::exists(path_)) {
    std::string text = read_file(path_);
    auto cut = text.rfind('\n');
    std::size_t keep = cut == std::string::npos ? 0 : cut + 1;
    if (keep != text.size()) std::filesystem::resize_file(path_, keep);
  }
  out_.open(path_, std::ios::app | std::ios::binary);
  if (!out_) throw std::runtime_error("cannot open event log " + path_.string());
}

void EventLog::append(const nlohmann::json& event) {
  out_ << event.dump() << '\n';
  out_.flush();
  if (!out_) throw std::runtime_error("write failed on " + path_.string());
}

std::vector<nlohmann::json> EventLog::read(const std::filesystem::path& file) {
  std::vector<nlohmann::json> out;
  if (!std::filesystem::exists(file)) return out;
  std::string text = read_file(file);
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) break;
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    out.push_back(nlohmann::json::parse(line));
  }
  return out;
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SnapshotRef write_snapshot(const std::filesystem::path& dir, const std::string& bytes) {
  SnapshotRef ref{sha256_hex(bytes), dir / "snapshots"};
  std::filesystem::create_directories(ref.file);
  ref.file /= ref.hash + ".json";
  auto tmp = ref.file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << bytes;
    if (!out) throw std::runtime_error("cannot write snapshot");
  }
  std::filesystem::rename(tmp, ref.file);
  auto head_tmp = dir / "HEAD.tmp";
  {
    std::ofstream out(head_tmp, std::ios::binary | std::ios::trunc);
    out << ref.hash << '\n';
  }
  std::filesystem::rename(head_tmp, dir / "HEAD");
  return ref;
}

std::optional<SnapshotRef> head_snapshot(const std::filesystem::path& dir) {
  if (!std::filesystem::exists(dir / "HEAD")) return std::nullopt;
  std::string hash = read_file(dir / "HEAD");
  while (!hash.empty() && (hash.back() == '\n' || hash.back() == '\r')) hash.pop_back();
  SnapshotRef ref{hash, dir / "snapshots" / (hash + ".json")};
  if (!std::filesystem::exists(ref.file)) return std::nullopt;
  return ref;
}

}  // namespace troplanar
