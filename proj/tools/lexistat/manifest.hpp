#pragma once

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include <openssl/evp.h>

#include <json.hpp>

#include "lexistat/error.hpp"

namespace lexistat::cli {

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    fail(ErrorKind::Io, "SHA-256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

/// Writes through a sibling temp file and renames it into place.
inline void write_atomic(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) fail(ErrorKind::Io, "cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorKind::Io, "cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

/// UTC, ISO 8601. Honors SOURCE_DATE_EPOCH.
inline std::string timestamp_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct FileDigest {
  std::string path;
  std::string sha256;
};

/// Record written next to every output file as `<output>.manifest.json`.
struct RunManifest {
  std::string command;
  std::string version;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;

  void add_input(std::string path, std::string_view contents) { inputs.push_back({std::move(path), sha256_hex(contents)}); }

  /// Writes `contents` atomically and records its digest.
  void write_output(const std::filesystem::path& path, std::string_view contents) {
    write_atomic(path, contents);
    outputs.push_back({path.string(), sha256_hex(contents)});
  }

  nlohmann::json to_json() const {
    auto digests = [](const std::vector<FileDigest>& files) {
      nlohmann::json out = nlohmann::json::array();
      for (const auto& f : files) out.push_back({{"path", f.path}, {"sha256", f.sha256}});
      return out;
    };
    return {{"tool", "lexistat"},      {"version", version},         {"command", command},
            {"parameters", parameters}, {"inputs", digests(inputs)}, {"outputs", digests(outputs)},
            {"timestamp", timestamp_now()}};
  }

  void save(const std::filesystem::path& primary_output) const {
    auto path = primary_output;
    path += ".manifest.json";
    write_atomic(path, to_json().dump(2) + '\n');
  }
};

}  // namespace lexistat::cli
