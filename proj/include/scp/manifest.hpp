// Copyright 2026 The scpsd Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Run manifests: one JSON file per output directory recording the command,
// its configuration, input and artifact hashes, seeds and timestamps.
// Requires linking OpenSSL's libcrypto.

#include <openssl/evp.h>

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "scp/csv.hpp"
#include "scp/error.hpp"

namespace scp {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kManifestSchema = 1;
inline constexpr const char* kNormalizedTimestamp = "1970-01-01T00:00:00Z";

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

inline std::string sha256_file(const std::string& path) {
  return sha256_hex(csv::read_file(path));
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class RunManifest {
 public:
  RunManifest(std::string command, bool normalize_timestamps)
      : command_(std::move(command)), normalize_(normalize_timestamps) {
    started_ = normalize_ ? kNormalizedTimestamp : utc_timestamp();
  }

  void set_config(nlohmann::json config) { config_ = std::move(config); }
  void add_input(const std::string& role, const std::string& path) {
    inputs_.push_back({{"role", role}, {"path", path}, {"sha256", sha256_file(path)}});
  }
  void add_seed(const std::string& role, std::uint64_t seed) { seeds_[role] = seed; }
  // `name` is relative to the output directory.
  void add_artifact(const std::string& name) { artifacts_.push_back(name); }

  // Hashes every artifact under `dir` and writes dir/manifest.json.
  void write(const std::filesystem::path& dir) const {
    nlohmann::json arts = nlohmann::json::array();
    for (const auto& a : artifacts_) {
      arts.push_back({{"path", a}, {"sha256", sha256_file((dir / a).string())}});
    }
    const nlohmann::json doc{{"schema_version", kManifestSchema},
                             {"tool", "scp"},
                             {"tool_version", kToolVersion},
                             {"command", command_},
                             {"config", config_},
                             {"inputs", inputs_},
                             {"master_seeds", seeds_},
                             {"started_at", started_},
                             {"finished_at", normalize_ ? kNormalizedTimestamp : utc_timestamp()},
                             {"artifacts", arts}};
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw ParseError("cannot write manifest in '" + dir.string() + "'");
    out << doc.dump(2) << "\n";
  }

 private:
  std::string command_;
  bool normalize_ = false;
  std::string started_;
  nlohmann::json config_ = nlohmann::json::object();
  nlohmann::json inputs_ = nlohmann::json::array();
  nlohmann::json seeds_ = nlohmann::json::object();
  std::vector<std::string> artifacts_;
};

}  // namespace scp
