#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "ransomguard/digest.hpp"
#include "ransomguard/model.hpp"

namespace ransomguard {

using FileMap = std::map<std::string, std::string>;

struct EffectSummary {
  std::size_t encrypted = 0;
  std::size_t deleted = 0;
  std::size_t written = 0;

  EffectSummary& operator+=(const EffectSummary& o) {
    encrypted += o.encrypted;
    deleted += o.deleted;
    written += o.written;
    return *this;
  }
};

// Default targets for events whose argument is optional.
inline constexpr std::string_view kDefaultBackupDir = "/backup";
inline constexpr std::string_view kDefaultLogDir = "/var/log";
inline constexpr std::string_view kDefaultLogFile = "/var/log/syslog";
inline constexpr std::string_view kDefaultRegistryFile = "/etc/registry";
inline constexpr std::string_view kEncryptedPrefix = "ENCRYPTED:";

// True when `target` names `path` itself, a directory above it, or every
// file ("*" or "/").
bool path_covers(std::string_view target, std::string_view path) noexcept;

// Mutates `files` as the event would on a real device. Read-only and
// network-facing kinds have no file effect. `actor` names the sample.
EffectSummary apply_event(FileMap& files, const SyscallEvent& event, std::string_view actor);

std::map<std::string, Digest> file_digests(const FileMap& files);

bool is_encrypted(std::string_view content) noexcept;

}  // namespace ransomguard
