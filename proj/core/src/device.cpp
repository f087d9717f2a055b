#include "ransomguard/device.hpp"

namespace ransomguard {

bool path_covers(std::string_view target, std::string_view path) noexcept {
  if (target == "*" || target == "/") return true;
  while (target.size() > 1 && target.back() == '/') target.remove_suffix(1);
  if (path == target) return true;
  return path.size() > target.size() && path.starts_with(target) && path[target.size()] == '/';
}

bool is_encrypted(std::string_view content) noexcept { return content.starts_with(kEncryptedPrefix); }

namespace {

std::size_t erase_covered(FileMap& files, std::string_view target) {
  std::size_t n = 0;
  for (auto it = files.begin(); it != files.end();) {
    if (path_covers(target, it->first)) {
      it = files.erase(it);
      ++n;
    } else {
      ++it;
    }
  }
  return n;
}

std::string_view arg_or(const SyscallEvent& e, std::string_view fallback) {
  return e.arg && !e.arg->empty() ? std::string_view(*e.arg) : fallback;
}

void append_line(FileMap& files, std::string_view path, std::string_view line) {
  std::string& content = files[std::string(path)];
  if (!content.empty()) content += '\n';
  content += line;
}

}  // namespace

EffectSummary apply_event(FileMap& files, const SyscallEvent& event, std::string_view actor) {
  EffectSummary fx;
  const std::string tag = std::string(to_string(event.kind)) + " by " + std::string(actor);
  switch (event.kind) {
    case EventKind::FileWrite:
      append_line(files, arg_or(event, kDefaultLogFile), tag);
      fx.written = 1;
      break;
    case EventKind::LogEdit:
      append_line(files, arg_or(event, kDefaultLogFile), tag);
      fx.written = 1;
      break;
    case EventKind::RegistryEdit:
      append_line(files, arg_or(event, kDefaultRegistryFile), tag);
      fx.written = 1;
      break;
    case EventKind::FolderDelete:
      fx.deleted = erase_covered(files, arg_or(event, "/"));
      break;
    case EventKind::BackupDelete:
      fx.deleted = erase_covered(files, arg_or(event, kDefaultBackupDir));
      break;
    case EventKind::TraceDelete:
      fx.deleted = erase_covered(files, arg_or(event, kDefaultLogDir));
      break;
    case EventKind::EncryptionCall: {
      const std::string_view target = arg_or(event, "*");
      for (auto& [path, content] : files) {
        if (!path_covers(target, path) || is_encrypted(content)) continue;
        content = std::string(kEncryptedPrefix) + to_hex(sha256(std::string(actor) + '\0' + content));
        ++fx.encrypted;
      }
      break;
    }
    case EventKind::FileSearch:
    case EventKind::FileRead:
    case EventKind::AdminPrivilegeRequest:
    case EventKind::RootAccess:
    case EventKind::OpenPortsQuery:
    case EventKind::OpenSessionsQuery:
    case EventKind::BrowsingHistoryRead:
    case EventKind::BookmarkRead:
    case EventKind::KernelInfoRead:
    case EventKind::PortScan:
    case EventKind::Fingerprint:
    case EventKind::C2Connect:
    case EventKind::TorConnect:
    case EventKind::KeyguardDisable:
    case EventKind::DesktopControl:
    case EventKind::RansomDemand:
      break;
  }
  return fx;
}

std::map<std::string, Digest> file_digests(const FileMap& files) {
  std::map<std::string, Digest> out;
  for (const auto& [path, content] : files) out.emplace(path, sha256(content));
  return out;
}

}  // namespace ransomguard
