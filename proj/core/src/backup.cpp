#include "ransomguard/backup.hpp"

#include <map>

#include "ransomguard/error.hpp"

namespace ransomguard {

std::uint32_t route(std::uint64_t ordinal, std::span<Workstation> workstations) {
  if (workstations.empty()) throw NoWorkstations();
  auto& ws = workstations[ordinal % workstations.size()];
  ++ws.handled;
  return ws.ws_id;
}

CloudBackup::CloudBackup(std::uint32_t workstations) : chain_(workstations) {
  if (workstations == 0) throw NoWorkstations();
  workstations_.reserve(workstations);
  for (std::uint32_t i = 0; i < workstations; ++i) workstations_.push_back(Workstation{i, 0});
}

std::uint32_t CloudBackup::route_request() {
  std::uint32_t ws = route(requests_++, workstations_);
  assignments_.push_back(ws);
  return ws;
}

std::vector<BackupRecord> CloudBackup::backup_snapshot(std::string_view device_id, const FileMap& files,
                                                       const Registry& registry, SimClock& clock) {
  if (!registry.is_authenticated(device_id)) throw AuthFailure(std::string(device_id));
  route_request();
  std::vector<BackupRecord> records;
  records.reserve(files.size());
  for (const auto& [path, content] : files) {
    BackupRecord rec{std::string(device_id), path, sha256(content), content, clock.next()};
    ledger::append(chain_, rec, rec.tick);
    records.push_back(std::move(rec));
  }
  return records;
}

std::size_t CloudBackup::restore(std::string_view device_id, FileMap& files, const Registry& registry) {
  if (!registry.is_authenticated(device_id)) throw AuthFailure(std::string(device_id));
  route_request();
  if (!ledger::verify_chain(chain_)) throw CorruptChain();

  std::map<std::string, BackupRecord> latest;
  for (BackupRecord& rec : ledger::query_as<BackupRecord>(
           chain_, [&](const BackupRecord& r) { return r.device_id == device_id; })) {
    auto it = latest.find(rec.path);
    if (it == latest.end()) {
      latest.emplace(rec.path, std::move(rec));
    } else if (rec.tick > it->second.tick) {
      it->second = std::move(rec);
    }
  }
  for (const auto& [path, rec] : latest) {
    if (sha256(rec.content) != rec.content_digest) throw CorruptChain();
    files[path] = rec.content;
  }
  return latest.size();
}

}  // namespace ransomguard
