#include "ransomguard/entry.hpp"

#include <algorithm>

#include "ransomguard/error.hpp"

namespace ransomguard {

using ledger::ByteReader;
using ledger::ByteWriter;

std::string_view to_string(EntryKind k) noexcept {
  switch (k) {
    case EntryKind::DeviceRegistration: return "DeviceRegistration";
    case EntryKind::RuleAdded: return "RuleAdded";
    case EntryKind::BackupRecord: return "BackupRecord";
    case EntryKind::VerdictRecord: return "VerdictRecord";
  }
  return "?";
}

std::string_view to_string(Verdict v) noexcept {
  return v == Verdict::Ransomware ? "Ransomware" : "NotRansomware";
}

EntryKind kind_of(const LedgerEntry& entry) noexcept {
  return static_cast<EntryKind>(entry.index() + 1);
}

namespace {

void put_optional(ByteWriter& w, const std::optional<std::uint64_t>& v) {
  w.u8(v ? 1 : 0);
  w.u64(v.value_or(0));
}

std::optional<std::uint64_t> get_optional(ByteReader& r) {
  std::uint8_t present = r.u8();
  std::uint64_t value = r.u64();
  if (present > 1) throw DecodeError("bad optional flag");
  if (present == 0) {
    if (value != 0) throw DecodeError("absent optional carries a value");
    return std::nullopt;
  }
  return value;
}

template <typename Enum>
Enum get_enum(ByteReader& r, std::uint8_t max) {
  std::uint8_t v = r.u8();
  if (v > max) throw DecodeError("enumeration tag " + std::to_string(v) + " out of range");
  return static_cast<Enum>(v);
}

void encode(ByteWriter& w, const DeviceRegistration& e) {
  if (e.device_id.empty()) throw SerializationFailure("registration without device id");
  w.text(e.device_id);
  w.raw(e.public_commitment);
  w.u64(e.capabilities.size());
  for (AccessScope s : e.capabilities) w.u8(static_cast<std::uint8_t>(s));
}

void encode(ByteWriter& w, const RuleAdded& e) {
  try {
    validate_rule(e.rule);
  } catch (const InvalidRule& err) {
    throw SerializationFailure(err.what());
  }
  w.text(e.rule.rule_id);
  w.u8(static_cast<std::uint8_t>(e.rule.action));
  w.u64(e.rule.pattern.size());
  for (EventKind k : e.rule.pattern) w.text(to_string(k));
  put_optional(w, e.rule.window ? std::optional<std::uint64_t>(*e.rule.window) : std::nullopt);
  w.u8(static_cast<std::uint8_t>(e.origin));
}

void encode(ByteWriter& w, const BackupRecord& e) {
  if (e.device_id.empty() || e.path.empty()) throw SerializationFailure("backup record without device or path");
  if (sha256(e.content) != e.content_digest) {
    throw SerializationFailure("backup record digest does not match content of " + e.path);
  }
  w.text(e.device_id);
  w.text(e.path);
  w.raw(e.content_digest);
  w.text(e.content);
  w.u64(e.tick);
}

void encode(ByteWriter& w, const VerdictRecord& e) {
  if (e.sample_name.empty()) throw SerializationFailure("verdict without sample name");
  w.text(e.sample_name);
  w.text(e.honeypot_id);
  w.u8(static_cast<std::uint8_t>(e.verdict));
  put_optional(w, e.ransom_index);
  put_optional(w, e.halt_index);
}

Digest get_digest(ByteReader& r) {
  Digest d{};
  auto raw = r.raw(d.size());
  std::copy(raw.begin(), raw.end(), d.begin());
  return d;
}

DeviceRegistration decode_registration(ByteReader& r) {
  DeviceRegistration e;
  e.device_id = r.text();
  e.public_commitment = get_digest(r);
  std::uint64_t n = r.u64();
  if (n > 2) throw DecodeError("too many capabilities");
  for (std::uint64_t i = 0; i < n; ++i) e.capabilities.insert(get_enum<AccessScope>(r, 1));
  return e;
}

RuleAdded decode_rule(ByteReader& r) {
  RuleAdded e;
  e.rule.rule_id = r.text();
  e.rule.action = get_enum<RuleAction>(r, 1);
  std::uint64_t n = r.u64();
  if (n > r.remaining()) throw DecodeError("pattern length exceeds payload");
  for (std::uint64_t i = 0; i < n; ++i) {
    std::string name = r.text();
    auto kind = parse_event_kind(name);
    if (!kind) throw DecodeError("unknown event kind '" + name + "'");
    e.rule.pattern.push_back(*kind);
  }
  if (auto w = get_optional(r)) e.rule.window = static_cast<std::size_t>(*w);
  e.origin = get_enum<RuleOrigin>(r, 1);
  return e;
}

BackupRecord decode_backup(ByteReader& r) {
  BackupRecord e;
  e.device_id = r.text();
  e.path = r.text();
  e.content_digest = get_digest(r);
  e.content = r.text();
  e.tick = r.u64();
  return e;
}

VerdictRecord decode_verdict(ByteReader& r) {
  VerdictRecord e;
  e.sample_name = r.text();
  e.honeypot_id = r.text();
  e.verdict = get_enum<Verdict>(r, 1);
  e.ransom_index = get_optional(r);
  e.halt_index = get_optional(r);
  return e;
}

}  // namespace

Bytes encode_entry(const LedgerEntry& entry) {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(kind_of(entry)));
  std::visit([&](const auto& e) { encode(w, e); }, entry);
  return std::move(w).take();
}

LedgerEntry decode_entry(std::span<const std::uint8_t> payload) {
  ByteReader r(payload);
  LedgerEntry out;
  switch (r.u8()) {
    case static_cast<std::uint8_t>(EntryKind::DeviceRegistration): out = decode_registration(r); break;
    case static_cast<std::uint8_t>(EntryKind::RuleAdded): out = decode_rule(r); break;
    case static_cast<std::uint8_t>(EntryKind::BackupRecord): out = decode_backup(r); break;
    case static_cast<std::uint8_t>(EntryKind::VerdictRecord): out = decode_verdict(r); break;
    default: throw DecodeError("unknown entry kind tag");
  }
  if (!r.done()) throw DecodeError("trailing bytes after entry");
  return out;
}

namespace ledger {

const Block& append(Chain& chain, const LedgerEntry& entry, Tick tick) {
  return chain.append(encode_entry(entry), tick);
}

std::vector<LedgerEntry> query(const Chain& chain, EntryKind kind, const EntryPredicate& predicate) {
  std::vector<LedgerEntry> out;
  for (const Block& b : chain.blocks()) {
    if (b.payload.empty() || b.payload.front() != static_cast<std::uint8_t>(kind)) continue;
    LedgerEntry e = decode_entry(b.payload);
    if (!predicate || predicate(e)) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace ledger
}  // namespace ransomguard
