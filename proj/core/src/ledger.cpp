#include "ransomguard/ledger.hpp"

#include <algorithm>

#include "ransomguard/error.hpp"

namespace ransomguard::ledger {

void ByteWriter::u64(std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out_.push_back(static_cast<std::uint8_t>(v >> shift));
}

void ByteWriter::bytes(std::span<const std::uint8_t> data) {
  u64(data.size());
  raw(data);
}

void ByteWriter::text(std::string_view s) {
  bytes(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

std::uint8_t ByteReader::u8() { return raw(1)[0]; }

std::uint64_t ByteReader::u64() {
  std::uint64_t v = 0;
  for (std::uint8_t b : raw(8)) v = (v << 8) | b;
  return v;
}

std::span<const std::uint8_t> ByteReader::raw(std::size_t n) {
  if (n > remaining()) {
    throw DecodeError("need " + std::to_string(n) + " bytes at offset " + std::to_string(pos_) +
                      ", have " + std::to_string(remaining()));
  }
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

Bytes ByteReader::bytes() {
  std::uint64_t n = u64();
  if (n > remaining()) throw DecodeError("length prefix " + std::to_string(n) + " exceeds input");
  auto s = raw(static_cast<std::size_t>(n));
  return Bytes(s.begin(), s.end());
}

std::string ByteReader::text() {
  Bytes b = bytes();
  return std::string(b.begin(), b.end());
}

Bytes canonical_encoding(std::uint64_t index, const Digest& prev, Tick timestamp,
                         std::span<const std::uint8_t> payload) {
  ByteWriter w;
  w.u64(index);
  w.raw(prev);
  w.u64(timestamp);
  w.bytes(payload);
  return std::move(w).take();
}

Digest compute_digest(const Block& block) {
  return sha256(canonical_encoding(block.index, block.prev_digest, block.timestamp, block.payload));
}

bool verify_chain(std::span<const Block> blocks) {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    if (b.index != i) return false;
    const Digest& expected_prev = i == 0 ? kZeroDigest : blocks[i - 1].digest;
    if (b.prev_digest != expected_prev) return false;
    if (compute_digest(b) != b.digest) return false;
  }
  return true;
}

bool verify_chain(const Chain& chain) { return verify_chain(chain.blocks()); }

Chain::Chain(std::size_t replicas) : replicas_(std::max<std::size_t>(replicas, 1)) {}

Chain Chain::from_blocks(std::vector<Block> blocks, std::size_t replicas) {
  Chain chain(replicas);
  for (auto& r : chain.replicas_) r = blocks;
  chain.blocks_ = std::move(blocks);
  return chain;
}

const Block& Chain::append(Bytes payload, Tick tick) {
  Block block;
  block.index = blocks_.size();
  block.prev_digest = head_digest();
  block.timestamp = tick;
  block.payload = std::move(payload);
  block.digest = compute_digest(block);
  for (auto& r : replicas_) r.push_back(block);
  blocks_.push_back(std::move(block));
  return blocks_.back();
}

Digest Chain::head_digest() const noexcept {
  return blocks_.empty() ? kZeroDigest : blocks_.back().digest;
}

bool Chain::replicas_identical() const {
  const Bytes primary = export_chain(blocks_);
  return std::all_of(replicas_.begin(), replicas_.end(),
                     [&](const std::vector<Block>& r) { return export_chain(r) == primary; });
}

Bytes export_chain(std::span<const Block> blocks) {
  ByteWriter w;
  for (const Block& b : blocks) {
    w.raw(canonical_encoding(b.index, b.prev_digest, b.timestamp, b.payload));
    w.raw(b.digest);
  }
  return std::move(w).take();
}

DecodedChainFile decode_chain_file(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kBlockOverhead) {
    throw DecodeError("chain file of " + std::to_string(bytes.size()) +
                      " bytes is shorter than one block");
  }
  DecodedChainFile out;
  ByteReader r(bytes);
  while (!r.done()) {
    const std::size_t start = r.position();
    try {
      Block b;
      b.index = r.u64();
      std::ranges::copy(r.raw(32), b.prev_digest.begin());
      b.timestamp = r.u64();
      b.payload = r.bytes();
      std::ranges::copy(r.raw(32), b.digest.begin());
      out.blocks.push_back(std::move(b));
    } catch (const DecodeError& e) {
      out.framing_error = "block " + std::to_string(out.blocks.size()) + " at offset " +
                          std::to_string(start) + ": " + e.what();
      break;
    }
  }
  return out;
}

}  // namespace ransomguard::ledger
