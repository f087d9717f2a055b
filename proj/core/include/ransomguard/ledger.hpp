#pragma once

// Append-only hash-chained block store. One instance backs the edge chain
// (registry and rules), another the cloud backup chain.
//
// Digest input for block i, bit-exact:
//   index (u64 BE) | prev_digest (32) | timestamp (u64 BE) | len (u64 BE) | payload
// The export format concatenates that encoding followed by the block's
// 32-byte digest, block after block.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ransomguard/digest.hpp"
#include "ransomguard/model.hpp"

namespace ransomguard::ledger {

struct Block {
  std::uint64_t index = 0;
  Digest prev_digest{};
  Tick timestamp = 0;
  Bytes payload;
  Digest digest{};

  friend bool operator==(const Block&, const Block&) = default;
};

// Encoded header (index, prev, timestamp, length) plus trailing digest.
inline constexpr std::size_t kBlockOverhead = 8 + 32 + 8 + 8 + 32;

Bytes canonical_encoding(std::uint64_t index, const Digest& prev, Tick timestamp,
                         std::span<const std::uint8_t> payload);
Digest compute_digest(const Block& block);

// True iff indices run 0,1,2..., block 0 links to the zero digest, each
// prev_digest equals its predecessor's digest and every stored digest
// matches the recomputed one. An empty list verifies.
bool verify_chain(std::span<const Block> blocks);

class Chain {
 public:
  // `replicas` is the number of workstation copies kept in lockstep.
  explicit Chain(std::size_t replicas = 1);

  // Adopts blocks without checking them; callers run verify_chain.
  static Chain from_blocks(std::vector<Block> blocks, std::size_t replicas = 1);

  // Links, digests and appends `payload`; every replica holds the new block
  // before this returns.
  const Block& append(Bytes payload, Tick tick);

  std::span<const Block> blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  bool empty() const noexcept { return blocks_.empty(); }

  // Digest of the last block, or all zeros for an empty chain.
  Digest head_digest() const noexcept;

  std::size_t replica_count() const noexcept { return replicas_.size(); }
  std::span<const Block> replica(std::size_t i) const { return replicas_.at(i); }
  bool replicas_identical() const;

  // Direct access to the sequencer's block list for tamper tests. Replicas
  // are left untouched so divergence is observable.
  std::vector<Block>& blocks_for_fault_injection() noexcept { return blocks_; }

 private:
  std::vector<Block> blocks_;
  std::vector<std::vector<Block>> replicas_;
};

bool verify_chain(const Chain& chain);

Bytes export_chain(std::span<const Block> blocks);

struct DecodedChainFile {
  std::vector<Block> blocks;
  // Set when the bytes after the last whole block do not form a block.
  std::optional<std::string> framing_error;
};

// Splits an exported chain file into blocks. Throws DecodeError when the
// input is shorter than one block (so cannot be a chain file at all);
// later framing damage is reported through framing_error.
DecodedChainFile decode_chain_file(std::span<const std::uint8_t> bytes);

// Big-endian length-prefixed writer used for every canonical payload.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u64(std::uint64_t v);
  void raw(std::span<const std::uint8_t> data) { out_.insert(out_.end(), data.begin(), data.end()); }
  void bytes(std::span<const std::uint8_t> data);
  void text(std::string_view s);

  Bytes take() && { return std::move(out_); }
  const Bytes& view() const noexcept { return out_; }

 private:
  Bytes out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8();
  std::uint64_t u64();
  std::span<const std::uint8_t> raw(std::size_t n);
  Bytes bytes();
  std::string text();

  std::size_t remaining() const noexcept { return data_.size() - pos_; }
  bool done() const noexcept { return pos_ == data_.size(); }
  std::size_t position() const noexcept { return pos_; }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace ransomguard::ledger
