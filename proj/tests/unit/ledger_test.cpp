#include <gtest/gtest.h>

#include <string>

#include "ransomguard/digest.hpp"
#include "ransomguard/entry.hpp"
#include "ransomguard/error.hpp"
#include "ransomguard/ledger.hpp"

namespace rg = ransomguard;
namespace ledger = rg::ledger;

namespace {

// Computed with Python hashlib over the canonical encoding.
constexpr const char* kGenesisDigest01 = "a331ddc17b2fe7afa669509447dbea529a4de47d339a90041619b69eeed41de5";
constexpr const char* kSecondDigest02 = "a0e02d5812a62f1ded3adf02ad86f2084116f906bd53793b8f38b4b0533a6708";

ledger::Chain five_blocks() {
  ledger::Chain chain;
  for (std::uint8_t i = 0; i < 5; ++i) chain.append(rg::Bytes{i, static_cast<std::uint8_t>(i * 3), 0x7f}, i + 1);
  return chain;
}

rg::Rule rule(std::string id, std::vector<rg::EventKind> pattern) {
  return rg::Rule{std::move(id), std::move(pattern), std::nullopt, rg::RuleAction::Halt};
}

}  // namespace

TEST(Sha256, KnownVector) {
  EXPECT_EQ(rg::to_hex(rg::sha256("abc")), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Chain, GenesisAndLinkage) {
  ledger::Chain chain;
  EXPECT_TRUE(chain.empty());
  EXPECT_EQ(chain.head_digest(), rg::kZeroDigest);
  const ledger::Block& first = chain.append(rg::Bytes{0x01}, 0);
  EXPECT_EQ(first.index, 0u);
  EXPECT_EQ(first.prev_digest, rg::kZeroDigest);
  EXPECT_EQ(rg::to_hex(first.digest), kGenesisDigest01);

  const ledger::Block& second = chain.append(rg::Bytes{0x02}, 1);
  EXPECT_EQ(second.index, 1u);
  EXPECT_EQ(second.prev_digest, chain.blocks()[0].digest);
  EXPECT_EQ(rg::to_hex(second.digest), kSecondDigest02);
  EXPECT_TRUE(ledger::verify_chain(chain));
}

TEST(Chain, CanonicalEncodingLayout) {
  const rg::Bytes enc = ledger::canonical_encoding(1, rg::kZeroDigest, 2, rg::Bytes{0xaa, 0xbb});
  ASSERT_EQ(enc.size(), 8u + 32 + 8 + 8 + 2);
  EXPECT_EQ(enc[7], 1);
  EXPECT_EQ(enc[47], 2);
  EXPECT_EQ(enc[55], 2);
  EXPECT_EQ(enc[56], 0xaa);
}

TEST(VerifyChain, FreshFiveBlockChainVerifies) {
  EXPECT_TRUE(ledger::verify_chain(five_blocks()));
  EXPECT_TRUE(ledger::verify_chain(std::span<const ledger::Block>{}));
}

TEST(VerifyChain, PayloadFlipInBlockTwoFails) {
  ledger::Chain chain = five_blocks();
  chain.blocks_for_fault_injection()[2].payload[0] ^= 0x01;
  EXPECT_FALSE(ledger::verify_chain(chain));
}

TEST(VerifyChain, ZeroedPrevDigestFails) {
  ledger::Chain chain = five_blocks();
  chain.blocks_for_fault_injection()[3].prev_digest = rg::kZeroDigest;
  EXPECT_FALSE(ledger::verify_chain(chain));
}

TEST(VerifyChain, EveryExportedByteFlipIsDetected) {
  const ledger::Chain chain = five_blocks();
  const rg::Bytes exported = ledger::export_chain(chain.blocks());
  ASSERT_EQ(exported.size(), 5 * (ledger::kBlockOverhead + 3));
  for (std::size_t pos = 0; pos < exported.size(); ++pos) {
    rg::Bytes bad = exported;
    bad[pos] ^= 0xff;
    const ledger::DecodedChainFile decoded = ledger::decode_chain_file(bad);
    EXPECT_TRUE(decoded.framing_error || !ledger::verify_chain(decoded.blocks)) << "byte " << pos;
  }
}

TEST(ExportChain, RoundTrips) {
  const ledger::Chain chain = five_blocks();
  const ledger::DecodedChainFile decoded = ledger::decode_chain_file(ledger::export_chain(chain.blocks()));
  EXPECT_FALSE(decoded.framing_error);
  ASSERT_EQ(decoded.blocks.size(), 5u);
  EXPECT_TRUE(std::equal(decoded.blocks.begin(), decoded.blocks.end(), chain.blocks().begin()));
  EXPECT_THROW(ledger::decode_chain_file(rg::Bytes{}), rg::DecodeError);
  EXPECT_THROW(ledger::decode_chain_file(rg::Bytes(ledger::kBlockOverhead - 1, 0)), rg::DecodeError);
}

TEST(ExportChain, TruncationIsAFramingError) {
  rg::Bytes exported = ledger::export_chain(five_blocks().blocks());
  exported.pop_back();
  const ledger::DecodedChainFile decoded = ledger::decode_chain_file(exported);
  EXPECT_TRUE(decoded.framing_error);
  EXPECT_EQ(decoded.blocks.size(), 4u);
}

TEST(Replicas, AppendReachesEveryReplica) {
  ledger::Chain chain(3);
  chain.append(rg::Bytes{1}, 1);
  chain.append(rg::Bytes{2}, 2);
  ASSERT_EQ(chain.replica_count(), 3u);
  EXPECT_TRUE(chain.replicas_identical());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(ledger::verify_chain(chain.replica(i)));
  chain.blocks_for_fault_injection()[0].timestamp = 9;
  EXPECT_FALSE(chain.replicas_identical());
}

TEST(Query, RuleEntriesInOrder) {
  ledger::Chain chain;
  ledger::append(chain, rg::RuleAdded{rule("a", {rg::EventKind::EncryptionCall}), rg::RuleOrigin::Seed}, 1);
  ledger::append(chain, rg::DeviceRegistration{"d1", rg::sha256("k"), {rg::AccessScope::FileAccess}}, 2);
  ledger::append(chain, rg::RuleAdded{rule("b", {rg::EventKind::TorConnect}), rg::RuleOrigin::HoneypotFeedback}, 3);
  EXPECT_TRUE(ledger::verify_chain(chain));

  const auto rules = ledger::query_as<rg::RuleAdded>(chain);
  ASSERT_EQ(rules.size(), 2u);
  EXPECT_EQ(rules[0].rule.rule_id, "a");
  EXPECT_EQ(rules[1].rule.rule_id, "b");
  EXPECT_EQ(rules[1].origin, rg::RuleOrigin::HoneypotFeedback);

  const auto d1 = ledger::query(chain, rg::EntryKind::DeviceRegistration, [](const rg::LedgerEntry& e) {
    return std::get<rg::DeviceRegistration>(e).device_id == "d1";
  });
  EXPECT_EQ(d1.size(), 1u);
  EXPECT_TRUE(ledger::query(ledger::Chain{}, rg::EntryKind::RuleAdded).empty());
}

TEST(Entry, EncodeDecodeRoundTrip) {
  const std::vector<rg::LedgerEntry> entries = {
      rg::DeviceRegistration{"d1", rg::sha256("k"), {rg::AccessScope::FileAccess, rg::AccessScope::NetworkAccess}},
      rg::RuleAdded{rg::Rule{"w", {rg::EventKind::PortScan, rg::EventKind::EncryptionCall}, 4, rg::RuleAction::Halt},
                    rg::RuleOrigin::HoneypotFeedback},
      rg::BackupRecord{"d1", "/data/a", rg::sha256("hello"), "hello", 7},
      rg::VerdictRecord{"s", "hp", rg::Verdict::Ransomware, 6, 4},
  };
  for (const rg::LedgerEntry& e : entries) {
    EXPECT_EQ(rg::decode_entry(rg::encode_entry(e)), e);
  }
  EXPECT_THROW(rg::encode_entry(rg::BackupRecord{"d1", "/a", rg::sha256("x"), "y", 1}), rg::SerializationFailure);
  EXPECT_THROW(rg::encode_entry(rg::RuleAdded{rule("bad", {rg::EventKind::FileRead}), rg::RuleOrigin::Seed}),
               rg::SerializationFailure);
  EXPECT_THROW(rg::decode_entry(rg::Bytes{0x09}), rg::DecodeError);
  EXPECT_THROW(rg::decode_entry(rg::Bytes{}), rg::DecodeError);
}
