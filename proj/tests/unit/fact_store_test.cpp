#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "generators.hpp"
#include "vcflow/analyses/const_prop.hpp"
#include "vcflow/analyses/lru_cache.hpp"
#include "vcflow/analyses/reaching_defs.hpp"
#include "vcflow/engine.hpp"
#include "vcflow/errors.hpp"
#include "vcflow/fact_store.hpp"
#include "vcflow/store_codec.hpp"

namespace vcflow {
namespace {

namespace fs = std::filesystem;

const StoreMeta kMeta{"reaching-defs", "rd/v1"};

class TempDir {
 public:
  TempDir() {
    auto base = fs::temp_directory_path() / "vcflow-store-test";
    path_ = base / std::to_string(reinterpret_cast<std::uintptr_t>(this));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

StoreKey in_key(std::uint64_t v) { return {vid(v), Slot::In}; }
StoreKey out_key(std::uint64_t v) { return {vid(v), Slot::Out}; }

TEST(FactStore, PutThenGet) {
  auto s = FactStore::in_memory(kMeta);
  s.batch_put({{in_key(4), "abc"}, {out_key(4), std::string("\0\1", 2)}});
  EXPECT_EQ(s.get(in_key(4)), "abc");
  EXPECT_EQ(s.get(out_key(4)), std::string("\0\1", 2));
  EXPECT_EQ(s.get(in_key(5)), std::nullopt);
  EXPECT_EQ(s.vertices(), std::set<VertexId>{vid(4)});
}

TEST(FactStore, BatchGetIsPositional) {
  auto s = FactStore::in_memory(kMeta);
  FactStore::Pairs pairs;
  for (std::uint64_t v = 0; v < 1000; v += 2) pairs.push_back({out_key(v), std::to_string(v * 7)});
  s.batch_put(pairs);
  std::vector<StoreKey> keys;
  for (std::uint64_t v = 1000; v-- > 0;) keys.push_back(out_key(v));
  auto got = s.batch_get(keys);
  ASSERT_EQ(got.size(), keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto v = value_of(keys[i].vertex);
    if (v % 2 == 0) {
      EXPECT_EQ(got[i], std::to_string(v * 7));
    } else {
      EXPECT_EQ(got[i], std::nullopt);
    }
  }
}

TEST(FactStore, OverwriteAndDuplicatesWithinBatch) {
  auto s = FactStore::in_memory(kMeta);
  s.batch_put({{in_key(1), "a"}});
  s.batch_put({{in_key(1), "b"}, {in_key(1), "c"}});
  EXPECT_EQ(s.get(in_key(1)), "c");
  EXPECT_EQ(s.size(), 1u);
}

TEST(FactStore, EmptyBatchIsNoOp) {
  TempDir dir;
  auto s = FactStore::create_file(dir / "s.vcfs", kMeta);
  s.batch_put({{in_key(1), "a"}});
  const auto before = fs::last_write_time(dir / "s.vcfs");
  s.batch_put({});
  s.commit({}, {});
  EXPECT_EQ(fs::last_write_time(dir / "s.vcfs"), before);
  EXPECT_EQ(s.size(), 1u);
}

TEST(FactStore, PurgeDropsBothSlots) {
  auto s = FactStore::in_memory(kMeta);
  s.batch_put({{in_key(1), "a"}, {out_key(1), "b"}, {in_key(2), "c"}});
  s.purge({vid(1), vid(9)});
  EXPECT_EQ(s.vertices(), std::set<VertexId>{vid(2)});
  s.commit({{out_key(3), "x"}}, {vid(2)});
  EXPECT_EQ(s.vertices(), std::set<VertexId>{vid(3)});
}

TEST(FactStore, FileRoundTrip) {
  TempDir dir;
  {
    auto s = FactStore::create_file(dir / "s.vcfs", kMeta);
    s.batch_put({{in_key(3), std::string("\0\xff", 2)}, {out_key(18446744073709551615ull), ""}});
  }
  auto r = FactStore::open_file(dir / "s.vcfs");
  EXPECT_EQ(r.meta(), kMeta);
  EXPECT_TRUE(r.file_backed());
  EXPECT_EQ(r.get(in_key(3)), std::string("\0\xff", 2));
  EXPECT_EQ(r.get(out_key(18446744073709551615ull)), "");
  EXPECT_EQ(r.size(), 2u);
}

TEST(FactStore, Fingerprint) {
  auto s = FactStore::in_memory(kMeta);
  EXPECT_NO_THROW(s.require("rd/v1"));
  EXPECT_THROW(s.require("cp/v1"), WrongAnalysis);
  ReachingDefs rd;
  ConstProp cp;
  auto g = testing::load_fixture("diamond_rd.cfg");
  auto store = FactStore::in_memory(store_meta(rd));
  save_result(store, rd, g, run_optimized(g, rd, {}));
  EXPECT_THROW(load_facts(store, cp), WrongAnalysis);
  EXPECT_THROW(save_result(store, cp, g, run_optimized(g, cp, {})), WrongAnalysis);
}

TEST(FactStore, RejectsCorruptFiles) {
  TempDir dir;
  {
    auto s = FactStore::create_file(dir / "s.vcfs", kMeta);
    s.batch_put({{in_key(3), "hello"}});
  }
  std::string bytes;
  {
    std::ifstream in(dir / "s.vcfs", std::ios::binary);
    bytes.assign(std::istreambuf_iterator<char>(in), {});
  }
  auto write = [&](const std::string& b) {
    std::ofstream out(dir / "bad.vcfs", std::ios::binary | std::ios::trunc);
    out << b;
  };
  write(bytes.substr(0, bytes.size() - 2));
  EXPECT_THROW(FactStore::open_file(dir / "bad.vcfs"), DecodeError);
  write("XXXX" + bytes.substr(4));
  EXPECT_THROW(FactStore::open_file(dir / "bad.vcfs"), DecodeError);
  write(bytes + "junk");
  EXPECT_THROW(FactStore::open_file(dir / "bad.vcfs"), DecodeError);
  EXPECT_THROW(FactStore::open_file(dir / "missing.vcfs"), StoreIO);
}

TEST(FactStore, FailedCommitLeavesOldSnapshot) {
  TempDir dir;
  auto s = FactStore::create_file(dir / "s.vcfs", kMeta);
  s.batch_put({{in_key(1), "old"}});
  FactStore::set_commit_hook([] { throw StoreIO("injected crash"); });
  EXPECT_THROW(s.commit({{in_key(1), "new"}, {in_key(2), "x"}}, {}), StoreIO);
  FactStore::set_commit_hook({});
  EXPECT_EQ(s.get(in_key(1)), "old");
  EXPECT_EQ(s.size(), 1u);
  auto r = FactStore::open_file(dir / "s.vcfs");
  EXPECT_EQ(r.entries(), s.entries());
}

TEST(FactStore, EncodingIsCanonical) {
  auto a = FactStore::in_memory(kMeta);
  auto b = FactStore::in_memory(kMeta);
  a.batch_put({{in_key(1), "x"}, {out_key(2), "y"}});
  b.batch_put({{out_key(2), "y"}});
  b.batch_put({{in_key(1), "x"}});
  EXPECT_EQ(a.encode(), b.encode());
}

template <class A>
void expect_codec_round_trip(std::uint64_t seed) {
  testing::Rng rng(seed);
  A a{};
  for (int i = 0; i < 20; ++i) {
    auto g = testing::random_graph(rng);
    auto r = run_optimized(g, a, {});
    auto store = FactStore::in_memory(store_meta(a));
    save_result(store, a, g, r);
    auto back = load_result(store, a);
    EXPECT_EQ(back.in, r.in);
    EXPECT_EQ(back.out, r.out);
    EXPECT_EQ(back.reached, r.reached);
    auto facts = load_facts(store, a);
    EXPECT_EQ(facts.entries, g.entries());
    for (auto v : g.ids()) {
      EXPECT_EQ(stored_entry_flag(store, v), g.is_entry(v));
      EXPECT_EQ(facts.out.at(v).has_value(), r.reached.count(v) == 1);
    }
  }
}

TEST(StoreCodec, RoundTripReachingDefs) { expect_codec_round_trip<ReachingDefs>(31); }
TEST(StoreCodec, RoundTripConstProp) { expect_codec_round_trip<ConstProp>(32); }
TEST(StoreCodec, RoundTripCache) { expect_codec_round_trip<LruMustCache>(33); }

TEST(StoreCodec, MissingOrMalformedRecords) {
  ReachingDefs a;
  auto store = FactStore::in_memory(store_meta(a));
  EXPECT_THROW(stored_entry_flag(store, vid(1)), StoreInconsistent);
  store.batch_put({{in_key(1), ""}, {out_key(1), std::string("\7", 1)}});
  EXPECT_THROW(load_facts(store, a), DecodeError);
}

}  // namespace
}  // namespace vcflow
