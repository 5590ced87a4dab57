#include <gtest/gtest.h>

#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "generators.hpp"

namespace vcflow {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("vcflow-cli-" + std::string(::testing::UnitTest::GetInstance()
                                                                          ->current_test_info()
                                                                          ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string tmp(const std::string& name) const { return (dir_ / name).string(); }
  static std::string fixture(const std::string& name) { return testing::fixture_path(name).string(); }

  Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "vcflow");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

TEST_F(Cli, AnalyzeWritesStore) {
  auto r = run({"analyze", "--cfg", fixture("diamond_rd.cfg"), "--analysis", "rd", "--workers", "4",
                "--store", tmp("s.vcfs"), "--report", tmp("r.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto store = FactStore::open_file(tmp("s.vcfs"));
  auto res = load_result(store, ReachingDefs{});
  std::set<std::string> defs;
  for (const auto& d : res.in.at(vid(4)).defs) defs.insert(d.def_id);
  EXPECT_EQ(defs, (std::set<std::string>{"d1", "d2", "d3"}));
  auto report = json::parse(cli::read_file(tmp("r.json")));
  EXPECT_EQ(report["analysis"], "rd");
  EXPECT_EQ(report["workers"], 4);
  EXPECT_EQ(report["supersteps"], 3);
}

TEST_F(Cli, WorkerCountDoesNotChangeStoreBytes) {
  for (const char* analysis : {"rd", "cp", "cache"})
    for (const char* algo : {"classic", "opt"}) {
      std::string first;
      for (const char* w : {"1", "8"}) {
        auto r = run({"analyze", "--cfg", fixture("loop.cfg"), "--analysis", analysis, "--algo", algo,
                      "--workers", w, "--store", tmp("s.vcfs")});
        ASSERT_EQ(r.code, 0) << r.err;
        auto bytes = cli::read_file(tmp("s.vcfs"));
        if (first.empty()) first = bytes;
        EXPECT_EQ(bytes, first) << analysis << " " << algo;
      }
    }
}

TEST_F(Cli, MissingInputIsUsageError) {
  auto r = run({"analyze", "--cfg", tmp("nope.cfg"), "--analysis", "rd", "--store", tmp("s.vcfs")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("nope.cfg"), std::string::npos);
  EXPECT_EQ(run({"analyze", "--cfg", fixture("loop.cfg"), "--analysis", "bogus", "--store", tmp("s")}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST_F(Cli, MalformedGraphIsUsageError) {
  cli::write_file(tmp("bad.cfg"), "V 1 nop\nE 1 2\n");
  auto r = run({"verify", "--cfg", tmp("bad.cfg"), "--analysis", "rd"});
  EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, DiffOfIdenticalGraphsIsEmpty) {
  auto r = run({"diff", "--old", fixture("loop.cfg"), "--new", fixture("loop.cfg"), "--out", tmp("c")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(cli::read_file(tmp("c")), "");
}

TEST_F(Cli, DiffOfExample) {
  auto r = run({"diff", "--old", fixture("example_old.cfg"), "--new", fixture("example_new.cfg"),
                "--out", tmp("c")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto new_g = testing::load_fixture("example_new.cfg");
  auto batch = parse_changes(cli::read_file(tmp("c")), new_g);
  ASSERT_EQ(batch.size(), 3u);
  EXPECT_EQ(batch[0].kind, ChangeKind::DeleteSourceNode);
  EXPECT_EQ(batch[1].kind, ChangeKind::ChangeSourceNode);
  EXPECT_EQ(batch[2].kind, ChangeKind::AddEdgeExisting);
  EXPECT_EQ(apply_changes(testing::load_fixture("example_old.cfg"), batch), new_g);
}

TEST_F(Cli, DiffFromEmptyGraphIsAllAdditions) {
  cli::write_file(tmp("empty.cfg"), "");
  ASSERT_EQ(run({"diff", "--old", tmp("empty.cfg"), "--new", fixture("diamond_rd.cfg"), "--out", tmp("c")}).code, 0);
  auto batch = parse_changes(cli::read_file(tmp("c")), testing::load_fixture("diamond_rd.cfg"));
  for (const auto& c : batch)
    EXPECT_TRUE(c.kind == ChangeKind::AddSourceNode || c.kind == ChangeKind::AddDestNode)
        << to_string(c.kind);
}

TEST_F(Cli, IncrementalWithEmptyChanges) {
  ASSERT_EQ(run({"analyze", "--cfg", fixture("loop.cfg"), "--analysis", "cp", "--store", tmp("s.vcfs")}).code, 0);
  const auto before = cli::read_file(tmp("s.vcfs"));
  cli::write_file(tmp("none.changes"), "");
  auto r = run({"incremental", "--cfg", fixture("loop.cfg"), "--changes", tmp("none.changes"), "--store",
                tmp("s.vcfs"), "--report", tmp("r.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(cli::read_file(tmp("s.vcfs")), before);
  auto report = json::parse(cli::read_file(tmp("r.json")));
  EXPECT_EQ(report["affected"], 0);
  EXPECT_EQ(report["ran"], false);
}

TEST_F(Cli, IncrementalModesAgreeWithScratch) {
  for (const char* mode : {"naive", "opt"}) {
    const auto store = tmp(std::string(mode) + ".vcfs");
    ASSERT_EQ(run({"analyze", "--cfg", fixture("example_old.cfg"), "--analysis", "rd", "--store", store}).code, 0);
    auto r = run({"incremental", "--cfg", fixture("example_new.cfg"), "--changes", fixture("example.changes"),
                  "--store", store, "--mode", mode, "--workers", "2", "--report", tmp("r.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto report = json::parse(cli::read_file(tmp("r.json")));
    EXPECT_EQ(report["affected"], 6);
    EXPECT_EQ(report["reused"], std::string(mode) == "opt" ? 3 : 0);
  }
  ASSERT_EQ(run({"analyze", "--cfg", fixture("example_new.cfg"), "--analysis", "rd", "--store", tmp("scratch.vcfs")}).code, 0);
  const auto scratch = cli::read_file(tmp("scratch.vcfs"));
  EXPECT_EQ(cli::read_file(tmp("naive.vcfs")), scratch);
  EXPECT_EQ(cli::read_file(tmp("opt.vcfs")), scratch);
}

TEST_F(Cli, IncrementalRejectsStoreFromOtherGraph) {
  ASSERT_EQ(run({"analyze", "--cfg", fixture("loop.cfg"), "--analysis", "rd", "--store", tmp("s.vcfs")}).code, 0);
  auto r = run({"incremental", "--cfg", fixture("example_new.cfg"), "--changes", fixture("example.changes"),
                "--store", tmp("s.vcfs")});
  EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, VerifyBundledFixtures) {
  for (const char* f : {"diamond_rd.cfg", "diamond_cp.cfg", "diamond_cache.cfg", "loop.cfg",
                        "example_old.cfg", "example_new.cfg"})
    for (const char* analysis : {"rd", "cp", "cache"}) {
      auto r = run({"verify", "--cfg", fixture(f), "--analysis", analysis});
      EXPECT_EQ(r.code, 0) << f << " " << analysis << "\n" << r.out << r.err;
    }
}

TEST_F(Cli, VerifyReportsInjectedFault) {
  auto r = run({"verify", "--cfg", fixture("diamond_rd.cfg"), "--analysis", "rd", "--inject-fault"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("at vertex 4"), std::string::npos) << r.out;
}

TEST_F(Cli, VerifyEmptyGraph) {
  cli::write_file(tmp("empty.cfg"), "# nothing\n");
  EXPECT_EQ(run({"verify", "--cfg", tmp("empty.cfg"), "--analysis", "cache"}).code, 0);
}

TEST_F(Cli, NonMonotoneAnalysisExitsThree) {
  cli::write_file(tmp("self.cfg"), "V 1 entry nop\nE 1 1\n");
  cli::AnalyzeOptions o;
  o.cfg = tmp("self.cfg");
  o.store = tmp("s.vcfs");
  std::ostringstream out, err;
  int code = cli::guarded([&] { return cli::analyze_with(testing::Toggle{}, o, out); }, err);
  EXPECT_EQ(code, 3);
  EXPECT_FALSE(fs::exists(tmp("s.vcfs")));
}

TEST_F(Cli, RepeatedRunsAreDeterministic) {
  for (int i = 0; i < 3; ++i) {
    ASSERT_EQ(run({"analyze", "--cfg", fixture("example_old.cfg"), "--analysis", "cache", "--workers", "3",
                   "--store", tmp("s" + std::to_string(i)), "--report", tmp("r" + std::to_string(i))})
                  .code,
              0);
  }
  EXPECT_EQ(cli::read_file(tmp("s0")), cli::read_file(tmp("s2")));
  EXPECT_EQ(cli::read_file(tmp("r0")), cli::read_file(tmp("r1")));
}

}  // namespace
}  // namespace vcflow
