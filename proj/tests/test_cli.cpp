#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hypercover/cli.hpp"
#include "hypercover/hypercover.hpp"

using namespace hypercover;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "hypercover");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hypercover_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& body) {
    const auto p = (dir_ / name).string();
    std::ofstream(p) << body;
    return p;
  }
  std::string write(const std::string& name, const Family& f) { return write(name, family_to_string(f)); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST(Io, RoundTrip) {
  const Family f = tight_cover(4);
  std::istringstream in(family_to_string(f));
  const auto file = read_family(in);
  EXPECT_EQ(file.family, f);
  EXPECT_EQ(file.records, 4u);
  EXPECT_EQ(to_json(Hyperplane({1, 0}, 0)).dump(), R"({"a":[1,0],"b":"0/1"})");
}

TEST(Io, ReaderErrors) {
  std::istringstream bad(R"({"a":[1,0],"b":"0.5"})");
  EXPECT_THROW(read_family(bad), InputError);
  std::istringstream empty("");
  EXPECT_THROW(read_family(empty), InputError);
  std::istringstream empty_dim("");
  EXPECT_EQ(read_family(empty_dim, 3).family.dim(), 3);
  std::istringstream mixed("{\"a\":[1,0],\"b\":\"1\"}\n\n{\"a\":[1,0,0],\"b\":\"1\"}\n");
  try {
    read_family(mixed);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  std::istringstream big(R"({"a":["100000000000000000000000000000",1],"b":"1/3"})");
  EXPECT_EQ(read_family(big).family[0].coefficient(1).str(), "100000000000000000000000000000");
}

TEST(Io, Digest) { EXPECT_EQ(digest(""), "fnv1a64:cbf29ce484222325"); }

TEST_F(CliTest, VerifyPass) {
  const auto r = run({"verify", write("t3.jsonl", tight_cover(3)), "-p", "nondegenerate"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.json()["verdict"], "pass");
}

TEST_F(CliTest, VerifyFailWithViolation) {
  const auto r = run({"verify", write("t2.jsonl", trivial_cover(2)), "-p", "nondegenerate"});
  EXPECT_EQ(r.code, 1);
  const Json j = r.json();
  EXPECT_EQ(j["verdict"], "fail");
  EXPECT_NE(r.out.find("\"00\""), std::string::npos) << r.out;
}

TEST_F(CliTest, MalformedFractionIsInputError) {
  const auto r = run({"verify", write("bad.jsonl", "{\"a\":[1,0],\"b\":\"0.5\"}\n"), "-p", "cover"});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, UnknownPredicateAndMissingFile) {
  EXPECT_EQ(run({"verify", write("t.jsonl", tight_cover(3)), "-p", "bogus"}).code, 2);
  EXPECT_EQ(run({"verify", path("missing.jsonl"), "-p", "cover"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST_F(CliTest, Construct) {
  const auto r = run({"construct", "tight", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
  const auto t = run({"construct", "trivial", "5"});
  EXPECT_EQ(std::count(t.out.begin(), t.out.end(), '\n'), 2);
  EXPECT_EQ(run({"construct", "tight", "1"}).code, 2);
  const auto o = run({"construct", "axis-slicing", "4", "--out", path("axis.jsonl")});
  EXPECT_EQ(o.code, 0);
  std::ifstream in(path("axis.jsonl"));
  EXPECT_EQ(read_family(in).family, axis_slicing_family(4));
}

TEST_F(CliTest, Reduce) {
  const auto r = run({"reduce", write("axis.jsonl", axis_slicing_family(3)), "--C", "1", "--out", path("red.jsonl")});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  std::ifstream in(path("red.jsonl"));
  EXPECT_EQ(read_family(in).family.size(), 6u);
  const auto ns = run({"reduce", write("one.jsonl", Family(2, {Hyperplane({1, 1}, Rational(1, 2))})), "--C", "1"});
  EXPECT_EQ(ns.code, 1);
  const auto box = run({"reduce", write("tight.jsonl", Family(2, {Hyperplane({2, 1}, Rational(1, 2))})), "--C", "1"});
  EXPECT_EQ(box.code, 2);
}

TEST_F(CliTest, Witness) {
  const auto r = run({"witness", write("t3.jsonl", tight_cover(3)), "--trace", path("trace.txt")});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.json()["result"]["S_size"], "2");
  EXPECT_TRUE(fs::file_size(path("trace.txt")) > 0);
  EXPECT_EQ(run({"witness", write("t2.jsonl", trivial_cover(2))}).code, 1);
}

TEST_F(CliTest, Search) {
  const auto r = run({"search", "--mode", "punctured-cover", "--n", "3", "--oracle", "--threads", "2"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.json()["result"]["minimum"], "3");
  EXPECT_EQ(run({"search", "--mode", "skew-cover", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"search", "--mode", "nope", "--n", "2"}).code, 2);
}

TEST_F(CliTest, EndToEnd) {
  const auto r = run({"end-to-end", write("axis.jsonl", axis_slicing_family(4)), "--C", "1"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(run({"end-to-end", write("one.jsonl", Family(2, {Hyperplane({1, 1}, Rational(1, 2))})), "--C", "1"}).code, 1);
  EXPECT_EQ(run({"end-to-end", write("t4.jsonl", Family(2, {Hyperplane({3, 1}, Rational(1, 2))})), "--C", "1"}).code, 2);
}

TEST_F(CliTest, ReportsAreDeterministicModuloTiming) {
  const std::string f = write("t5.jsonl", tight_cover(5));
  auto strip = [](const CliRun& r) {
    Json j = r.json();
    j.erase("timing");
    return j.dump();
  };
  const auto a = run({"witness", f, "--trace", path("a.txt")});
  const auto b = run({"witness", f, "--trace", path("a.txt")});
  EXPECT_EQ(strip(a), strip(b));
  const auto s1 = run({"search", "--mode", "edge-slicing", "--n", "3", "--C", "1", "--threads", "1"});
  const auto s8 = run({"search", "--mode", "edge-slicing", "--n", "3", "--C", "1", "--threads", "8"});
  Json j1 = s1.json(), j8 = s8.json();
  j1.erase("timing");
  j8.erase("timing");
  j1["command"]["args"].erase("threads");
  j8["command"]["args"].erase("threads");
  EXPECT_EQ(j1["result"], j8["result"]);
}
