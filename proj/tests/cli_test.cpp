// Copyright 2026 The bosonsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "formats.hpp"

using namespace bosonsim;
using namespace bosonsim::cli;

namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bosonsim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& contents) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << contents;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  int call(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  std::vector<std::string> lines() const {
    std::vector<std::string> v;
    std::istringstream in(out_.str());
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
  }

  // Data rows of a CSV with '#' headers and one column-name line.
  std::vector<std::string> csv_rows() const {
    std::vector<std::string> rows;
    bool header_seen = false;
    for (const std::string& l : lines()) {
      if (l.empty() || l[0] == '#') continue;
      if (!header_seen) {
        header_seen = true;
        continue;
      }
      rows.push_back(l);
    }
    return rows;
  }

  static double last_field(const std::string& row) { return std::stod(row.substr(row.rfind(',') + 1)); }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

const char* kBalanced = "modes 2\ncoupler 1 0.5\n";

}  // namespace

TEST_F(CliTest, Permanent) {
  EXPECT_EQ(call({"permanent", file("m.txt", "1 2\n3 4\n")}), kOk);
  EXPECT_EQ(out_.str(), "10 + 0i\n");
  EXPECT_EQ(call({"permanent", file("m.txt", "1 2\n3 4\n"), "--method", "naive"}), kOk);
  EXPECT_EQ(out_.str(), "10 + 0i\n");
  EXPECT_EQ(call({"permanent", file("i.txt", write_matrix(ComplexMatrix::identity(4)))}), kOk);
  EXPECT_EQ(out_.str(), "1 + 0i\n");

  const std::string bs = file("bs.txt", kBalanced);
  ASSERT_EQ(call({"compile", bs, "-o", path("bsm.txt")}), kOk);
  ASSERT_EQ(call({"permanent", path("bsm.txt")}), kOk);
  const std::string text = out_.str();
  const double re = std::stod(text);
  const double im = std::stod(text.substr(text.find_first_of("+-", 1) + 1));
  EXPECT_LT(std::hypot(re, im), 1e-12);

  EXPECT_EQ(call({"permanent", file("x.txt", "1 foo\n")}), kInputError);
  EXPECT_NE(err_.str().find("line 1"), std::string::npos);
  EXPECT_EQ(call({"permanent", file("big.txt", write_matrix(ComplexMatrix::identity(10))),
                  "--method", "naive"}),
            kCapacityError);
  EXPECT_EQ(call({"permanent", path("missing.txt")}), kInputError);
}

TEST_F(CliTest, Distribution) {
  ASSERT_EQ(call({"random-circuit", "--seed", "7", "-o", path("c.txt")}), kOk);
  ASSERT_EQ(call({"distribution", path("c.txt"), "--input", "0,0,1,1,1", "--collision-free"}), kOk);
  const auto rows = csv_rows();
  EXPECT_EQ(rows.size(), 10u);
  double total = 0.0;
  for (const auto& r : rows) total += last_field(r);
  EXPECT_NEAR(total, 1.0, 1e-10);
  const std::string text = out_.str();
  EXPECT_NE(text.find("# input: 0,0,1,1,1\n"), std::string::npos);
  EXPECT_NE(text.find("# source_sha256: " + sha256_hex(slurp(path("c.txt")))), std::string::npos);
  EXPECT_NE(text.find("# normalization: "), std::string::npos);
  EXPECT_NE(text.find("occupation,probability\n"), std::string::npos);

  ASSERT_EQ(call({"distribution", path("c.txt"), "--input", "0,0,1,1,1"}), kOk);
  EXPECT_EQ(csv_rows().size(), 35u);

  ASSERT_EQ(call({"distribution", file("id.txt", write_matrix(ComplexMatrix::identity(3))),
                  "--input", "2,0,1"}),
            kOk);
  std::size_t ones = 0;
  for (const auto& r : csv_rows()) {
    const double p = last_field(r);
    EXPECT_TRUE(p == 0.0 || p == 1.0);
    if (p == 1.0) {
      ++ones;
      EXPECT_EQ(r.substr(0, 7), "\"2,0,1\"");
    }
  }
  EXPECT_EQ(ones, 1u);

  EXPECT_EQ(call({"distribution", path("c.txt"), "--input", "0,1,1"}), kInputError);
  EXPECT_EQ(call({"distribution", path("c.txt"), "--input", "a,b"}), kInputError);
  EXPECT_EQ(call({"distribution", file("bs.txt", kBalanced), "--input", "1,1", "--collision-free"}),
            kDegeneratePostselection);
}

TEST_F(CliTest, Sample) {
  const std::string bs = file("bs.txt", kBalanced);
  ASSERT_EQ(call({"sample", bs, "--input", "1,1", "--count", "10000", "--seed", "3"}), kOk);
  const auto draws = lines();
  EXPECT_EQ(draws.size(), 10000u);
  EXPECT_EQ(std::count(draws.begin(), draws.end(), "1,1"), 0);

  ASSERT_EQ(call({"random-circuit", "--seed", "2", "-o", path("c.txt")}), kOk);
  ASSERT_EQ(call({"sample", path("c.txt"), "--input", "0,0,1,1,1", "--count", "5", "--seed", "1",
                  "-o", path("a.txt")}),
            kOk);
  ASSERT_EQ(call({"sample", path("c.txt"), "--input", "0,0,1,1,1", "--count", "5", "--seed", "1",
                  "-o", path("b.txt")}),
            kOk);
  EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));

  ASSERT_EQ(call({"sample", file("id.txt", "modes 3\n"), "--input", "1,0,1", "--count", "20",
                  "--seed", "4"}),
            kOk);
  for (const auto& l : lines()) EXPECT_EQ(l, "1,0,1");
  EXPECT_EQ(call({"sample", bs, "--input", "1,1", "--count", "0", "--seed", "4"}), kInputError);
}

TEST_F(CliTest, HomScan) {
  const std::string bs = file("bs.txt", kBalanced);
  ASSERT_EQ(call({"hom-scan", bs, "--in-modes", "1,2", "--out-modes", "1,2", "--delay-grid",
                  "-1000:1000:201", "--sigma", "100"}),
            kOk);
  const auto rows = csv_rows();
  ASSERT_EQ(rows.size(), 201u);
  double min_rate = 1.0;
  std::size_t min_at = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double r = last_field(rows[i]);
    if (r < min_rate) {
      min_rate = r;
      min_at = i;
    }
    EXPECT_NEAR(r, last_field(rows[rows.size() - 1 - i]), 1e-12);
  }
  EXPECT_EQ(min_at, 100u);
  EXPECT_LT(min_rate, 1e-12);
  EXPECT_EQ(std::stod(rows[100]), 0.0);
  EXPECT_NEAR(last_field(rows.front()), 0.5, 0.005);  // |tau| = 10 sigma
  EXPECT_NEAR(last_field(rows.back()), 0.5, 0.005);

  ASSERT_EQ(call({"random-circuit", "--seed", "1", "-o", path("c.txt")}), kOk);
  ASSERT_EQ(call({"hom-scan", path("c.txt"), "--in-modes", "3,4,5", "--out-modes", "2,4,5",
                  "--delay-grid", "-300:300:7", "--delay-modes", "4,5", "--joint"}),
            kOk);
  EXPECT_EQ(csv_rows().size(), 49u);
  EXPECT_NE(out_.str().find("delay_a,delay_b,rate\n"), std::string::npos);

  EXPECT_EQ(call({"hom-scan", bs, "--in-modes", "1,3", "--out-modes", "1,2", "--delay-grid", "0:1:2"}),
            kInputError);
  EXPECT_EQ(call({"hom-scan", bs, "--in-modes", "1,1", "--out-modes", "1,2", "--delay-grid", "0:1:2"}),
            kInputError);
  EXPECT_EQ(call({"hom-scan", bs, "--in-modes", "1,2", "--out-modes", "1,2", "--delay-grid", "0:1"}),
            kInputError);
}

TEST_F(CliTest, SimulateAndReconstruct) {
  ASSERT_EQ(call({"random-circuit", "--seed", "5", "-o", path("c.txt")}), kOk);
  ASSERT_EQ(call({"simulate", path("c.txt"), "--counts", "100000000", "--seed", "2", "-o",
                  path("d.txt")}),
            kOk);
  ASSERT_EQ(call({"simulate", path("c.txt"), "--counts", "100000000", "--seed", "2", "-o",
                  path("d2.txt")}),
            kOk);
  EXPECT_EQ(slurp(path("d.txt")), slurp(path("d2.txt")));
  const MeasurementDataset data = parse_dataset(slurp(path("d.txt")));
  EXPECT_EQ(data.visibilities.size(), 40u);

  ASSERT_EQ(call({"reconstruct", path("d.txt"), "--restarts", "10", "--seed", "3", "-o",
                  path("r1.txt")}),
            kOk);
  ASSERT_EQ(call({"reconstruct", path("d.txt"), "--restarts", "10", "--seed", "3", "-o",
                  path("r2.txt")}),
            kOk);
  EXPECT_EQ(slurp(path("r1.txt")), slurp(path("r2.txt")));

  const ParsedResult result = parse_result(slurp(path("r1.txt")));
  std::vector<VisibilityPair> pairs;
  for (const auto& v : data.visibilities) pairs.push_back(v.pair);
  EXPECT_EQ(predict_observables(result.params, pairs), result.predicted);
  double worst = 0.0;
  const MeasurementDataset normalized = normalize_singles(data);
  for (std::size_t i = 0; i < 25; ++i) {
    worst = std::max(worst, std::abs(result.predicted.singles[i] - normalized.singles[i]));
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    worst = std::max(worst, std::abs(result.predicted.visibilities[i].value - data.visibilities[i].value));
  }
  EXPECT_LT(worst, 1e-3);

  EXPECT_EQ(call({"reconstruct", file("bad.txt", "[singles]\n1 1 0.5\n")}), kInputError);
  EXPECT_NE(err_.str().find("line 2"), std::string::npos) << err_.str();
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(call({"--help"}), kOk);
  EXPECT_EQ(call({}), kInputError);
  EXPECT_EQ(call({"frobnicate"}), kInputError);
  EXPECT_EQ(call({"permanent"}), kInputError);
  EXPECT_EQ(call({"permanent", "x", "--method", "gauss"}), kInputError);
}
