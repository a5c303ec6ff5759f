#include <doctest.h>

#include <Eigen/Dense>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "shapbench/csv.hpp"
#include "shapbench/dataset.hpp"
#include "shapbench/errors.hpp"

using namespace shapbench;

namespace {

std::filesystem::path temp_file(const std::string& name,
                                const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("reference policies: mean, mode, tie-break") {
  Eigen::MatrixXd cols(3, 3);
  cols << 1, 0, 0,
          2, 0, 1,
          3, 1, 1;
  // Column 2 holds (0, 1, 1); add a fourth row to force the (0, 1) tie case
  // separately below.
  const ReferenceVector ref = compute_reference(
      cols, {ReferencePolicy::kMean, ReferencePolicy::kMode,
             ReferencePolicy::kMode});
  CHECK(ref.values(0) == doctest::Approx(2.0));
  CHECK(ref.values(1) == 0.0);
  CHECK(ref.values(2) == 1.0);

  Eigen::MatrixXd tie(2, 1);
  tie << 0, 1;
  const ReferenceVector tied =
      compute_reference(tie, {ReferencePolicy::kMode});
  CHECK(tied.values(0) == 0.0);  // smaller value wins the tie

  CHECK_THROWS_AS(
      compute_reference(Eigen::MatrixXd(0, 1), {ReferencePolicy::kMean}),
      Error);
}

TEST_CASE("csv dataset round trip with header") {
  const auto path = temp_file("shapbench_test_data.csv",
                              "a,b,label\n1,2.5,0\n-3,4,1\n");
  const Dataset ds = Dataset::from_csv(path.string());
  CHECK(ds.rows() == 2);
  CHECK(ds.cols() == 3);
  CHECK(ds.column_names()[1] == "b");
  CHECK(ds.values()(1, 0) == -3.0);
  CHECK(ds.column_index("label") == 2);
  CHECK_THROWS_AS(ds.column_index("nope"), Error);

  const Dataset dropped = ds.drop_column("label");
  CHECK(dropped.cols() == 2);
  CHECK(dropped.column_names() == std::vector<std::string>{"a", "b"});
  std::filesystem::remove(path);
}

TEST_CASE("csv parse errors carry location") {
  const auto bad = temp_file("shapbench_bad.csv", "a,b\n1\n");
  CHECK_THROWS_AS(Dataset::from_csv(bad.string()), Error);
  std::filesystem::remove(bad);

  const auto nonnum = temp_file("shapbench_nonnum.csv", "a\nx\n");
  CHECK_THROWS_WITH_AS(Dataset::from_csv(nonnum.string()),
                       doctest::Contains("row 2"), Error);
  std::filesystem::remove(nonnum);
}

TEST_CASE("group map json round trip") {
  FeatureGroups groups;
  groups.features.push_back({"age", {0}, FeatureKind::kContinuous});
  groups.features.push_back({"job", {1, 2, 3}, FeatureKind::kCategorical});
  const auto path =
      temp_file("shapbench_groups.json", groups.to_json_string());
  const FeatureGroups loaded = FeatureGroups::from_json_file(path.string());
  REQUIRE(loaded.feature_count() == 2);
  CHECK(loaded.features[0].name == "age");
  CHECK(loaded.features[1].columns == std::vector<int>{1, 2, 3});
  CHECK(loaded.features[1].kind == FeatureKind::kCategorical);
  loaded.validate(4);
  CHECK_THROWS_AS(loaded.validate(3), Error);
  std::filesystem::remove(path);
}

TEST_CASE("policies derive from feature kinds with an override") {
  FeatureGroups groups;
  groups.features.push_back({"age", {0}, FeatureKind::kContinuous});
  groups.features.push_back({"job", {1, 2}, FeatureKind::kCategorical});
  const auto policies = policies_from_groups(groups, 3);
  CHECK(policies[0] == ReferencePolicy::kMean);
  CHECK(policies[1] == ReferencePolicy::kMode);
  CHECK(policies[2] == ReferencePolicy::kMode);

  const auto forced =
      policies_from_groups(groups, 3, ReferencePolicy::kMean);
  for (const auto p : forced) CHECK(p == ReferencePolicy::kMean);
}

TEST_CASE("reference vector csv round trip") {
  ReferenceVector ref;
  ref.values = Eigen::Vector3d(0.25, -1.5, 2.0);
  ref.policies = {ReferencePolicy::kMean, ReferencePolicy::kMode,
                  ReferencePolicy::kMean};
  const auto path = temp_file("shapbench_refs.csv",
                              ref.to_csv_string({"a", "b", "c"}));
  const ReferenceVector loaded =
      ReferenceVector::from_csv_file(path.string());
  CHECK(loaded.values == ref.values);
  CHECK(loaded.policies == ref.policies);
  std::filesystem::remove(path);
}

TEST_CASE("format_double round-trips exactly") {
  for (double v : {0.1, -1.0 / 3.0, 1e-300, 123456789.123456789, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}
