#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "shapbench/dataset.hpp"
#include "shapbench/model.hpp"
#include "shapbench/value_function.hpp"

namespace shapbench {

enum class FixtureKind { kAffine, kQuadratic, kTanhMlp };

const char* fixture_kind_name(FixtureKind k);
FixtureKind fixture_kind_from_name(const std::string& name);

struct FixtureSpec {
  FixtureKind kind = FixtureKind::kTanhMlp;
  int m = 6;
  std::uint64_t seed = 0;
  int rows = 200;
};

// Desk-scale synthetic stand-in for a benchmark dataset: a seeded instance
// table, a constructed model, a scalar group map and mean references. Same
// spec, same bytes.
struct FixtureData {
  std::unique_ptr<DifferentiableModel> model;
  Dataset dataset;               // feature columns plus a trailing label
  Eigen::MatrixXd instances;     // feature columns only
  FeatureGroups groups;
  ReferenceVector reference;
};

FixtureData build_fixture(const FixtureSpec& spec);

ValueFunctionBinding bind_row(const FixtureData& fixture, int row);

// Writes dataset.csv, model.json, groups.json, references.csv and
// fixture.json under out_dir. Returns the out_dir path.
std::string make_fixture(const FixtureSpec& spec, const std::string& out_dir);

}  // namespace shapbench
