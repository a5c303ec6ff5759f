#include <doctest.h>

#include <Eigen/Dense>

#include "shapbench/errors.hpp"
#include "shapbench/value_function.hpp"
#include "test_helpers.hpp"

using namespace shapbench;
using shapbench::testing::affine_model;
using shapbench::testing::random_mlp;
using shapbench::testing::random_vector;
using shapbench::testing::reference_of;
using shapbench::testing::zero_reference;

namespace {

ValueFunctionBinding scalar_binding(const DifferentiableModel& model,
                                    const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& ref) {
  return ValueFunctionBinding(model, x, reference_of(ref),
                              FeatureGroups::scalar(static_cast<int>(x.size())));
}

}  // namespace

TEST_CASE("masked input splices instance and reference columns") {
  const MlpModel model = affine_model({1.0, 1.0, 1.0}, 0.0);
  const Eigen::Vector3d x(1.0, 2.0, 3.0);
  const ValueFunctionBinding binding =
      scalar_binding(model, x, Eigen::Vector3d::Zero());

  const Coalition s = Coalition::empty(3).with(0).with(2);
  const Eigen::VectorXd masked = binding.masked_input(s);
  CHECK(masked(0) == 1.0);
  CHECK(masked(1) == 0.0);
  CHECK(masked(2) == 3.0);

  CHECK(binding.masked_input(Coalition::empty(3)) ==
        Eigen::Vector3d::Zero());
  CHECK(binding.masked_input(Coalition::universe(3)) == x);
}

TEST_CASE("group features flip atomically") {
  const MlpModel model = affine_model({1.0, 1.0, 1.0}, 0.0);
  FeatureGroups groups;
  groups.features.push_back({"pair", {0, 1}, FeatureKind::kCategorical});
  groups.features.push_back({"solo", {2}, FeatureKind::kContinuous});
  const Eigen::Vector3d x(1.0, 2.0, 3.0);
  const ValueFunctionBinding binding(model, x, zero_reference(3), groups);

  const Eigen::VectorXd masked =
      binding.masked_input(Coalition::single(0, 2));
  CHECK(masked(0) == 1.0);
  CHECK(masked(1) == 2.0);
  CHECK(masked(2) == 0.0);
}

TEST_CASE("value boundaries: empty is the base value, full is the raw forward") {
  const MlpModel model = affine_model({2.0, 3.0}, 0.0);
  const ValueFunctionBinding binding =
      scalar_binding(model, Eigen::Vector2d(1.0, 1.0), Eigen::Vector2d::Zero());
  CHECK(binding.value(Coalition::empty(2)) == doctest::Approx(0.0));
  CHECK(binding.value(Coalition::single(0, 2)) == doctest::Approx(2.0));
  CHECK(binding.value(Coalition::universe(2)) == doctest::Approx(5.0));

  Rng rng(4);
  const MlpModel tanh_model =
      random_mlp({4, 8, 1}, Activation::kTanh, Head::kScalar, rng);
  const Eigen::VectorXd x = random_vector(4, rng);
  const ValueFunctionBinding nb =
      scalar_binding(tanh_model, x, random_vector(4, rng));
  CHECK(nb.value(Coalition::universe(4)) ==
        doctest::Approx(tanh_model.forward(x)).epsilon(1e-15));
}

TEST_CASE("batch evaluation equals a loop of single calls") {
  Rng rng(9);
  const MlpModel model =
      random_mlp({4, 8, 1}, Activation::kTanh, Head::kScalar, rng);
  const ValueFunctionBinding binding =
      scalar_binding(model, random_vector(4, rng), random_vector(4, rng));

  CHECK(binding.value_batch({}).empty());

  std::vector<Coalition> coalitions = subsets_of(Coalition::universe(4));
  coalitions.push_back(coalitions[3]);  // duplicate
  const std::vector<double> batch = binding.value_batch(coalitions);
  REQUIRE(batch.size() == coalitions.size());
  for (std::size_t i = 0; i < coalitions.size(); ++i) {
    CHECK(batch[i] == binding.value(coalitions[i]));
  }
  CHECK(batch.back() == batch[3]);
}

TEST_CASE("masking is idempotent") {
  Rng rng(21);
  const MlpModel model =
      random_mlp({5, 6, 1}, Activation::kTanh, Head::kScalar, rng);
  const Eigen::VectorXd x = random_vector(5, rng);
  const Eigen::VectorXd ref = random_vector(5, rng);
  const ValueFunctionBinding binding = scalar_binding(model, x, ref);

  for (int trial = 0; trial < 10; ++trial) {
    const Coalition s(rng.next_submask(0b11111), 5);
    const Eigen::VectorXd once = binding.masked_input(s);
    // Re-binding the masked input and masking again must not move anything.
    const ValueFunctionBinding again = scalar_binding(model, once, ref);
    CHECK(again.masked_input(s) == once);
  }
}

TEST_CASE("value depends only on the coalition's columns") {
  Rng rng(33);
  const MlpModel model =
      random_mlp({5, 8, 1}, Activation::kTanh, Head::kScalar, rng);
  const Eigen::VectorXd ref = random_vector(5, rng);
  Eigen::VectorXd x = random_vector(5, rng);
  const ValueFunctionBinding binding = scalar_binding(model, x, ref);

  const Coalition s(0b01011, 5);  // features 0, 1, 3
  const double before = binding.value(s);

  // Perturb a column of a feature outside S; the value must be bit-identical.
  x(2) += 17.5;
  const ValueFunctionBinding perturbed = scalar_binding(model, x, ref);
  CHECK(perturbed.value(s) == before);
}

TEST_CASE("feature deviations are norms over group columns") {
  const MlpModel model = affine_model({1.0, 1.0, 1.0}, 0.0);
  FeatureGroups groups;
  groups.features.push_back({"pair", {0, 1}, FeatureKind::kContinuous});
  groups.features.push_back({"solo", {2}, FeatureKind::kContinuous});
  const Eigen::Vector3d x(3.0, 4.0, -2.0);
  const ValueFunctionBinding binding(model, x, zero_reference(3), groups);

  const std::vector<double> dev = binding.feature_deviations();
  CHECK(dev[0] == doctest::Approx(5.0));  // sqrt(3^2 + 4^2)
  CHECK(dev[1] == doctest::Approx(2.0));
  CHECK(binding.signed_deviation(1) == doctest::Approx(-2.0));
  CHECK_THROWS_AS(binding.signed_deviation(0), Error);

  // Zero iff the instance equals the reference on that feature.
  const ValueFunctionBinding at_ref(model, Eigen::Vector3d::Zero(),
                                    zero_reference(3), groups);
  for (double d : at_ref.feature_deviations()) CHECK(d == 0.0);
}

TEST_CASE("binding validation") {
  const MlpModel model = affine_model({1.0, 1.0, 1.0}, 0.0);

  // Overlapping groups.
  FeatureGroups overlap;
  overlap.features.push_back({"a", {0, 1}, FeatureKind::kContinuous});
  overlap.features.push_back({"b", {1, 2}, FeatureKind::kContinuous});
  CHECK_THROWS_AS(ValueFunctionBinding(model, Eigen::Vector3d::Zero(),
                                       zero_reference(3), overlap),
                  Error);

  // A column no feature owns.
  FeatureGroups gap;
  gap.features.push_back({"a", {0}, FeatureKind::kContinuous});
  gap.features.push_back({"b", {2}, FeatureKind::kContinuous});
  CHECK_THROWS_AS(ValueFunctionBinding(model, Eigen::Vector3d::Zero(),
                                       zero_reference(3), gap),
                  Error);

  // Instance length mismatch.
  CHECK_THROWS_AS(ValueFunctionBinding(model, Eigen::Vector2d::Zero(),
                                       zero_reference(3),
                                       FeatureGroups::scalar(3)),
                  Error);
}
