#include <gtest/gtest.h>

#include <filesystem>

#include "json.hpp"
#include "test_support.hpp"
#include "trnrp/instance_io.hpp"

namespace trnrp {
namespace {

using nlohmann::json;

TEST(InstanceIo, RoundTripPreservesEverything) {
  GeneratorConfig g;
  g.nodes = 14;
  g.seed = 8;
  g.reduce = 3;
  g.repair_time = 1.5;
  g.fault_prob = 0.75;
  g.region = Region::rectangle(12, 6);
  const Instance inst = generate_instance(g);

  const std::string text = instance_to_json(inst);
  const Instance back = instance_from_json(text);
  EXPECT_EQ(back.points(), inst.points());
  EXPECT_EQ(back.tree(), inst.tree());
  EXPECT_EQ(back.repair_time(), 1.5);
  EXPECT_EQ(back.fault_prob(), 0.75);
  EXPECT_EQ(back.info().seed, 8u);
  EXPECT_EQ(back.info().region.shape, RegionShape::kRectangle);
  EXPECT_EQ(back.info().reduce_requested, 3);
  EXPECT_EQ(instance_to_json(back), text);
  for (NodeId i = 0; i <= inst.node_count(); ++i) {
    for (NodeId j = 0; j <= inst.node_count(); ++j) EXPECT_EQ(back.distance(i, j), inst.distance(i, j));
  }
}

TEST(InstanceIo, CircleRegionRoundTrip) {
  GeneratorConfig g;
  g.nodes = 6;
  g.region = Region::circle(4.0, {1, 2});
  const Instance back = instance_from_json(instance_to_json(generate_instance(g)));
  EXPECT_EQ(back.info().region.shape, RegionShape::kCircle);
  EXPECT_EQ(back.info().region.radius, 4.0);
  EXPECT_EQ(back.info().region.origin, (GeoPoint{1, 2}));
}

TEST(InstanceIo, DocumentFields) {
  const json doc = json::parse(instance_to_json(testing::random_instance(5, 3)));
  for (const char* field : {"n", "shape", "dims", "seed", "s", "p", "points", "parent", "depth"}) {
    EXPECT_TRUE(doc.contains(field)) << field;
  }
  EXPECT_FALSE(doc.contains("distances"));
  EXPECT_EQ(doc["points"].size(), 6u);
}

TEST(InstanceIo, RejectsInconsistentDepth) {
  json doc = json::parse(instance_to_json(testing::random_instance(7, 3)));
  doc["depth"] = doc["depth"].get<int>() + 1;
  EXPECT_THROW(instance_from_json(doc.dump()), std::invalid_argument);
}

TEST(InstanceIo, RejectsBadProbability) {
  json doc = json::parse(instance_to_json(testing::random_instance(4, 3)));
  doc["p"] = 1.0;
  EXPECT_THROW(instance_from_json(doc.dump()), std::invalid_argument);
}

TEST(InstanceIo, RejectsMalformedJson) {
  EXPECT_THROW(instance_from_json("{not json"), std::runtime_error);
  EXPECT_THROW(instance_from_json("{}"), std::runtime_error);
}

TEST(InstanceIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "trnrp_io_test_instance.json";
  const Instance inst = testing::random_instance(9, 11);
  save_instance(inst, path);
  EXPECT_EQ(instance_to_json(load_instance(path)), instance_to_json(inst));
  std::filesystem::remove(path);
  EXPECT_THROW(load_instance(path), std::runtime_error);
}

}  // namespace
}  // namespace trnrp
