#include "trnrp/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "trnrp/version.hpp"

namespace trnrp {
namespace {

using nlohmann::ordered_json;

constexpr int kInstanceFormatVersion = 1;

ordered_json region_dims(const Region& region) {
  ordered_json dims;
  if (region.shape == RegionShape::kCircle) {
    dims["radius"] = region.radius;
    dims["center"] = {region.origin.x, region.origin.y};
  } else {
    dims["width"] = region.width;
    dims["height"] = region.height;
    dims["origin"] = {region.origin.x, region.origin.y};
  }
  return dims;
}

Region region_from(const ordered_json& doc) {
  Region region;
  region.shape = parse_region_shape(doc.at("shape").get<std::string>());
  const auto& dims = doc.at("dims");
  if (region.shape == RegionShape::kCircle) {
    region.radius = dims.at("radius").get<double>();
    region.width = region.height = 0.0;
    const auto& c = dims.at("center");
    region.origin = {c.at(0).get<double>(), c.at(1).get<double>()};
  } else {
    region.width = dims.at("width").get<double>();
    region.height = dims.at("height").get<double>();
    const auto& o = dims.at("origin");
    region.origin = {o.at(0).get<double>(), o.at(1).get<double>()};
  }
  return region;
}

}  // namespace

std::string instance_to_json(const Instance& instance) {
  const GenerationInfo& info = instance.info();
  ordered_json doc;
  doc["format"] = "trnrp-instance";
  doc["version"] = kInstanceFormatVersion;
  doc["tool_version"] = kVersion;
  doc["n"] = instance.node_count();
  doc["shape"] = std::string(to_string(info.region.shape));
  doc["dims"] = region_dims(info.region);
  doc["seed"] = info.seed;
  doc["degree_bound"] = info.degree_bound;
  doc["reduce_requested"] = info.reduce_requested;
  doc["reduce_applied"] = info.reduce_applied;
  doc["s"] = instance.repair_time();
  doc["p"] = instance.fault_prob();

  ordered_json points = ordered_json::array();
  for (const GeoPoint& pt : instance.points()) points.push_back({pt.x, pt.y});
  doc["points"] = std::move(points);
  doc["parent"] = instance.tree().parents();
  doc["depth"] = instance.depth();
  return doc.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw std::runtime_error(std::string("instance file is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "trnrp-instance") {
      throw std::runtime_error("not a trnrp instance document");
    }
    if (doc.at("version").get<int>() != kInstanceFormatVersion) {
      throw std::runtime_error("unsupported instance format version");
    }
    GenerationInfo info;
    info.region = region_from(doc);
    info.seed = doc.at("seed").get<std::uint64_t>();
    info.degree_bound = doc.value("degree_bound", 3);
    info.reduce_requested = doc.value("reduce_requested", 0);
    info.reduce_applied = doc.value("reduce_applied", 0);

    std::vector<GeoPoint> points;
    for (const auto& pt : doc.at("points")) {
      points.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
    }
    PowerTree tree(doc.at("parent").get<std::vector<NodeId>>());
    if (doc.at("n").get<int>() != tree.node_count()) {
      throw std::invalid_argument("field n disagrees with parent array");
    }
    if (doc.contains("depth") && doc.at("depth").get<int>() != tree.depth()) {
      throw std::invalid_argument("field depth disagrees with parent array");
    }
    return Instance(std::move(points), std::move(tree), doc.at("s").get<double>(),
                    doc.at("p").get<double>(), info);
  } catch (const ordered_json::exception& e) {
    throw std::runtime_error(std::string("malformed instance document: ") + e.what());
  }
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  write_text_file(path, instance_to_json(instance));
}

Instance load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_text_file(path));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace trnrp
