#include "cyweyl/descriptor_io.hpp"

#include "cyweyl/errors.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace cyweyl {

using nlohmann::json;

SymmetricSpaceDescriptor descriptor_from_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("descriptor: invalid JSON: ") + e.what());
  }
  try {
    SymmetricSpaceDescriptor desc;
    desc.name = doc.value("name", std::string("custom"));
    desc.type = parse_root_type(doc.at("type").get<std::string>());
    desc.n = doc.at("n").get<int>();
    desc.rank = doc.value("r", desc.type == RootType::rank1 ? 1 : 2);
    if ((desc.rank == 1) != (desc.type == RootType::rank1))
      throw ParseError("descriptor: 'r' does not match 'type'");

    if (desc.type == RootType::rank1) {
      desc.d = doc.value("d", 0);
      desc.curvature = doc.value("curvature", 1.0);
      desc.convention = parse_convention(doc.value("convention", std::string("closed_form")));
    } else {
      for (const auto& item : doc.at("multiplicities")) {
        if (item.is_array()) {
          if (item.size() != 2) throw ParseError("descriptor: multiplicity pairs are [m, m2]");
          desc.multiplicities.push_back(item[0].get<int>());
          desc.double_multiplicities.push_back(item[1].get<int>());
        } else {
          desc.multiplicities.push_back(item.get<int>());
          desc.double_multiplicities.push_back(0);
        }
      }
      if (doc.contains("root_scales")) {
        desc.root_scales = doc.at("root_scales").get<std::vector<double>>();
      } else {
        desc.root_scales.assign(desc.multiplicities.size(), 1.0);
      }
    }
    (void)desc.root_system();  // validate
    return desc;
  } catch (const json::exception& e) {
    throw ParseError(std::string("descriptor: ") + e.what());
  }
}

std::string descriptor_to_json(const SymmetricSpaceDescriptor& desc) {
  json doc;
  doc["name"] = desc.name;
  doc["type"] = to_string(desc.type);
  doc["n"] = desc.n;
  doc["r"] = desc.rank;
  if (desc.type == RootType::rank1) {
    doc["d"] = desc.d;
    doc["curvature"] = desc.curvature;
    doc["convention"] = to_string(desc.convention);
  } else {
    json mult = json::array();
    for (std::size_t j = 0; j < desc.multiplicities.size(); ++j) {
      const int m2 = j < desc.double_multiplicities.size() ? desc.double_multiplicities[j] : 0;
      if (m2 == 0) {
        mult.push_back(desc.multiplicities[j]);
      } else {
        mult.push_back(json::array({desc.multiplicities[j], m2}));
      }
    }
    doc["multiplicities"] = mult;
    doc["root_scales"] = desc.root_scales;
  }
  return doc.dump(2);
}

SymmetricSpaceDescriptor load_descriptor(const std::string& name_or_path) {
  std::error_code ec;
  if (name_or_path.ends_with(".json") || std::filesystem::is_regular_file(name_or_path, ec)) {
    std::ifstream in(name_or_path);
    if (!in) throw ParseError("cannot open descriptor file '" + name_or_path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return descriptor_from_json(buffer.str());
  }
  return builtin_descriptor(name_or_path);
}

}  // namespace cyweyl
