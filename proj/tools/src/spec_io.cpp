#include "srweyl/cli/spec_io.hpp"

#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "srweyl/algebra/parse.hpp"

namespace srweyl::cli {

namespace {

std::string where(const std::string& origin, const YAML::Node& node) {
  const auto mark = node.Mark();
  if (mark.is_null()) return origin;
  return origin + ":" + std::to_string(mark.line + 1) + ":" + std::to_string(mark.column + 1);
}

const YAML::Node require(const YAML::Node& root, const char* key, const std::string& origin) {
  const YAML::Node node = root[key];
  if (!node) throw SpecError(where(origin, root) + ": missing key '" + key + "'");
  return node;
}

template <class T>
T scalar(const YAML::Node& node, const std::string& origin, const char* what) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw SpecError(where(origin, node) + ": " + what + " has the wrong type");
  }
}

std::vector<std::string> names_for(std::size_t dim) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= dim; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

}  // namespace

geometry::SubRiemannianStructure parse_spec(std::string_view text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw SpecError(origin + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) + ": " +
                    e.msg);
  }
  if (!root.IsMap()) throw SpecError(origin + ": expected a mapping at the top level");

  const auto name = scalar<std::string>(require(root, "name", origin), origin, "name");
  const auto dim_value = scalar<long>(require(root, "dim", origin), origin, "dim");
  const auto rank_value = scalar<long>(require(root, "rank", origin), origin, "rank");
  if (dim_value < 1 || rank_value < 1 || rank_value > dim_value) {
    throw SpecError(where(origin, root["rank"]) + ": need 1 <= rank <= dim");
  }
  const auto dim = static_cast<std::size_t>(dim_value);
  const auto rank = static_cast<std::size_t>(rank_value);

  const YAML::Node frame_node = require(root, "frame", origin);
  if (!frame_node.IsSequence() || frame_node.size() != dim) {
    throw SpecError(where(origin, frame_node) + ": frame must list " + std::to_string(dim) + " vector fields");
  }
  const auto names = names_for(dim);
  std::vector<std::vector<std::string>> frame;
  for (std::size_t i = 0; i < dim; ++i) {
    const YAML::Node field = frame_node[i];
    if (!field.IsSequence() || field.size() != dim) {
      throw SpecError(where(origin, field) + ": field X" + std::to_string(i + 1) + " must have " +
                      std::to_string(dim) + " components");
    }
    std::vector<std::string> components;
    for (std::size_t a = 0; a < dim; ++a) {
      const auto component = scalar<std::string>(field[a], origin, "frame component");
      try {
        algebra::parse_poly(component, names);
      } catch (const ParseError& e) {
        throw SpecError(where(origin, field[a]) + ": X" + std::to_string(i + 1) + " component " +
                        std::to_string(a + 1) + ": " + e.what());
      }
      components.push_back(component);
    }
    frame.push_back(std::move(components));
  }

  std::optional<std::vector<int>> weights;
  if (const YAML::Node w = root["weights"]) {
    if (!w.IsSequence() || w.size() != dim) {
      throw SpecError(where(origin, w) + ": weights must list " + std::to_string(dim) + " integers");
    }
    weights.emplace();
    for (const auto& entry : w) weights->push_back(scalar<int>(entry, origin, "weight"));
  }

  std::vector<algebra::Rational> base_point;
  if (const YAML::Node q = root["base_point"]) {
    if (!q.IsSequence() || q.size() != dim) {
      throw SpecError(where(origin, q) + ": base_point must list " + std::to_string(dim) + " rationals");
    }
    for (const auto& entry : q) {
      try {
        base_point.push_back(algebra::parse_rational(scalar<std::string>(entry, origin, "base_point entry")));
      } catch (const ParseError& e) {
        throw SpecError(where(origin, entry) + ": " + e.what());
      }
    }
  }

  try {
    return geometry::SubRiemannianStructure::from_strings(name, dim, rank, frame, weights, base_point);
  } catch (const InvalidStructure& e) {
    throw SpecError(origin + ": " + e.what());
  }
}

geometry::SubRiemannianStructure load_spec(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) {
    std::ifstream in(path);
    if (!in) throw SpecError(path + ": cannot open");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_spec(text.str(), path);
  }
  const fs::path p(path);
  if (p.parent_path() == "catalog") {
    const std::string stem = p.extension() == ".yaml" ? p.stem().string() : p.filename().string();
    for (const auto& entry : catalog()) {
      if (entry.file == stem) return parse_spec(entry.text, "catalog/" + stem + ".yaml");
    }
  }
  throw SpecError(path + ": no such file or catalog entry");
}

std::string emit_spec(const geometry::SubRiemannianStructure& s) {
  const auto names = s.layout().names();
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << s.name;
  out << YAML::Key << "dim" << YAML::Value << s.dim;
  out << YAML::Key << "rank" << YAML::Value << s.rank;
  if (s.weights) {
    out << YAML::Key << "weights" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (int w : *s.weights) out << w;
    out << YAML::EndSeq;
  }
  out << YAML::Key << "base_point" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const auto& q : s.base_point) out << algebra::to_string(q);
  out << YAML::EndSeq;
  out << YAML::Key << "frame" << YAML::Value << YAML::BeginSeq;
  for (const auto& field : s.frame) {
    out << YAML::Flow << YAML::BeginSeq;
    for (const auto& component : field.components()) out << YAML::DoubleQuoted << component.to_string(names);
    out << YAML::EndSeq;
  }
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace srweyl::cli
