#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "srweyl/error.hpp"
#include "srweyl/geometry/structure.hpp"

namespace srweyl::cli {

/// Malformed or invalid structure specification; the message carries the location.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Parses a structure specification (YAML: name, dim, rank, frame, optional
/// weights and base_point). `origin` prefixes error locations.
geometry::SubRiemannianStructure parse_spec(std::string_view text, const std::string& origin);

/// Reads a spec file. Paths of the form catalog/<name>[.yaml] that do not
/// exist on disk resolve to the catalog embedded in the binary.
geometry::SubRiemannianStructure load_spec(const std::string& path);

/// Spec text that parses back to an equal structure.
std::string emit_spec(const geometry::SubRiemannianStructure& s);

struct CatalogEntry {
  std::string_view file;  ///< stem of the catalog file
  std::string_view text;
};

const std::vector<CatalogEntry>& catalog();

}  // namespace srweyl::cli
