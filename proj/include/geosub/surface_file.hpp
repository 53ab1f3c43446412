#pragma once

// Line-oriented text format for partitioned surfaces and named selections:
//
//   surface <name>
//   piece <id> genus=<int> boundary=<int> punctures=<int> [slots=a,b,...]
//   glue <id>.<slot> <id>.<slot> [flip] [label=<text>]
//   select <set-name> <id> [<id> ...]
//   # comment

#include <map>
#include <string>

#include "geosub/partition.hpp"

namespace geosub {

struct SurfaceFile {
  std::string name;
  PartitionedSurface surface;
  std::map<std::string, PieceSet> selections;
};

SurfaceFile parse_surface(const std::string& text);
SurfaceFile load_surface(const std::string& path);

/// Canonical text: pieces by id, edges with ordered ends in lexicographic
/// order, selections by name.
std::string serialize(const SurfaceFile& f);
std::string serialize(const PartitionedSurface& p);

}  // namespace geosub
