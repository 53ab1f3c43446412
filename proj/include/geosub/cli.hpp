#pragma once

// Command-line front end. Exit codes: 0 query answered, 1 usage error,
// 2 model error (bad input, guard or exclusion), 3 internal error.

#include <ostream>
#include <string>
#include <vector>

#include "geosub/surface_file.hpp"

namespace geosub {

/// Runs one command; args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Resolves a --select value: a named selection of the file, otherwise a
/// comma-separated list of piece ids.
PieceSet resolve_selection(const SurfaceFile& f, const std::string& arg);

/// Resolves a --simplex value: comma-separated edge labels or #<edge index>.
std::vector<EdgeId> resolve_edges(const PartitionedSurface& p, const std::string& arg);

}  // namespace geosub
