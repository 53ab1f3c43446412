#pragma once

// Shared helpers for the test suites: data paths, random partitions and
// selections.

#include <random>
#include <string>
#include <vector>

#include "geosub/error.hpp"
#include "geosub/partition.hpp"
#include "geosub/subsurface.hpp"
#include "geosub/surface_file.hpp"

#ifndef GEOSUB_DATA_DIR
#define GEOSUB_DATA_DIR "data"
#endif

namespace geosub::test {

using Rng = std::mt19937_64;

inline std::string data_path(const std::string& name) {
  return std::string(GEOSUB_DATA_DIR) + "/" + name;
}

inline SurfaceFile load_data(const std::string& name) { return load_surface(data_path(name)); }

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

struct PartitionOptions {
  std::size_t min_pieces = 1;
  std::size_t max_pieces = 8;
  // Chance (percent) of closing each remaining pair of free slots.
  int extra_glue_percent = 60;
  // Allow pieces that bound disks, Möbius strips, punctured disks.
  bool degenerate_pieces = true;
};

inline const std::vector<SurfaceType>& piece_palette(bool degenerate) {
  static const std::vector<SurfaceType> full = {
      {0, 3, 0}, {0, 3, 0}, {0, 3, 0}, {0, 2, 0}, {0, 2, 1}, {0, 1, 2}, {-1, 1, 1},
      {-1, 2, 0}, {0, 4, 0}, {1, 1, 0}, {1, 2, 0}, {-2, 1, 0}, {0, 1, 0}, {0, 1, 1},
      {-1, 1, 0}, {0, 2, 0}, {-1, 3, 0}, {0, 3, 1},
  };
  static const std::vector<SurfaceType> plain = {
      {0, 3, 0}, {0, 3, 0}, {0, 3, 0}, {0, 2, 0}, {0, 2, 1}, {0, 1, 2}, {-1, 1, 1},
      {-1, 2, 0}, {0, 4, 0}, {1, 1, 0}, {1, 2, 0}, {-2, 1, 0}, {0, 3, 1},
  };
  return degenerate ? full : plain;
}

/// Random connected partition: pieces from a fixed palette, a random
/// spanning tree of gluings, then random extra gluings and flips.
inline PartitionedSurface random_partition(Rng& rng, const PartitionOptions& opt = {}) {
  const auto& palette = piece_palette(opt.degenerate_pieces);
  for (;;) {
    const std::size_t n = uniform(rng, opt.min_pieces, opt.max_pieces);
    std::vector<Piece> pieces;
    std::vector<std::vector<std::string>> free(n);
    for (std::size_t i = 0; i < n; ++i) {
      Piece p;
      p.id = "p" + std::to_string(i);
      p.type = palette[uniform(rng, 0, palette.size() - 1)];
      for (int s = 1; s <= p.type.boundary; ++s) {
        p.slots.push_back(std::to_string(s));
        free[i].push_back(std::to_string(s));
      }
      std::shuffle(free[i].begin(), free[i].end(), rng);
      pieces.push_back(std::move(p));
    }
    std::vector<GluingEdge> edges;
    auto glue = [&](std::size_t i, std::size_t j) {
      GluingEdge g{{pieces[i].id, free[i].back()}, {pieces[j].id, free[j].back()},
                   uniform(rng, 0, 2) == 0, std::nullopt};
      free[i].pop_back();
      free[j].pop_back();
      edges.push_back(std::move(g));
    };
    bool ok = true;
    for (std::size_t i = 1; i < n && ok; ++i) {
      std::vector<std::size_t> cand;
      for (std::size_t j = 0; j < i; ++j)
        if (!free[j].empty()) cand.push_back(j);
      if (cand.empty() || free[i].empty()) {
        ok = false;
        break;
      }
      glue(i, cand[uniform(rng, 0, cand.size() - 1)]);
    }
    if (!ok) continue;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        while (!free[i].empty() && !free[j].empty() &&
               static_cast<int>(uniform(rng, 0, 99)) < opt.extra_glue_percent) {
          glue(i, j);
        }
      }
    }
    std::shuffle(edges.begin(), edges.end(), rng);
    return PartitionedSurface(std::move(pieces), std::move(edges));
  }
}

/// Random proper nonempty piece subset.
inline PieceSet random_selection(Rng& rng, const PartitionedSurface& p) {
  const auto& pieces = p.pieces();
  PieceSet out;
  if (pieces.size() < 2) return out;
  while (out.empty() || out.size() == pieces.size()) {
    out.clear();
    for (const auto& piece : pieces)
      if (uniform(rng, 0, 1)) out.insert(piece.id);
  }
  return out;
}

inline bool essential_or_false(const SubsurfaceSelection& n) {
  try {
    return is_essential(n);
  } catch (const ModelError&) {
    return false;
  }
}

}  // namespace geosub::test
