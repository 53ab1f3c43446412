#include "geosub/twist_lattice.hpp"

#include <map>

#include "geosub/error.hpp"

namespace geosub {

namespace {

// Generators of the free abelian finite-index subgroup of each listed type.
int component_rank(const SurfaceType& t) {
  switch (classify_piece(t).tag) {
    case PieceTag::PantalonI:
    case PieceTag::SkirtI:
    case PieceTag::Annulus:
      return 1;
    case PieceTag::PantalonII:
    case PieceTag::SkirtII:
    case PieceTag::KleinBottleOneHole:
      return 2;
    case PieceTag::PantalonIII:
      return 3;
    default:
      throw ModelError(ErrorCode::NotVirtuallyAbelian, "component " + to_string(t));
  }
}

}  // namespace

int twist_lattice_rank(const SubsurfaceSelection& n) {
  if (!is_essential(n) || !is_generic_subsurface(n)) {
    throw ModelError(ErrorCode::NotGeneric, "subsurface is not generic");
  }
  if (!is_virtually_abelian(n)) {
    throw ModelError(ErrorCode::NotVirtuallyAbelian, "subsurface is not virtually abelian");
  }
  const auto comps = components(n);
  // Column layout: per component a block of component_rank generators; the
  // first boundary twists of a non-annular component occupy the first
  // columns of its block, one per boundary edge.
  std::map<EdgeId, std::size_t> boundary_column;
  std::size_t gens = 0;
  for (const auto& c : comps) {
    const int r = component_rank(c.type);
    if (c.type != SurfaceType{0, 2, 0}) {
      std::size_t k = 0;
      for (auto e : c.boundary) {
        if (k < static_cast<std::size_t>(r)) boundary_column[e] = gens + k;
        ++k;
      }
    }
    gens += static_cast<std::size_t>(r);
  }
  if (gens == 0) return 0;
  std::vector<std::vector<int>> rels;
  const auto kernel = kernel_description(n);
  for (const auto& [b, b2] : kernel.exterior_cylinder_pairs) {
    std::vector<int> r(gens, 0);
    r[boundary_column.at(b.edge)] += 1;
    r[boundary_column.at(b2.edge)] -= 1;
    rels.push_back(std::move(r));
  }
  for (const auto& a : kernel.nongeneric_boundary) {
    std::vector<int> r(gens, 0);
    r[boundary_column.at(a.edge)] = 1;
    rels.push_back(std::move(r));
  }
  if (rels.empty()) return static_cast<int>(gens);
  Matrix m(rels.size(), gens);
  for (std::size_t i = 0; i < rels.size(); ++i)
    for (std::size_t j = 0; j < gens; ++j) m(i, j) = rels[i][j];
  return static_cast<int>(gens - rank(m));
}

Matrix kernel_relation_matrix(const SubsurfaceSelection& n) {
  if (ambient_type(n.ambient) == SurfaceType{-2, 0, 0}) {
    throw ModelError(ErrorCode::AmbientExcluded, "ambient Klein bottle");
  }
  if (!is_essential(n)) throw ModelError(ErrorCode::NotEssential, "subsurface is not essential");
  const IsotopyIndex iso(n.ambient);
  std::vector<CircleRef> twists;
  for (const auto& c : components(n)) {
    if (c.type == SurfaceType{0, 2, 0}) {
      twists.push_back(meridian(c));
    } else {
      for (auto e : c.boundary) twists.push_back(CircleRef::of_edge(e));
    }
  }
  Matrix m(twists.size(), iso.class_count());
  for (std::size_t i = 0; i < twists.size(); ++i) {
    if (is_generic_circle(n.ambient, twists[i])) m(i, iso.class_of(twists[i])) = 1;
  }
  return m;
}

int kernel_rank_oracle(const SubsurfaceSelection& n) {
  const Matrix m = kernel_relation_matrix(n);
  if (m.rows() == 0) return 0;
  return static_cast<int>(m.rows() - rank(m));
}

}  // namespace geosub
