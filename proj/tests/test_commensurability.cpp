#include <doctest.h>

#include "geosub/commensurability.hpp"
#include "geosub/error.hpp"
#include "geosub/surface_file.hpp"
#include "support.hpp"

using namespace geosub;
using geosub::test::Rng;

namespace {

Piece piece(const std::string& id, int g, int r, int s) {
  Piece p{id, {g, r, s}, {}};
  for (int i = 1; i <= r; ++i) p.slots.push_back(std::to_string(i));
  return p;
}

GluingEdge glue(const std::string& a, const std::string& sa, const std::string& b,
                const std::string& sb) {
  return {{a, sa}, {b, sb}, false, std::nullopt};
}

SubsurfaceSelection sel(const SurfaceFile& f, const std::string& name) {
  return {f.surface, f.selections.at(name)};
}

std::set<std::size_t> boundary_class_set(const PartitionedSurface& p, const PieceSet& s) {
  const IsotopyIndex iso(p);
  std::set<std::size_t> out;
  for (const auto& c : components_of_set(p, s))
    for (auto e : c.boundary) out.insert(iso.class_of(CircleRef::of_edge(e)));
  return out;
}

std::set<std::size_t> class_set(const IsotopyIndex& iso, const BasicCircles& b) {
  std::set<std::size_t> out;
  for (const auto& c : b.circles) out.insert(iso.class_of(c.representative));
  return out;
}

}  // namespace

TEST_CASE("isotopic components") {
  const auto tp = test::load_data("twopants.surf").surface;
  CHECK(isotopic_components({tp, {"P1", "P2"}}, {tp, {"P1", "P2"}}).size() == 2);
  CHECK(isotopic_components({tp, {"P1"}}, {tp, {"P1", "A"}}).size() == 1);
  CHECK(isotopic_components({tp, {"P1"}}, {tp, {"A"}}).empty());
  const auto g2 = test::load_data("genus2.surf").surface;
  CHECK_THROWS_AS(isotopic_components({tp, {"P1"}}, {g2, {"P1"}}), ModelError);
}

TEST_CASE("strip common components") {
  const auto f = test::load_data("rn06.surf");
  const auto none = strip_common(sel(f, "U0"), sel(f, "U1"));
  CHECK(none.n0 == f.selections.at("U0"));
  CHECK(none.n1 == f.selections.at("U1"));

  const auto same = strip_common(sel(f, "N0"), sel(f, "N0"));
  CHECK(same.n0.empty());
  CHECK(same.n1.empty());

  // U = Q is common; Q's circle qb is a boundary of U1 only, so U0 gains an
  // annulus there, and symmetrically U1 gains one at qa.
  std::vector<ComponentMatch> stripped;
  const auto r = strip_common(sel(f, "N0"), sel(f, "N1"), &stripped);
  REQUIRE(stripped.size() == 1);
  CHECK(stripped[0].first == PieceSet{"Q"});
  CHECK(r.n0.size() == 2);
  CHECK(r.n1.size() == 2);
  CHECK(r.n0.contains("A"));
  CHECK(r.n1.contains("B"));
  for (const auto& id : r.n0) {
    if (id == "A") continue;
    CHECK(r.ambient.piece(id).type == SurfaceType{0, 2, 0});
    const auto e = r.ambient.edge_at({id, "1"});
    REQUIRE(e);
    CHECK(r.ambient.edges()[*e].label == std::string("qb"));
  }
  CHECK(is_generic_subsurface({r.ambient, r.n0}));
  CHECK(is_generic_subsurface({r.ambient, r.n1}));
}

TEST_CASE("Klein reduction") {
  const auto f = test::load_data("rn05.surf");
  SelectionPair nb{f.surface, {"k2core", "k2rest"}, {"k2core"}};
  const auto a = klein_reduce(nb, 0);
  REQUIRE(a.matches.size() == 1);
  CHECK(a.matches[0].mode == KleinMode::Neighbourhood);

  SelectionPair co{f.surface, {"k2core", "k2rest"}, {"k2rest"}};
  const auto b = klein_reduce(co, 0);
  REQUIRE(b.matches.size() == 1);
  CHECK(b.matches[0].mode == KleinMode::Complement);

  SelectionPair un{f.surface, {"k2core", "k2rest"}, {"L"}};
  const auto c = klein_reduce(un, 0);
  CHECK(c.matches.empty());
  REQUIRE(c.unmatched);
  CHECK(*c.unmatched == PieceSet{"k2core", "k2rest"});
  const auto v = commensurable({f.surface, {"k2core", "k2rest"}}, {f.surface, {"L"}});
  CHECK_FALSE(v.commensurable);
  CHECK(v.obstruction == std::string(obstruction::KleinUnmatched));
}

TEST_CASE("commensurability examples") {
  const auto f = test::load_data("rn05.surf");
  const auto v = commensurable(sel(f, "S0"), sel(f, "S1"));
  CHECK(v.commensurable);
  CHECK_FALSE(v.klein_matches.empty());
  REQUIRE(v.certificate);
  CHECK_FALSE(v.obstruction);
  CHECK(commensurable(sel(f, "S0"), sel(f, "S0")).commensurable);

  const auto g2 = test::load_data("genus2.surf").surface;
  const auto same = commensurable({g2, {"P1"}}, {g2, {"P1"}});
  CHECK(same.commensurable);
  // the complementary pants of a closed surface
  const auto swap = commensurable({g2, {"P1"}}, {g2, {"P2"}});
  CHECK(swap.commensurable);

  const auto tp = test::load_data("twopants.surf").surface;
  const auto nope = commensurable({tp, {"P1"}}, {tp, {"P2"}});
  CHECK_FALSE(nope.commensurable);
  CHECK(nope.obstruction);

  const PartitionedSurface nonva({piece("X", 2, 1, 0), piece("Y", 1, 1, 0)},
                                 {glue("X", "1", "Y", "1")});
  const auto w = commensurable({nonva, {"X"}}, {nonva, {"Y"}});
  CHECK_FALSE(w.commensurable);
  CHECK(w.obstruction == std::string(obstruction::NonVaComponent));

  const auto punct = PartitionedSurface({piece("D", 0, 1, 1), piece("A", 0, 2, 0),
                                         piece("Q", 0, 3, 0), piece("R", 0, 3, 0)},
                                        {glue("D", "1", "A", "1"), glue("A", "2", "Q", "1"),
                                         glue("Q", "2", "R", "1"), glue("Q", "3", "R", "2")});
  CHECK_THROWS_AS(commensurable({punct, {"A"}}, {punct, {"Q"}}), ModelError);
}

TEST_CASE("components meeting in collars") {
  // complementary skirts of a twice-punctured Klein bottle sharing the collar
  const auto k2p = parse_surface(
      "piece p0 genus=-1 boundary=1 punctures=1\npiece p1 genus=0 boundary=2 punctures=0\n"
      "piece p2 genus=-1 boundary=1 punctures=1\nglue p0.1 p1.2 flip\nglue p1.1 p2.1\n");
  const SubsurfaceSelection a{k2p.surface, {"p0", "p1"}}, b{k2p.surface, {"p1", "p2"}};
  CHECK(isotopic_components(a, b).empty());
  CHECK(commensurable(a, b).commensurable);
  CHECK(commensurable(b, a).commensurable);

  // the collar X = p0 + p2 is a pants capped by a disk
  const auto capped = parse_surface(
      "piece p0 genus=0 boundary=3 punctures=0\npiece p1 genus=-1 boundary=1 punctures=1\n"
      "piece p2 genus=0 boundary=1 punctures=0\npiece p3 genus=0 boundary=3 punctures=0\n"
      "piece p4 genus=0 boundary=2 punctures=1\nglue p0.1 p3.2\nglue p0.2 p2.1\n"
      "glue p0.3 p1.1\nglue p3.1 p4.2\nglue p3.3 p4.1 flip\n");
  const SubsurfaceSelection pants{capped.surface, {"p0", "p2", "p3"}};
  const SubsurfaceSelection rest{capped.surface, {"p0", "p1", "p2", "p4"}};
  CHECK(commensurable(pants, rest).commensurable);
  CHECK(commensurable(rest, pants).commensurable);

  // Klein bottle with one hole and its own boundary collar
  const auto kc = parse_surface(
      "piece p0 genus=1 boundary=2 punctures=0\npiece p1 genus=-1 boundary=1 punctures=0\n"
      "piece p2 genus=0 boundary=3 punctures=0\npiece p3 genus=0 boundary=2 punctures=0\n"
      "piece p4 genus=-2 boundary=1 punctures=0\nglue p0.1 p2.3 flip\nglue p0.2 p1.1\n"
      "glue p2.2 p3.2 flip\nglue p3.1 p4.1\n");
  const SubsurfaceSelection collar{kc.surface, {"p3"}}, klein{kc.surface, {"p3", "p4"}};
  const auto v = commensurable(collar, klein);
  CHECK_FALSE(v.commensurable);
  CHECK(commensurable(klein, collar).commensurable == v.commensurable);
  CHECK(commensurable(klein, klein).commensurable);
}

TEST_CASE("pantalon pairs in bounded ambients are never commensurable") {
  int pairs = 0;
  for (const SurfaceType t : {SurfaceType{3, 1, 0}, SurfaceType{2, 2, 0}, SurfaceType{-4, 1, 0},
                              SurfaceType{0, 6, 0}, SurfaceType{1, 3, 1}}) {
    const auto p = build_ps_partition(t);
    for (const auto& a : p.pieces()) {
      for (const auto& b : p.pieces()) {
        if (a.id >= b.id) continue;
        const SubsurfaceSelection n0{p, {a.id}}, n1{p, {b.id}};
        if (!test::essential_or_false(n0) || !test::essential_or_false(n1)) continue;
        if (!is_generic_subsurface(n0) || !is_generic_subsurface(n1)) continue;
        if (!isotopic_components(n0, n1).empty()) continue;
        const auto v = commensurable(n0, n1);
        CHECK_FALSE(v.commensurable);
        CHECK(v.obstruction);
        ++pairs;
      }
    }
  }
  CHECK(pairs >= 5);
}

TEST_CASE("commensurability properties on random corpora") {
  Rng rng(61);
  int instances = 0, positives = 0;
  for (int iter = 0; iter < 400 && instances < 120; ++iter) {
    test::PartitionOptions opt;
    opt.min_pieces = 3;
    opt.max_pieces = 7;
    const auto p = test::random_partition(rng, opt);
    if (ambient_type(p) == SurfaceType{-2, 0, 0}) continue;
    std::vector<PieceSet> generic;
    for (int k = 0; k < 12 && generic.size() < 4; ++k) {
      const auto s = test::random_selection(rng, p);
      const SubsurfaceSelection n{p, s};
      if (test::essential_or_false(n) && is_generic_subsurface(n)) generic.push_back(s);
    }
    if (generic.size() < 2) continue;
    for (std::size_t i = 0; i < generic.size(); ++i) {
      const SubsurfaceSelection ni{p, generic[i]};
      CHECK(commensurable(ni, ni).commensurable);
      for (std::size_t j = i + 1; j < generic.size(); ++j) {
        const SubsurfaceSelection nj{p, generic[j]};
        const auto a = commensurable(ni, nj);
        const auto b = commensurable(nj, ni);
        ++instances;
        CHECK(a.commensurable == b.commensurable);
        CHECK(a.certificate.has_value() == a.commensurable);
        CHECK(a.obstruction.has_value() == !a.commensurable);
        if (!a.commensurable) continue;
        ++positives;
        const IsotopyIndex iso(a.reduced.ambient);
        CHECK(class_set(iso, a.certificate->basic_circles_0) ==
              class_set(iso, a.certificate->basic_circles_1));
        // boundary classes of each side appear on the other side, when there
        // are no common components and no Klein components
        auto has_klein = [&](const PieceSet& s) {
          for (const auto& c : components_of_set(p, s))
            if (c.type == SurfaceType{-2, 1, 0}) return true;
          return false;
        };
        if (isotopic_components(ni, nj).empty() && !has_klein(generic[i]) &&
            !has_klein(generic[j])) {
          CHECK(boundary_class_set(p, generic[i]) == boundary_class_set(p, generic[j]));
        }
        for (std::size_t k = 0; k < generic.size(); ++k) {
          const SubsurfaceSelection nk{p, generic[k]};
          if (commensurable(nj, nk).commensurable) CHECK(commensurable(ni, nk).commensurable);
        }
      }
    }
  }
  CHECK(instances >= 50);
  MESSAGE("random pairs " << instances << ", commensurable " << positives);
}

TEST_CASE("stab star descriptor") {
  const auto g2 = test::load_data("genus2.surf").surface;
  const auto d = stab_star_descriptor({g2, {"P1"}});
  CHECK(d.special_components.empty());
  CHECK(d.curve_set.size() == basic_circles({g2, {"P1"}}).circles.size());

  const PartitionedSurface m({piece("X", 2, 1, 0), piece("Y", 1, 1, 0)}, {glue("X", "1", "Y", "1")});
  const auto dx = stab_star_descriptor({m, {"X"}});
  REQUIRE(dx.special_components.size() == 1);
  CHECK(dx.special_components[0] == PieceSet{"X"});
  CHECK(dx.curve_set.size() == 1);
  const auto empty = stab_star_descriptor({m, {}});
  CHECK(empty.special_components.empty());
  CHECK(empty.curve_set.empty());
}

TEST_CASE("commensurator case") {
  const auto g2 = test::load_data("genus2.surf").surface;
  const auto c = commensurator_case({g2, {"P1"}});
  CHECK(c.kind == CommensuratorKind::StabSemidirectZ2);
  CHECK(c.direct_product == true);

  const auto bounded = build_ps_partition({2, 2, 0});
  for (const auto& piece : bounded.pieces()) {
    const SubsurfaceSelection n{bounded, {piece.id}};
    if (!test::essential_or_false(n) || !is_injective(n)) continue;
    const auto b = commensurator_case(n);
    CHECK(b.kind == CommensuratorKind::StabOnly);
    CHECK_FALSE(b.direct_product);
  }

  const PartitionedSurface m({piece("X", 2, 1, 0), piece("Y", 1, 1, 0)}, {glue("X", "1", "Y", "1")});
  CHECK(commensurator_case({m, {"X"}}).kind == CommensuratorKind::StabOnly);

  const auto tp = test::load_data("twopants.surf").surface;
  try {
    commensurator_case({tp, {"A"}});
    FAIL("annulus accepted");
  } catch (const ModelError& e) {
    CHECK(e.code() == ErrorCode::ForbiddenComponents);
  }
  try {
    commensurator_case({tp, {"P1", "P2"}});
    FAIL("non-injective subsurface accepted");
  } catch (const ModelError& e) {
    CHECK(e.code() == ErrorCode::NotInjective);
  }
}
