#include "geosub/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "geosub/commensurability.hpp"
#include "geosub/curve_complex.hpp"
#include "geosub/error.hpp"
#include "geosub/lattice_checks.hpp"
#include "geosub/report.hpp"
#include "geosub/subsurface.hpp"
#include "geosub/twist_lattice.hpp"

namespace geosub {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

template <class Range, class F>
std::string join(const Range& r, F name) {
  std::string out;
  for (const auto& x : r) {
    if (!out.empty()) out += ",";
    out += name(x);
  }
  return out;
}

std::string join_set(const PieceSet& s) {
  return join(s, [](const PieceId& id) { return id; });
}

std::string opt_string(const std::optional<std::int64_t>& v) {
  return v ? std::to_string(*v) : "unknown";
}

std::string index_string(const std::optional<Integer>& v) {
  return v ? v->get_str() : "infinite";
}

std::string names(const PartitionedSurface& p, const std::vector<CircleRef>& cs) {
  return join(cs, [&](const CircleRef& c) { return circle_name(p, c); });
}

std::string class_names(const PartitionedSurface& p, const std::vector<IsotopyClass>& cs) {
  return join(cs, [&](const IsotopyClass& c) { return circle_name(p, c.representative); });
}

std::string pair_names(const PartitionedSurface& p,
                       const std::vector<std::pair<CircleRef, CircleRef>>& v) {
  return join(v, [&](const auto& pr) {
    return circle_name(p, pr.first) + "|" + circle_name(p, pr.second);
  });
}

std::string component_list(const std::vector<Component>& cs) {
  return join(cs, [](const Component& c) { return "{" + join_set(c.pieces) + "}"; });
}

struct Globals {
  std::string format = "machine";
  std::uint64_t seed = 1;
  bool timings = false;
};

struct Query {
  std::string file;
  std::vector<std::string> selects;
  int max_dim = 3;
  std::string simplex;
  bool include_nonreduced = false;
  bool emit_graph = false;
  std::vector<std::string> matrices;
  std::size_t count = 200;
};

SubsurfaceSelection selection(const SurfaceFile& f, const std::string& arg) {
  return {f.surface, resolve_selection(f, arg)};
}

void classify_cmd(const SurfaceFile& f, Report& r) {
  const auto& p = f.surface;
  const SurfaceType t = ambient_type(p);
  r.section("ambient")
      .add("name", f.name)
      .add("type", to_string(t))
      .add("orientable", t.orientable())
      .add("euler", euler_characteristic(t))
      .add("pieces", p.pieces().size())
      .add("edges", p.edges().size())
      .add("ps_decomposition", ps_decomposition_exists(t))
      .add("admits_generic_circle", admits_generic_circle(t));
  const McgProfile m = mcg_profile(t);
  r.section("mcg")
      .add("trivial", m.trivial)
      .add("finite_order", opt_string(m.finite_order))
      .add("virtually_abelian", m.virtually_abelian ? (*m.virtually_abelian ? "true" : "false")
                                                    : "unknown")
      .add("abelian_rank", m.abelian_rank ? std::to_string(*m.abelian_rank) : "unknown")
      .add("abelian_index", m.abelian_index ? std::to_string(*m.abelian_index) : "unknown")
      .add("name", m.name.value_or(""));
  for (const auto& piece : p.pieces()) {
    r.section("piece:" + piece.id)
        .add("type", to_string(piece.type))
        .add("class", to_string(classify_piece(piece.type)));
  }
}

void check_cmd(const SurfaceFile& f, const Query& q, Report& r) {
  const auto n = selection(f, q.selects.at(0));
  const bool essential = is_essential(n);
  auto& s = r.section("check");
  s.add("selection", join_set(n.selected)).add("essential", essential);
  s.add("generic", essential ? (is_generic_subsurface(n) ? "true" : "false") : "not-essential");
  std::string injective;
  try {
    injective = is_injective(n) ? "true" : "false";
  } catch (const ModelError& e) {
    injective = "excluded:" + std::string(to_string(e.code()));
  }
  s.add("injective", injective);
}

void kernel_cmd(const SurfaceFile& f, const Query& q, Report& r) {
  const auto n = selection(f, q.selects.at(0));
  const auto k = kernel_description(n);
  r.section("kernel")
      .add("selection", join_set(n.selected))
      .add("rank", k.rank)
      .add("oracle_rank", kernel_rank_oracle(n))
      .add("injective", k.rank == 0)
      .add("nongeneric_boundary", names(n.ambient, k.nongeneric_boundary))
      .add("nongeneric_meridians", names(n.ambient, k.nongeneric_meridians))
      .add("exterior_cylinder_pairs", pair_names(n.ambient, k.exterior_cylinder_pairs));
}

void va_cmd(const SurfaceFile& f, const Query& q, Report& r) {
  const auto n = selection(f, q.selects.at(0));
  const auto v = virtually_abelian_verdict(n);
  auto& s = r.section("va");
  s.add("selection", join_set(n.selected))
      .add("virtually_abelian", v.virtually_abelian)
      .add("components", component_list(components(n)));
  if (v.offending) {
    s.add("obstruction", obstruction::NonVaComponent)
        .add("offending_pieces", join_set(v.offending->pieces))
        .add("offending_type", to_string(v.offending->type));
  }
}

void basic_circles_cmd(const SurfaceFile& f, const Query& q, Report& r) {
  const auto n = selection(f, q.selects.at(0));
  const auto b = basic_circles(n);
  r.section("basic_circles")
      .add("selection", join_set(n.selected))
      .add("rank", b.rank)
      .add("twist_lattice_rank", twist_lattice_rank(n))
      .add("circles", class_names(b.ambient, b.circles))
      .add("refined_klein", join(b.refined_klein, [](const PieceId& id) { return id; }))
      .add("exterior_cylinder_alternatives",
           pair_names(b.ambient, b.exterior_cylinder_alternatives));
}

void commensurable_cmd(const SurfaceFile& f, const Query& q, Report& r) {
  if (q.selects.size() != 2) {
    throw CLI::ValidationError("--select", "commensurable needs exactly two selections");
  }
  const auto n0 = selection(f, q.selects[0]);
  const auto n1 = selection(f, q.selects[1]);
  const auto v = commensurable(n0, n1);
  auto& s = r.section("commensurable");
  s.add("first", join_set(n0.selected))
      .add("second", join_set(n1.selected))
      .add("commensurable", v.commensurable)
      .add("obstruction", v.obstruction.value_or(""))
      .add("stripped_common", v.stripped_common.size())
      .add("klein_matches", v.klein_matches.size())
      .add("reduced_first", join_set(v.reduced.n0))
      .add("reduced_second", join_set(v.reduced.n1));
  for (std::size_t i = 0; i < v.klein_matches.size(); ++i) {
    const auto& m = v.klein_matches[i];
    r.section("klein_match:" + std::to_string(i))
        .add("side", m.side)
        .add("mode", to_string(m.mode))
        .add("klein", join_set(m.klein))
        .add("partner", join_set(m.partner));
  }
  if (v.certificate) {
    const auto& c = *v.certificate;
    r.section("certificate")
        .add("rank", c.basic_circles_0.rank)
        .add("circles_first", class_names(c.basic_circles_0.ambient, c.basic_circles_0.circles))
        .add("circles_second", class_names(c.basic_circles_1.ambient, c.basic_circles_1.circles));
  }
}

void commensurator_cmd(const SurfaceFile& f, const Query& q, Report& r) {
  const auto n = selection(f, q.selects.at(0));
  const auto c = commensurator_case(n);
  const auto d = stab_star_descriptor(n);
  r.section("commensurator")
      .add("selection", join_set(n.selected))
      .add("kind", to_string(c.kind))
      .add("direct_product",
           c.direct_product ? (*c.direct_product ? "true" : "false") : "not-applicable")
      .add("special_components",
           join(d.special_components, [](const PieceSet& s) { return "{" + join_set(s) + "}"; }))
      .add("curve_set", class_names(d.ambient, d.curve_set));
}

void complex_enumerate_cmd(const SurfaceFile& f, const Query& q, Report& r) {
  const auto& p = f.surface;
  const auto vertices = eligible_vertices(p);
  const auto simplices = enumerate_simplices(p, q.max_dim, !q.include_nonreduced);
  r.section("complex")
      .add("vertices", vertices.size())
      .add("vertex_names", class_names(p, vertices))
      .add("max_dim", q.max_dim)
      .add("simplices", simplices.size());
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    r.section("simplex:" + std::to_string(i))
        .add("vertices", simplex_name(p, simplices[i]))
        .add("dim", static_cast<int>(simplices[i].size()) - 1)
        .add("reduced", is_reduced(p, simplices[i]).reduced);
  }
}

void complex_phi_cmd(const SurfaceFile& f, const Query& q, Report& r) {
  const auto& p = f.surface;
  const Simplex s = make_simplex(p, resolve_edges(p, q.simplex));
  const Simplex image = phi(p, s);
  r.section("phi")
      .add("simplex", simplex_name(p, s))
      .add("reduced", is_reduced(p, s).reduced)
      .add("image", simplex_name(p, image))
      .add("image_reduced", is_reduced(p, image).reduced)
      .add("fixed", image == s);
}

void complex_ncs_cmd(const SurfaceFile& f, const Query& q, const Globals& g, Report& r,
                     std::string& trailer) {
  const auto& p = f.surface;
  const auto rep = ncs_check(p, q.max_dim, q.include_nonreduced);
  auto& s = r.section("ncs");
  s.add("vertices", rep.vertices)
      .add("max_dim", q.max_dim)
      .add("include_nonreduced", q.include_nonreduced)
      .add("simplices", rep.simplices)
      .add("pairs", rep.pairs)
      .add("violations", rep.violations.size())
      .add("violating_pairs", join(rep.violations, [&](const NcsPair& v) {
             return simplex_name(p, v.first) + "~" + simplex_name(p, v.second);
           }));
  if (g.timings) {
    std::ostringstream os;
    os << rep.seconds;
    s.add("seconds", os.str());
  }
  if (q.emit_graph) trailer = ncs_graph(p, rep);
}

void oracle_snf_cmd(const Query& q, Report& r) {
  const Matrix m = parse_matrix(q.matrices.at(0));
  const SmithForm s = smith_normal_form(m);
  r.section("snf")
      .add("input", format_matrix(m))
      .add("diagonal", join(s.diagonal, [](const Integer& d) { return d.get_str(); }))
      .add("rank", s.diagonal.size())
      .add("u", format_matrix(s.u))
      .add("v", format_matrix(s.v))
      .add("verified", s.u * m * s.v == s.d);
}

void oracle_index_cmd(const Query& q, Report& r) {
  const Matrix h = parse_matrix(q.matrices.at(0));
  const Lattice lh = Lattice::from_rows(h.cols(), h);
  auto& s = r.section("index").add("subgroup", format_matrix(h));
  if (q.matrices.size() > 1) {
    const Matrix g = parse_matrix(q.matrices[1]);
    s.add("group", format_matrix(g))
        .add("index", index_string(relative_index(Lattice::from_rows(g.cols(), g), lh)));
  } else {
    s.add("group", "Z^" + std::to_string(h.cols())).add("index", index_string(subgroup_index(lh)));
  }
}

void oracle_comm_cmd(const Query& q, Report& r) {
  if (q.matrices.size() != 2) {
    throw CLI::ValidationError("matrices", "comm needs two generator matrices");
  }
  const Matrix a = parse_matrix(q.matrices[0]);
  const Matrix b = parse_matrix(q.matrices[1]);
  const Lattice la = Lattice::from_rows(a.cols(), a);
  const Lattice lb = Lattice::from_rows(b.cols(), b);
  const Lattice cap = intersect(la, lb);
  const bool comm = lattice_commensurable(la, lb);
  auto& s = r.section("comm");
  s.add("commensurable", comm)
      .add("intersection", format_matrix(lattice_basis(cap)))
      .add("intersection_rank", lattice_rank(cap));
  if (comm) {
    s.add("index_first", index_string(relative_index(la, cap)))
        .add("index_second", index_string(relative_index(lb, cap)));
  }
}

void oracle_random_cmd(const Query& q, const Globals& g, Report& r) {
  Rng rng(g.seed);
  const std::pair<const char*, std::function<bool(Rng&)>> checks[] = {
      {"homomorphic_image", [](Rng& x) { return check_homomorphic_image(x); }},
      {"intersection", [](Rng& x) { return check_intersection(x); }},
      {"product_index", [](Rng& x) { return check_product_index(x); }},
      {"centralized_sum", [](Rng& x) { return check_centralized_sum(x); }},
  };
  r.section("random").add("seed", std::to_string(g.seed)).add("count", q.count);
  for (const auto& [name, check] : checks) {
    std::size_t ok = 0;
    for (std::size_t i = 0; i < q.count; ++i) ok += check(rng) ? 1 : 0;
    r.section(name).add("passed", ok).add("failed", q.count - ok);
  }
  const auto ex = semprod_converse_example();
  r.section("converse_example")
      .add("sums_equal_full", ex.sums_equal_full)
      .add("intersection_trivial", ex.intersection_trivial)
      .add("h_commensurable", ex.h_commensurable);
}

}  // namespace

PieceSet resolve_selection(const SurfaceFile& f, const std::string& arg) {
  if (auto it = f.selections.find(arg); it != f.selections.end()) return it->second;
  PieceSet out;
  for (const auto& id : split(arg, ',')) {
    if (!f.surface.has_piece(id)) {
      throw ModelError(ErrorCode::UnknownPiece, "no selection or piece named " + id);
    }
    out.insert(id);
  }
  return out;
}

std::vector<EdgeId> resolve_edges(const PartitionedSurface& p, const std::string& arg) {
  std::vector<EdgeId> out;
  for (const auto& tok : split(arg, ',')) {
    if (tok[0] == '#') {
      std::size_t e = 0;
      try {
        e = std::stoul(tok.substr(1));
      } catch (const std::exception&) {
        throw ModelError(ErrorCode::NotAnEdge, tok);
      }
      if (e >= p.edges().size()) throw ModelError(ErrorCode::NotAnEdge, tok);
      out.push_back(e);
      continue;
    }
    const auto& edges = p.edges();
    auto it = std::find_if(edges.begin(), edges.end(),
                           [&](const GluingEdge& g) { return g.label == tok; });
    if (it == edges.end()) throw ModelError(ErrorCode::NotAnEdge, "no edge labelled " + tok);
    out.push_back(static_cast<EdgeId>(it - edges.begin()));
  }
  return out;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric subgroups of mapping class groups", "geosub"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  Query q;
  app.add_option("--format", g.format, "Report layout")
      ->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--seed", g.seed, "Seed for randomized suites");
  app.add_flag("--timings", g.timings, "Include wall-clock timings");

  auto with_file = [&](CLI::App* sub) {
    sub->add_option("file", q.file, "Surface file")->required();
    return sub;
  };
  auto with_select = [&](CLI::App* sub) {
    with_file(sub)->add_option("--select", q.selects, "Named selection or piece ids")->required();
    return sub;
  };
  auto* classify = with_file(app.add_subcommand("classify", "Ambient type and pieces"));
  auto* check = with_select(app.add_subcommand("check", "Essential, generic, injective"));
  auto* kernel = with_select(app.add_subcommand("kernel", "Kernel of the inclusion map"));
  auto* va = with_select(app.add_subcommand("va", "Virtually abelian test"));
  auto* basic = with_select(app.add_subcommand("basic-circles", "Basic circles"));
  auto* comm = with_select(app.add_subcommand("commensurable", "Commensurability of two selections"));
  auto* commensurator = with_select(app.add_subcommand("commensurator", "Commensurator case"));

  auto* complex = app.add_subcommand("complex", "Complex of curves");
  complex->require_subcommand(1);
  auto* enumerate = with_file(complex->add_subcommand("enumerate", "Representable simplices"));
  enumerate->add_option("--max-dim", q.max_dim, "Largest simplex dimension");
  enumerate->add_flag("--include-nonreduced", q.include_nonreduced);
  auto* phi_cmd = with_file(complex->add_subcommand("phi", "Retraction onto reduced simplices"));
  phi_cmd->add_option("--simplex", q.simplex, "Edge labels or #index, comma separated")->required();
  auto* ncs = with_file(complex->add_subcommand("ncs", "Pairwise stabilizer sweep"));
  ncs->add_option("--max-dim", q.max_dim, "Largest simplex dimension");
  ncs->add_flag("--include-nonreduced", q.include_nonreduced);
  ncs->add_flag("--emit-graph", q.emit_graph, "Append DOT text of the relation");

  auto* oracle = app.add_subcommand("oracle", "Lattice computations");
  oracle->require_subcommand(1);
  auto* snf = oracle->add_subcommand("snf", "Smith normal form");
  snf->add_option("matrix", q.matrices, "Matrix as \"a b;c d\"")->required()->expected(1);
  auto* index = oracle->add_subcommand("index", "Subgroup index");
  index->add_option("matrices", q.matrices, "Subgroup generators [group generators]")
      ->required()
      ->expected(1, 2);
  auto* ocomm = oracle->add_subcommand("comm", "Lattice commensurability");
  ocomm->add_option("matrices", q.matrices, "Two generator matrices")->required()->expected(2);
  auto* random = oracle->add_subcommand("random", "Randomized index facts");
  random->add_option("--count", q.count, "Instances per fact");

  Report r;
  std::string trailer;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    auto file = [&] { return load_surface(q.file); };
    if (*classify) {
      classify_cmd(file(), r);
    } else if (*check) {
      check_cmd(file(), q, r);
    } else if (*kernel) {
      kernel_cmd(file(), q, r);
    } else if (*va) {
      va_cmd(file(), q, r);
    } else if (*basic) {
      basic_circles_cmd(file(), q, r);
    } else if (*comm) {
      commensurable_cmd(file(), q, r);
    } else if (*commensurator) {
      commensurator_cmd(file(), q, r);
    } else if (*enumerate) {
      complex_enumerate_cmd(file(), q, r);
    } else if (*phi_cmd) {
      complex_phi_cmd(file(), q, r);
    } else if (*ncs) {
      complex_ncs_cmd(file(), q, g, r, trailer);
    } else if (*snf) {
      oracle_snf_cmd(q, r);
    } else if (*index) {
      oracle_index_cmd(q, r);
    } else if (*ocomm) {
      oracle_comm_cmd(q, r);
    } else if (*random) {
      oracle_random_cmd(q, g, r);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
  out << (g.format == "human" ? r.human() : r.machine());
  if (!trailer.empty()) out << "\n" << trailer;
  return 0;
}

}  // namespace geosub
