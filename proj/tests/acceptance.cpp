// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "coset_oracle.hpp"
#include "geosub/cli.hpp"
#include "geosub/commensurability.hpp"
#include "geosub/curve_complex.hpp"
#include "geosub/lattice.hpp"
#include "geosub/lattice_checks.hpp"
#include "geosub/twist_lattice.hpp"
#include "support.hpp"

using namespace geosub;
using geosub::test::Rng;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "failed: " << what << "; ";
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

// Essential random subsurfaces with at most 8 pieces, ambient not M_{-2}.
std::vector<SubsurfaceSelection> essential_corpus(std::size_t want) {
  Rng rng(20261014);
  std::vector<SubsurfaceSelection> out;
  while (out.size() < want) {
    const auto p = test::random_partition(rng);
    if (p.pieces().size() < 2) continue;
    if (ambient_type(p) == SurfaceType{-2, 0, 0}) continue;
    SubsurfaceSelection n{p, test::random_selection(rng, p)};
    if (test::essential_or_false(n)) out.push_back(std::move(n));
  }
  return out;
}

EdgeId edge(const PartitionedSurface& p, const std::string& label) {
  for (EdgeId e = 0; e < p.edges().size(); ++e)
    if (p.edges()[e].label == label) return e;
  throw std::runtime_error("no edge " + label);
}

Simplex simplex(const PartitionedSurface& p, std::initializer_list<const char*> labels) {
  std::vector<EdgeId> es;
  for (const char* l : labels) es.push_back(edge(p, l));
  return make_simplex(p, es);
}

bool has_pair(const NcsReport& r, const Simplex& a, const Simplex& b) {
  for (const auto& v : r.violations)
    if ((v.first == a && v.second == b) || (v.first == b && v.second == a)) return true;
  return false;
}

std::string run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return std::to_string(code) + "\n" + out.str();
}

void criterion1(Outcome& o) {
  const auto start = Clock::now();
  const auto corpus = essential_corpus(120);
  int positive = 0;
  for (const auto& n : corpus) {
    const int rank = kernel_description(n).rank;
    const int oracle = kernel_rank_oracle(n);
    o.require(rank == oracle, "kernel rank " + std::to_string(rank) + " vs oracle " +
                                  std::to_string(oracle));
    if (rank > 0) ++positive;
  }
  const double t = seconds_since(start);
  o.require(t < 10.0, "runtime");
  o.detail << "instances=" << corpus.size() << " nonzero_kernel=" << positive << " seconds=" << t;
}

void criterion2(Outcome& o) {
  const auto corpus = essential_corpus(120);
  int generic = 0, va = 0, nonva = 0;
  for (const auto& n : corpus) {
    if (!is_generic_subsurface(n)) continue;
    ++generic;
    const auto verdict = virtually_abelian_verdict(n);
    bool basic_ok = true, twist_ok = true;
    int basic_rank = -1, twist_rank = -1;
    try {
      basic_rank = basic_circles(n).rank;
    } catch (const ModelError&) {
      basic_ok = false;
    }
    try {
      twist_rank = twist_lattice_rank(n);
    } catch (const ModelError&) {
      twist_ok = false;
    }
    o.require(verdict.virtually_abelian == basic_ok && basic_ok == twist_ok,
              "VA / basic circles / twist lattice disagree");
    if (verdict.virtually_abelian) {
      ++va;
      o.require(basic_rank == twist_rank, "basic circle rank vs twist rank");
    } else {
      ++nonva;
      o.require(verdict.offending && !is_va_component_type(verdict.offending->type),
                "non-VA instance without an offending component");
    }
  }
  o.require(va > 0 && nonva > 0, "corpus lacks VA or non-VA instances");
  o.detail << "generic=" << generic << " va=" << va << " non_va=" << nonva;
}

void criterion3(Outcome& o) {
  const auto f = test::load_data("klein_hole.surf");
  const IsotopyIndex iso(f.surface);
  int generic = 0;
  for (const auto& c : iso.classes()) {
    bool g = false;
    for (const auto& m : c.members) g = g || is_generic_circle(f.surface, m);
    if (g) ++generic;
  }
  const auto m = mcg_profile(ambient_type(f.surface));
  o.require(ambient_type(f.surface) == SurfaceType{-2, 1, 0}, "ambient type");
  o.require(generic == 2, "generic classes " + std::to_string(generic));
  o.require(m.abelian_rank == 2, "abelian rank");
  o.require(m.abelian_index == 2, "abelian index");
  o.detail << "generic_classes=" << generic << " abelian_rank=" << m.abelian_rank.value_or(-1)
           << " abelian_index=" << m.abelian_index.value_or(-1);
}

// Generic selections drawn from one random ambient.
struct PairInstance {
  PartitionedSurface ambient;
  std::vector<PieceSet> selections;
};

std::vector<PairInstance> commensurability_corpus(std::size_t want) {
  Rng rng(4042);
  std::vector<PairInstance> out;
  while (out.size() < want) {
    test::PartitionOptions opt;
    opt.min_pieces = 3;
    opt.max_pieces = 7;
    const auto p = test::random_partition(rng, opt);
    if (ambient_type(p) == SurfaceType{-2, 0, 0}) continue;
    PairInstance inst{p, {}};
    for (int k = 0; k < 12 && inst.selections.size() < 4; ++k) {
      const auto s = test::random_selection(rng, p);
      const SubsurfaceSelection n{p, s};
      if (test::essential_or_false(n) && is_generic_subsurface(n)) inst.selections.push_back(s);
    }
    if (inst.selections.size() >= 2) out.push_back(std::move(inst));
  }
  return out;
}

// N0 + C and N1 + C where the single piece C is not adjacent to N0 or N1.
std::vector<std::pair<SubsurfaceSelection, SubsurfaceSelection>> common_component_instances(
    std::size_t want) {
  Rng rng(777);
  std::vector<std::pair<SubsurfaceSelection, SubsurfaceSelection>> out;
  for (int iter = 0; iter < 20000 && out.size() < want; ++iter) {
    test::PartitionOptions opt;
    opt.min_pieces = 4;
    opt.degenerate_pieces = false;
    const auto p = test::random_partition(rng, opt);
    if (ambient_type(p) == SurfaceType{-2, 0, 0}) continue;
    const auto& c = p.pieces()[test::uniform(rng, 0, p.pieces().size() - 1)];
    if (c.type == SurfaceType{0, 2, 0}) continue;
    PieceSet near{c.id};
    for (const auto& e : p.edges()) {
      if (e.a.piece == c.id) near.insert(e.b.piece);
      if (e.b.piece == c.id) near.insert(e.a.piece);
    }
    auto pick = [&] {
      PieceSet s;
      for (const auto& piece : p.pieces())
        if (!near.contains(piece.id) && test::uniform(rng, 0, 1)) s.insert(piece.id);
      s.insert(c.id);
      return s;
    };
    const SubsurfaceSelection n0{p, pick()}, n1{p, pick()};
    if (n0.selected == n1.selected) continue;
    if (n0.selected.size() + 1 > p.pieces().size()) continue;
    if (!test::essential_or_false(n0) || !test::essential_or_false(n1)) continue;
    if (!is_generic_subsurface(n0) || !is_generic_subsurface(n1)) continue;
    out.emplace_back(n0, n1);
  }
  return out;
}

void criterion4(Outcome& o) {
  const auto start = Clock::now();
  const auto corpus = commensurability_corpus(50);
  std::size_t pairs = 0, positives = 0, compared = 0;
  for (const auto& inst : corpus) {
    for (std::size_t i = 0; i < inst.selections.size(); ++i) {
      const SubsurfaceSelection ni{inst.ambient, inst.selections[i]};
      o.require(commensurable(ni, ni).commensurable, "reflexivity");
      for (std::size_t j = i + 1; j < inst.selections.size(); ++j) {
        const SubsurfaceSelection nj{inst.ambient, inst.selections[j]};
        const auto a = commensurable(ni, nj, {false});
        const auto b = commensurable(nj, ni, {false});
        ++pairs;
        o.require(a.commensurable == b.commensurable, "symmetry");
        if (a.commensurable) ++positives;
        // a Klein component without partner never reaches the geometric test
        if (a.obstruction == std::string(obstruction::KleinUnmatched)) continue;
        ++compared;
        o.require(geometric_criterion(a.reduced).has_value() == !a.commensurable,
                  "basic circle path vs geometric path");
      }
    }
  }
  const auto common = common_component_instances(20);
  std::size_t stripped_instances = 0;
  for (const auto& [n0, n1] : common) {
    std::vector<ComponentMatch> stripped;
    const auto r = strip_common(n0, n1, &stripped);
    const auto whole = commensurable(n0, n1);
    const auto after = commensurable({r.ambient, r.n0}, {r.ambient, r.n1});
    o.require(!stripped.empty(), "constructed instance has no common component");
    o.require(whole.commensurable == after.commensurable, "verdict changed by pre-stripping");
    ++stripped_instances;
  }
  o.require(stripped_instances >= 20, "fewer than 20 common-component instances");
  const double t = seconds_since(start);
  o.require(t < 30.0, "runtime");
  o.detail << "instances=" << corpus.size() << " pairs=" << pairs << " commensurable=" << positives
           << " path_compared=" << compared << " common_instances=" << stripped_instances
           << " seconds=" << t;
}

void criterion5(Outcome& o) {
  const auto f = test::load_data("rn05.surf");
  const auto v = commensurable({f.surface, f.selections.at("S0")}, {f.surface, f.selections.at("S1")});
  o.require(v.commensurable, "example verdict");
  o.require(!v.klein_matches.empty(), "klein matches empty");

  std::size_t pairs = 0;
  std::vector<PartitionedSurface> ambients;
  for (const SurfaceType t : {SurfaceType{3, 1, 0}, SurfaceType{2, 2, 0}, SurfaceType{-4, 1, 0},
                              SurfaceType{0, 6, 0}, SurfaceType{1, 3, 1}, SurfaceType{-3, 2, 1}}) {
    ambients.push_back(build_ps_partition(t));
  }
  Rng rng(5);
  for (int iter = 0; iter < 300; ++iter) {
    test::PartitionOptions opt;
    opt.min_pieces = 3;
    const auto p = test::random_partition(rng, opt);
    if (ambient_type(p).boundary > 0) ambients.push_back(p);
  }
  auto pantalon = [](const SurfaceType& t) {
    return t == SurfaceType{0, 3, 0} || t == SurfaceType{0, 2, 1} || t == SurfaceType{0, 1, 2};
  };
  for (const auto& p : ambients) {
    for (const auto& a : p.pieces()) {
      for (const auto& b : p.pieces()) {
        if (a.id >= b.id || !pantalon(a.type) || !pantalon(b.type)) continue;
        const SubsurfaceSelection n0{p, {a.id}}, n1{p, {b.id}};
        if (!test::essential_or_false(n0) || !test::essential_or_false(n1)) continue;
        if (!is_generic_subsurface(n0) || !is_generic_subsurface(n1)) continue;
        if (!isotopic_components(n0, n1).empty()) continue;
        const auto w = commensurable(n0, n1);
        o.require(!w.commensurable && w.obstruction.has_value(), "bounded pantalon pair");
        ++pairs;
      }
    }
  }
  o.require(pairs >= 20, "too few pantalon pairs");
  o.detail << "example=" << (v.commensurable ? "true" : "false")
           << " klein_matches=" << v.klein_matches.size() << " pantalon_pairs=" << pairs;
}

void criterion6(Outcome& o) {
  const auto start = Clock::now();
  const auto g2 = test::load_data("genus2.surf").surface;
  const auto rg = ncs_check(g2, 3);
  o.require(rg.violations.empty(), "genus 2 violations");
  const auto rn05 = test::load_data("rn05.surf").surface;
  const auto rr = ncs_check(rn05, 3);
  o.require(rr.violations.empty(), "example surface violations");
  const auto all = ncs_check(rn05, 3, true);
  o.require(has_pair(all, simplex(rn05, {"c1", "c2", "a1"}), simplex(rn05, {"c1", "c2", "a1", "a2"})),
            "known pair missing");
  const double t = seconds_since(start);
  o.require(t < 60.0, "runtime");
  o.detail << "genus2_simplices=" << rg.simplices << " genus2_pairs=" << rg.pairs
           << " example_reduced=" << rr.simplices << " example_all=" << all.simplices
           << " example_all_violations=" << all.violations.size() << " seconds=" << t;
}

void criterion7(Outcome& o) {
  const auto rn05 = test::load_data("rn05.surf").surface;
  const auto all = enumerate_simplices(rn05, 8, false);
  for (const auto& s : all) {
    const auto image = phi(rn05, s);
    o.require(phi(rn05, image) == image, "idempotence");
    if (is_reduced(rn05, s).reduced) o.require(image == s, "reduced simplex moved");
    o.require(!image.empty() && is_reduced(rn05, image).reduced, "image not a reduced simplex");
    bool valid = true;
    try {
      valid = make_simplex(rn05, image) == image;
    } catch (const ModelError&) {
      valid = false;
    }
    o.require(valid, "image not a simplex");
    // faces map into the image of the simplex
    for (std::size_t drop = 0; drop < s.size() && s.size() > 1; ++drop) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
      const auto fi = phi(rn05, face);
      o.require(std::includes(image.begin(), image.end(), fi.begin(), fi.end()), "not simplicial");
    }
  }
  const auto m4 = test::load_data("m4.surf").surface;
  bool excluded = false;
  try {
    phi(m4, simplex(m4, {"a1"}));
  } catch (const ModelError& e) {
    excluded = e.code() == ErrorCode::AmbientExcluded;
  }
  o.require(excluded, "M_-4 not rejected");
  o.detail << "simplices=" << all.size() << " m4_rejected=" << (excluded ? "true" : "false");
}

test::IntRows to_rows(const Matrix& m) {
  test::IntRows out(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_si();
  return out;
}

void criterion8(Outcome& o) {
  Rng rng(8);
  const LatticeCheckConfig cfg{4, 10};
  int failures[4] = {0, 0, 0, 0};
  for (int i = 0; i < 200; ++i) {
    failures[0] += !check_homomorphic_image(rng, cfg);
    failures[1] += !check_intersection(rng, cfg);
    failures[2] += !check_product_index(rng, cfg);
    failures[3] += !check_centralized_sum(rng, cfg);
  }
  for (int k = 0; k < 4; ++k) o.require(failures[k] == 0, "lattice fact " + std::to_string(k + 1));
  const auto ex = semprod_converse_example();
  o.require(ex.sums_equal_full && ex.intersection_trivial && !ex.h_commensurable, "converse example");
  int finite = 0;
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t n = 1 + rng() % 3;
    const std::size_t k = 1 + rng() % (n + 1);
    const Matrix g = random_matrix(rng, k, n, 4);
    const auto idx = subgroup_index(Lattice::from_rows(n, g));
    const auto brute = test::brute_force_index(to_rows(g), n);
    o.require(idx.has_value() == brute.has_value() && (!idx || idx->get_si() == *brute),
              "coset count");
    if (idx) ++finite;
  }
  o.detail << "instances=200x4 converse=ok coset_checks=300 finite=" << finite;
}

void criterion9(Outcome& o) {
  Rng rng(9);
  for (int iter = 0; iter < 200; ++iter) {
    const auto p = test::random_partition(rng);
    SurfaceFile f{"r" + std::to_string(iter), p, {}};
    if (p.pieces().size() > 1) f.selections["s"] = test::random_selection(rng, p);
    const auto back = parse_surface(serialize(f));
    o.require(canonicalize(back.surface) == canonicalize(p) && back.selections == f.selections,
              "round trip");
  }
  const std::vector<std::vector<std::string>> commands = {
      {"classify", test::data_path("klein_hole.surf")},
      {"kernel", test::data_path("twopants.surf"), "--select", "BOTH"},
      {"commensurable", test::data_path("rn05.surf"), "--select", "S0", "--select", "S1"},
      {"complex", "ncs", test::data_path("rn05.surf"), "--include-nonreduced", "--emit-graph"},
      {"--seed", "42", "oracle", "random", "--count", "50"},
  };
  for (const auto& cmd : commands) o.require(run_cli(cmd) == run_cli(cmd), "unstable report");
  o.detail << "round_trips=200 stable_reports=" << commands.size();
}

}  // namespace

int main() {
  const std::vector<std::function<void(Outcome&)>> criteria = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i](o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << o.detail.str()
              << std::endl;
  }
  return all ? 0 : 1;
}
