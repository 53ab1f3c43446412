#include "geosub/surface_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "geosub/error.hpp"

namespace geosub {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& s, std::size_t line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(ErrorCode::SyntaxError, line, "expected an integer, got '" + s + "'");
  }
  return v;
}

SlotRef parse_slot(const std::string& tok, std::size_t line) {
  const auto dot = tok.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == tok.size()) {
    throw ParseError(ErrorCode::SyntaxError, line, "expected <piece>.<slot>, got '" + tok + "'");
  }
  return {tok.substr(0, dot), tok.substr(dot + 1)};
}

}  // namespace

SurfaceFile parse_surface(const std::string& text) {
  SurfaceFile f;
  std::vector<Piece> pieces;
  std::vector<GluingEdge> edges;
  std::map<PieceId, std::size_t> piece_line;
  std::map<SlotRef, std::size_t> glued;
  std::vector<std::pair<std::size_t, std::pair<std::string, std::vector<std::string>>>> selects;

  std::istringstream is(text);
  std::string raw;
  std::size_t lineno = 0;
  bool any_content = false;
  while (std::getline(is, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto tok = split_ws(raw);
    if (tok.empty()) continue;
    any_content = true;
    const std::string& kw = tok[0];
    if (kw == "surface") {
      if (tok.size() != 2) throw ParseError(ErrorCode::SyntaxError, lineno, "surface <name>");
      f.name = tok[1];
    } else if (kw == "piece") {
      if (tok.size() < 5 || tok.size() > 6) {
        throw ParseError(ErrorCode::SyntaxError, lineno,
                         "piece <id> genus=<int> boundary=<int> punctures=<int> [slots=...]");
      }
      Piece p;
      p.id = tok[1];
      bool g = false, b = false, s = false, have_slots = false;
      for (std::size_t i = 2; i < tok.size(); ++i) {
        const auto eq = tok[i].find('=');
        if (eq == std::string::npos) {
          throw ParseError(ErrorCode::SyntaxError, lineno, "expected key=value, got '" + tok[i] + "'");
        }
        const std::string key = tok[i].substr(0, eq), val = tok[i].substr(eq + 1);
        if (key == "genus" && !g) {
          p.type.genus = parse_int(val, lineno);
          g = true;
        } else if (key == "boundary" && !b) {
          p.type.boundary = parse_int(val, lineno);
          b = true;
        } else if (key == "punctures" && !s) {
          p.type.punctures = parse_int(val, lineno);
          s = true;
        } else if (key == "slots" && !have_slots) {
          std::stringstream ss(val);
          std::string label;
          while (std::getline(ss, label, ',')) p.slots.push_back(label);
          have_slots = true;
        } else {
          throw ParseError(ErrorCode::SyntaxError, lineno, "unexpected field '" + key + "'");
        }
      }
      if (!g || !b || !s) throw ParseError(ErrorCode::SyntaxError, lineno, "missing piece field");
      if (p.type.boundary < 0 || p.type.punctures < 0) {
        throw ParseError(ErrorCode::SyntaxError, lineno, "negative boundary or puncture count");
      }
      if (!have_slots) {
        for (int i = 1; i <= p.type.boundary; ++i) p.slots.push_back(std::to_string(i));
      }
      if (static_cast<int>(p.slots.size()) != p.type.boundary) {
        throw ParseError(ErrorCode::SyntaxError, lineno, "slot count differs from boundary");
      }
      if (std::set<std::string>(p.slots.begin(), p.slots.end()).size() != p.slots.size()) {
        throw ParseError(ErrorCode::DuplicateId, lineno, "repeated slot label");
      }
      if (!piece_line.emplace(p.id, pieces.size()).second) {
        throw ParseError(ErrorCode::DuplicateId, lineno, "piece " + p.id);
      }
      pieces.push_back(std::move(p));
    } else if (kw == "glue") {
      if (tok.size() < 3 || tok.size() > 5) {
        throw ParseError(ErrorCode::SyntaxError, lineno, "glue <id>.<slot> <id>.<slot> [flip] [label=x]");
      }
      GluingEdge g{parse_slot(tok[1], lineno), parse_slot(tok[2], lineno), false, std::nullopt};
      for (std::size_t i = 3; i < tok.size(); ++i) {
        if (tok[i] == "flip" && !g.flip) {
          g.flip = true;
        } else if (tok[i].rfind("label=", 0) == 0 && !g.label && tok[i].size() > 6) {
          g.label = tok[i].substr(6);
        } else {
          throw ParseError(ErrorCode::SyntaxError, lineno, "unexpected token '" + tok[i] + "'");
        }
      }
      for (const SlotRef* s : {&g.a, &g.b}) {
        auto it = piece_line.find(s->piece);
        if (it == piece_line.end()) {
          throw ParseError(ErrorCode::DanglingReference, lineno, "unknown piece " + s->piece);
        }
        const auto& slots = pieces[it->second].slots;
        if (std::find(slots.begin(), slots.end(), s->slot) == slots.end()) {
          throw ParseError(ErrorCode::DanglingReference, lineno, "unknown slot " + to_string(*s));
        }
        if (!glued.emplace(*s, lineno).second) {
          throw ParseError(ErrorCode::DoubleGlue, lineno, to_string(*s) + " is already glued");
        }
      }
      if (g.a.piece == g.b.piece) {
        throw ParseError(ErrorCode::InvalidModel, lineno, "piece glued to itself");
      }
      edges.push_back(std::move(g));
    } else if (kw == "select") {
      if (tok.size() < 2) throw ParseError(ErrorCode::SyntaxError, lineno, "select <name> <id>...");
      selects.push_back({lineno, {tok[1], std::vector<std::string>(tok.begin() + 2, tok.end())}});
    } else {
      throw ParseError(ErrorCode::SyntaxError, lineno, "unknown record '" + kw + "'");
    }
  }
  if (!any_content) throw ParseError(ErrorCode::SyntaxError, 0, "empty file");
  if (pieces.empty()) throw ParseError(ErrorCode::SyntaxError, 0, "no pieces");
  for (const auto& [line, sel] : selects) {
    if (f.selections.contains(sel.first)) {
      throw ParseError(ErrorCode::DuplicateId, line, "selection " + sel.first);
    }
    PieceSet set;
    for (const auto& id : sel.second) {
      if (!piece_line.contains(id)) {
        throw ParseError(ErrorCode::DanglingReference, line, "unknown piece " + id);
      }
      set.insert(id);
    }
    f.selections[sel.first] = std::move(set);
  }
  try {
    f.surface = PartitionedSurface(std::move(pieces), std::move(edges));
  } catch (const ModelError& e) {
    throw ParseError(e.code(), 0, e.what());
  }
  return f;
}

SurfaceFile load_surface(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(ErrorCode::SyntaxError, 0, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_surface(ss.str());
}

namespace {

void write_model(std::ostream& os, const PartitionedSurface& canon) {
  for (const auto& p : canon.pieces()) {
    os << "piece " << p.id << " genus=" << p.type.genus << " boundary=" << p.type.boundary
       << " punctures=" << p.type.punctures;
    bool default_slots = true;
    for (std::size_t i = 0; i < p.slots.size(); ++i) {
      if (p.slots[i] != std::to_string(i + 1)) default_slots = false;
    }
    if (!default_slots) {
      os << " slots=";
      for (std::size_t i = 0; i < p.slots.size(); ++i) os << (i ? "," : "") << p.slots[i];
    }
    os << "\n";
  }
  for (const auto& g : canon.edges()) {
    os << "glue " << to_string(g.a) << " " << to_string(g.b);
    if (g.flip) os << " flip";
    if (g.label) os << " label=" << *g.label;
    os << "\n";
  }
}

}  // namespace

std::string serialize(const SurfaceFile& f) {
  std::ostringstream os;
  if (!f.name.empty()) os << "surface " << f.name << "\n";
  write_model(os, canonicalize(f.surface));
  for (const auto& [name, set] : f.selections) {
    os << "select " << name;
    for (const auto& id : set) os << " " << id;
    os << "\n";
  }
  return os.str();
}

std::string serialize(const PartitionedSurface& p) { return serialize(SurfaceFile{"", p, {}}); }

}  // namespace geosub
