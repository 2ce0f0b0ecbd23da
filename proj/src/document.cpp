#include "linfty/document.hpp"

#include <algorithm>
#include <sstream>

#include "linfty/koszul.hpp"

namespace linfty {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

struct Cursor {
  std::vector<std::string> lines;
  int pos = 0;

  bool done() const { return pos >= static_cast<int>(lines.size()); }
  int lineno() const { return pos + 1; }
  /// Next non-empty, non-comment line's tokens; empty when exhausted.
  std::vector<std::string> next() {
    while (!done()) {
      std::string raw = lines[pos];
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw = raw.substr(0, hash);
      auto toks = tokens(raw);
      if (!toks.empty()) return toks;
      ++pos;
    }
    return {};
  }
  void advance() { ++pos; }
};

int parse_int(const std::string& s, int line, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (...) {
    throw ParseError(line, "malformed " + what + " '" + s + "'");
  }
}

Rat parse_coeff(const std::string& s, int line) {
  try {
    return parse_rational(s);
  } catch (const std::exception& e) {
    throw ParseError(line, e.what());
  }
}

/// Canonicalize a monomial of symbols over one space declaration: sort by
/// declaration order, fold the Koszul sign into the coefficient; zero
/// coefficient (odd repetition) keeps the line but marks it dropped.
bool canonicalize(const AlgebraDocument::SpaceDecl& sp,
                  std::vector<std::string>& mono, Rat& coeff, int line,
                  int degree_shift) {
  Monomial idx(mono.size());
  std::vector<int> deg(mono.size());
  for (std::size_t i = 0; i < mono.size(); ++i) {
    int k = -1;
    for (std::size_t j = 0; j < sp.basis.size(); ++j)
      if (sp.basis[j].first == mono[i]) k = static_cast<int>(j);
    if (k < 0)
      throw ParseError(line, "unknown symbol '" + mono[i] + "' in space " +
                                 sp.name);
    idx[i] = k;
    deg[i] = sp.basis[k].second - degree_shift;
  }
  auto norm = normalize_monomial(idx, deg);
  if (norm.sign == 0) return false;
  coeff *= norm.sign;
  for (std::size_t i = 0; i < mono.size(); ++i)
    mono[i] = sp.basis[norm.mono[i]].first;
  return true;
}

}  // namespace

const AlgebraDocument::SpaceDecl* AlgebraDocument::find_space(
    const std::string& name) const {
  for (const auto& s : spaces)
    if (s.name == name) return &s;
  return nullptr;
}

AlgebraDocument parse_document(const std::string& text) {
  AlgebraDocument doc;
  Cursor cur;
  {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) cur.lines.push_back(line);
  }

  auto header = cur.next();
  if (header.size() != 2 || header[0] != "linfty-doc")
    throw ParseError(cur.lineno(), "missing 'linfty-doc <version>' header");
  doc.version = parse_int(header[1], cur.lineno(), "version");
  if (doc.version != 1)
    throw ParseError(cur.lineno(), "unsupported format version");
  cur.advance();

  auto parse_value_out = [&](const std::vector<std::string>& toks,
                             std::size_t from, int line,
                             std::vector<std::pair<Rat, std::string>>& out) {
    // coeff sym [+ coeff sym ...]
    std::size_t i = from;
    while (i < toks.size()) {
      if (toks[i] == "+") {
        ++i;
        continue;
      }
      if (i + 1 >= toks.size())
        throw ParseError(line, "expected 'coefficient symbol' pair");
      out.emplace_back(parse_coeff(toks[i], line), toks[i + 1]);
      i += 2;
    }
    if (out.empty()) throw ParseError(line, "empty value");
  };

  while (!cur.done()) {
    auto toks = cur.next();
    if (toks.empty()) break;
    const int line = cur.lineno();
    const std::string& kw = toks[0];

    if (kw == "caps") {
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto& t = toks[i];
        if (t.rfind("arity=", 0) == 0)
          doc.arity_cap = parse_int(t.substr(6), line, "arity cap");
        else if (t.rfind("weight=", 0) == 0)
          doc.weight_cap = parse_int(t.substr(7), line, "weight cap");
        else
          throw ParseError(line, "unknown caps field '" + t + "'");
      }
      if (doc.arity_cap < 1 || doc.arity_cap > 12)
        throw ParseError(line, "arity cap must be between 1 and 12");
      if (doc.weight_cap < 2)
        throw ParseError(line, "weight cap must be at least 2");
      cur.advance();
    } else if (kw == "shift") {
      if (toks.size() != 2) throw ParseError(line, "shift needs one integer");
      doc.shift = parse_int(toks[1], line, "shift");
      cur.advance();
    } else if (kw == "space") {
      if (toks.size() != 2) throw ParseError(line, "space needs a name");
      AlgebraDocument::SpaceDecl sp;
      sp.name = toks[1];
      if (doc.find_space(sp.name))
        throw ParseError(line, "duplicate space '" + sp.name + "'");
      cur.advance();
      for (;;) {
        auto t = cur.next();
        if (t.empty()) throw ParseError(cur.lineno(), "space without 'end'");
        if (t[0] == "end") {
          cur.advance();
          break;
        }
        if (t.size() != 2)
          throw ParseError(cur.lineno(), "expected 'symbol degree'");
        for (const auto& [s, d] : sp.basis)
          if (s == t[0])
            throw ParseError(cur.lineno(),
                             "duplicate basis symbol '" + t[0] + "'");
        sp.basis.emplace_back(t[0],
                              parse_int(t[1], cur.lineno(), "degree"));
        cur.advance();
      }
      if (sp.basis.empty()) throw ParseError(line, "empty space");
      doc.spaces.push_back(std::move(sp));
    } else if (kw == "brackets") {
      if (toks.size() != 2)
        throw ParseError(line, "brackets needs a space name");
      const auto* sp = doc.find_space(toks[1]);
      if (!sp) throw ParseError(line, "unknown space '" + toks[1] + "'");
      auto& table = doc.brackets[toks[1]];
      cur.advance();
      for (;;) {
        auto t = cur.next();
        if (t.empty())
          throw ParseError(cur.lineno(), "brackets without 'end'");
        if (t[0] == "end") {
          cur.advance();
          break;
        }
        // k: sym ... -> coeff sym [+ coeff sym]
        const int ln = cur.lineno();
        if (t[0].empty() || t[0].back() != ':')
          throw ParseError(ln, "expected 'arity:' prefix");
        AlgebraDocument::TableLine tl;
        tl.arity = parse_int(t[0].substr(0, t[0].size() - 1), ln, "arity");
        std::size_t i = 1;
        while (i < t.size() && t[i] != "->") tl.mono.push_back(t[i++]);
        if (i >= t.size()) throw ParseError(ln, "missing '->'");
        if (static_cast<int>(tl.mono.size()) != tl.arity)
          throw ParseError(ln, "arity prefix does not match monomial length");
        std::vector<std::pair<Rat, std::string>> vals;
        parse_value_out(t, i + 1, ln, vals);
        // shifted degrees: the table lives on space[1]
        for (auto& [c, sym] : vals) {
          AlgebraDocument::TableLine one = tl;
          one.out = sym;
          one.coeff = c;
          if (!canonicalize(*sp, one.mono, one.coeff, ln, 1)) continue;
          if (one.coeff != 0) table.push_back(std::move(one));
        }
        cur.advance();
      }
    } else if (kw == "representation") {
      if (toks.size() != 3)
        throw ParseError(line, "representation needs two space names");
      const auto* gs = doc.find_space(toks[1]);
      const auto* vs = doc.find_space(toks[2]);
      if (!gs || !vs) throw ParseError(line, "unknown space");
      doc.rep_spaces = {toks[1], toks[2]};
      cur.advance();
      for (;;) {
        auto t = cur.next();
        if (t.empty())
          throw ParseError(cur.lineno(), "representation without 'end'");
        if (t[0] == "end") {
          cur.advance();
          break;
        }
        const int ln = cur.lineno();
        if (t[0].empty() || t[0].back() != ':')
          throw ParseError(ln, "expected 'arity:' prefix");
        AlgebraDocument::TableLine tl;
        tl.arity = parse_int(t[0].substr(0, t[0].size() - 1), ln, "arity");
        std::size_t i = 1;
        while (i < t.size() && t[i] != "|") tl.mono.push_back(t[i++]);
        if (i + 1 >= t.size()) throw ParseError(ln, "missing '| input'");
        tl.slot = t[i + 1];
        if (vs->basis.end() ==
            std::find_if(vs->basis.begin(), vs->basis.end(),
                         [&](const auto& b) { return b.first == tl.slot; }))
          throw ParseError(ln, "unknown symbol '" + tl.slot + "' in space " +
                                   vs->name);
        i += 2;
        if (i >= t.size() || t[i] != "->") throw ParseError(ln, "missing '->'");
        if (static_cast<int>(tl.mono.size()) != tl.arity)
          throw ParseError(ln, "arity prefix does not match monomial length");
        std::vector<std::pair<Rat, std::string>> vals;
        parse_value_out(t, i + 1, ln, vals);
        for (auto& [c, sym] : vals) {
          if (vs->basis.end() ==
              std::find_if(vs->basis.begin(), vs->basis.end(),
                           [&](const auto& b) { return b.first == sym; }))
            throw ParseError(ln, "unknown symbol '" + sym + "' in space " +
                                     vs->name);
          AlgebraDocument::TableLine one = tl;
          one.out = sym;
          one.coeff = c;
          if (!canonicalize(*gs, one.mono, one.coeff, ln, 1)) continue;
          if (one.coeff != 0) doc.representation.push_back(std::move(one));
        }
        cur.advance();
      }
    } else if (kw == "operator") {
      if (!doc.rep_spaces)
        throw ParseError(line, "operator requires a representation section");
      const auto* gsp = doc.find_space(doc.rep_spaces->first);
      const auto* vsp = doc.find_space(doc.rep_spaces->second);
      cur.advance();
      for (;;) {
        auto t = cur.next();
        if (t.empty()) throw ParseError(cur.lineno(), "operator without 'end'");
        if (t[0] == "end") {
          cur.advance();
          break;
        }
        const int ln = cur.lineno();
        if (t[0].empty() || t[0].back() != ':')
          throw ParseError(ln, "expected 'arity:' prefix");
        AlgebraDocument::TableLine tl;
        tl.arity = parse_int(t[0].substr(0, t[0].size() - 1), ln, "arity");
        std::size_t i = 1;
        while (i < t.size() && t[i] != "->") tl.mono.push_back(t[i++]);
        if (i >= t.size()) throw ParseError(ln, "missing '->'");
        if (static_cast<int>(tl.mono.size()) != tl.arity)
          throw ParseError(ln, "arity prefix does not match monomial length");
        std::vector<std::pair<Rat, std::string>> vals;
        parse_value_out(t, i + 1, ln, vals);
        for (auto& [c, sym] : vals) {
          if (gsp->basis.end() ==
              std::find_if(gsp->basis.begin(), gsp->basis.end(),
                           [&](const auto& b) { return b.first == sym; }))
            throw ParseError(ln, "unknown symbol '" + sym + "' in space " +
                                     gsp->name);
          AlgebraDocument::TableLine one = tl;
          one.out = sym;
          one.coeff = c;
          if (!canonicalize(*vsp, one.mono, one.coeff, ln, 1)) continue;
          if (one.coeff != 0) doc.op.push_back(std::move(one));
        }
        cur.advance();
      }
    } else if (kw == "rmatrix") {
      if (toks.size() != 2) throw ParseError(line, "rmatrix needs a space");
      const auto* rsp = doc.find_space(toks[1]);
      if (!rsp)
        throw ParseError(line, "unknown space '" + toks[1] + "'");
      if (!doc.shift)
        throw ParseError(line, "rmatrix requires a shift declaration");
      doc.rmatrix_space = toks[1];
      cur.advance();
      for (;;) {
        auto t = cur.next();
        if (t.empty()) throw ParseError(cur.lineno(), "rmatrix without 'end'");
        if (t[0] == "end") {
          cur.advance();
          break;
        }
        const int ln = cur.lineno();
        AlgebraDocument::RMatrixLine rl;
        std::size_t i = 0;
        while (i < t.size() && t[i] != "->") rl.mono.push_back(t[i++]);
        if (i + 1 >= t.size()) throw ParseError(ln, "missing '-> coefficient'");
        if (i + 2 != t.size()) throw ParseError(ln, "expected one coefficient");
        rl.coeff = parse_coeff(t[i + 1], ln);
        if (rl.mono.empty()) throw ParseError(ln, "empty monomial");
        if (canonicalize(*rsp, rl.mono, rl.coeff, ln, 1 - *doc.shift) &&
            rl.coeff != 0)
          doc.rmatrix.push_back(std::move(rl));
        cur.advance();
      }
    } else if (kw == "morphism") {
      if (toks.size() != 3)
        throw ParseError(line, "morphism needs source and target spaces");
      const auto* src = doc.find_space(toks[1]);
      const auto* dst = doc.find_space(toks[2]);
      if (!src || !dst) throw ParseError(line, "unknown space");
      doc.morphism_spaces = {toks[1], toks[2]};
      cur.advance();
      for (;;) {
        auto t = cur.next();
        if (t.empty()) throw ParseError(cur.lineno(), "morphism without 'end'");
        if (t[0] == "end") {
          cur.advance();
          break;
        }
        const int ln = cur.lineno();
        if (t[0].empty() || t[0].back() != ':')
          throw ParseError(ln, "expected 'arity:' prefix");
        AlgebraDocument::TableLine tl;
        tl.arity = parse_int(t[0].substr(0, t[0].size() - 1), ln, "arity");
        std::size_t i = 1;
        while (i < t.size() && t[i] != "->") tl.mono.push_back(t[i++]);
        if (i >= t.size()) throw ParseError(ln, "missing '->'");
        if (static_cast<int>(tl.mono.size()) != tl.arity)
          throw ParseError(ln, "arity prefix does not match monomial length");
        std::vector<std::pair<Rat, std::string>> vals;
        parse_value_out(t, i + 1, ln, vals);
        for (auto& [c, sym] : vals) {
          if (dst->basis.end() ==
              std::find_if(dst->basis.begin(), dst->basis.end(),
                           [&](const auto& b) { return b.first == sym; }))
            throw ParseError(ln, "unknown symbol '" + sym + "' in space " +
                                     dst->name);
          AlgebraDocument::TableLine one = tl;
          one.out = sym;
          one.coeff = c;
          if (!canonicalize(*src, one.mono, one.coeff, ln, 1)) continue;
          if (one.coeff != 0) doc.morphism.push_back(std::move(one));
        }
        cur.advance();
      }
    } else {
      throw ParseError(line, "unknown section '" + kw + "'");
    }
  }
  if (doc.spaces.empty()) throw ParseError(1, "document declares no space");
  return doc;
}

namespace {

void write_table(std::ostringstream& os,
                 const std::vector<AlgebraDocument::TableLine>& table) {
  auto sorted = table;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) {
                     if (a.arity != b.arity) return a.arity < b.arity;
                     if (a.mono != b.mono) return a.mono < b.mono;
                     if (a.slot != b.slot) return a.slot < b.slot;
                     return a.out < b.out;
                   });
  for (const auto& tl : sorted) {
    os << "  " << tl.arity << ':';
    for (const auto& s : tl.mono) os << ' ' << s;
    if (!tl.slot.empty()) os << " | " << tl.slot;
    os << " -> " << rat_str(tl.coeff) << ' ' << tl.out << '\n';
  }
}

}  // namespace

std::string serialize_document(const AlgebraDocument& doc) {
  std::ostringstream os;
  os << "linfty-doc " << doc.version << '\n';
  os << "caps arity=" << doc.arity_cap << " weight=" << doc.weight_cap
     << '\n';
  if (doc.shift) os << "shift " << *doc.shift << '\n';
  for (const auto& sp : doc.spaces) {
    os << "space " << sp.name << '\n';
    for (const auto& [s, d] : sp.basis) os << "  " << s << ' ' << d << '\n';
    os << "end\n";
  }
  for (const auto& [name, table] : doc.brackets) {
    os << "brackets " << name << '\n';
    write_table(os, table);
    os << "end\n";
  }
  if (doc.rep_spaces) {
    os << "representation " << doc.rep_spaces->first << ' '
       << doc.rep_spaces->second << '\n';
    write_table(os, doc.representation);
    os << "end\n";
  }
  if (!doc.op.empty()) {
    os << "operator\n";
    write_table(os, doc.op);
    os << "end\n";
  }
  if (doc.rmatrix_space) {
    os << "rmatrix " << *doc.rmatrix_space << '\n';
    auto sorted = doc.rmatrix;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.mono < b.mono; });
    for (const auto& rl : sorted) {
      os << ' ';
      for (const auto& s : rl.mono) os << ' ' << s;
      os << " -> " << rat_str(rl.coeff) << '\n';
    }
    os << "end\n";
  }
  if (doc.morphism_spaces) {
    os << "morphism " << doc.morphism_spaces->first << ' '
       << doc.morphism_spaces->second << '\n';
    write_table(os, doc.morphism);
    os << "end\n";
  }
  return os.str();
}

}  // namespace linfty
