#pragma once

#include <optional>

#include "linfty/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace linfty {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
        line(line_) {}
};

/// Plain-text document describing spaces, multibracket tables, an
/// optional representation, operator, r-matrix and morphism. Exact
/// rationals as "p" or "p/q"; monomials are canonicalized at parse time
/// (sorted, Koszul sign folded into the coefficient).
///
///   linfty-doc 1
///   caps arity=4 weight=6
///   shift 2
///   space g
///     e 0
///   end
///   brackets g
///     2: h e -> 2 e
///   end
///   space V ... end
///   representation g V
///     1: e | u -> 1 w
///   end
///   operator
///     1: u -> 1 e
///   end
///   rmatrix g
///     h e -> 1
///   end
///   morphism g h2
///     1: e -> 1 u
///   end
struct AlgebraDocument {
  struct SpaceDecl {
    std::string name;
    std::vector<std::pair<std::string, int>> basis;
  };
  struct TableLine {
    int arity;
    std::vector<std::string> mono;  // canonical order
    std::string slot;               // representation input symbol, else empty
    std::string out;
    Rat coeff;
  };
  struct RMatrixLine {
    std::vector<std::string> mono;
    Rat coeff;
  };

  int version = 1;
  int arity_cap = 4;
  int weight_cap = 6;
  std::optional<int> shift;
  std::vector<SpaceDecl> spaces;
  std::map<std::string, std::vector<TableLine>> brackets;  // by space name
  std::optional<std::pair<std::string, std::string>> rep_spaces;
  std::vector<TableLine> representation;
  std::vector<TableLine> op;  // operator T
  std::optional<std::string> rmatrix_space;
  std::vector<RMatrixLine> rmatrix;
  std::optional<std::pair<std::string, std::string>> morphism_spaces;
  std::vector<TableLine> morphism;

  const SpaceDecl* find_space(const std::string& name) const;
};

AlgebraDocument parse_document(const std::string& text);
std::string serialize_document(const AlgebraDocument& doc);

}  // namespace linfty
