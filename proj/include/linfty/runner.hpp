#pragma once

#include "linfty/bridge.hpp"
#include "linfty/document.hpp"
#include "linfty/morphism.hpp"
#include "linfty/report.hpp"

namespace linfty {

struct RunOptions {
  std::optional<int> arity_cap;   // command-line overrides
  std::optional<int> weight_cap;
  std::optional<int> shift;
  bool structured = false;
};

/// Builders from a parsed document. Throwing std::invalid_argument here
/// surfaces as an input error (exit code 2).
SpacePtr build_space(const AlgebraDocument& doc, const std::string& name);
LInftyStructure build_structure(const AlgebraDocument& doc,
                                const std::string& space, int cap);
PoissonPoly build_rmatrix(const AlgebraDocument& doc, const PoissonCtxPtr& ctx);

/// Dispatch: command is one of
///   check-linfty  check-morphism  check-rb  check-rmatrix
///   derive-schouten  make-bialgebra  convert-rmatrix-to-rb  check-bridge
/// (the CLI also accepts the two-word spellings).
Report run_command(const std::string& command, const AlgebraDocument& doc,
                   const RunOptions& opt);

}  // namespace linfty
