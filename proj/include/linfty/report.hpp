#pragma once

#include <optional>
#include <string>
#include <vector>

namespace linfty {

struct CheckItem {
  std::string name;
  bool pass = true;
  std::vector<std::string> details;  // residual lines, bounds used, etc.
};

/// Machine-renderable result of one verification command. Pass reports
/// list every relation class checked; fail reports carry at least one
/// nonzero residual line. Rendering is deterministic: identical inputs
/// produce byte-identical structured output.
struct Report {
  enum class Verdict { Pass, Fail, Error };

  std::string command;
  Verdict verdict = Verdict::Pass;
  int arity_cap = 0;
  int weight_cap = 0;
  std::optional<int> shift;
  std::vector<CheckItem> items;
  std::string error_message;

  void add(CheckItem item);
  bool pass() const { return verdict == Verdict::Pass; }
  int exit_code() const;

  std::string render_text() const;
  std::string render_structured() const;
};

/// Every sign and ordering convention the engine uses, as a fixed text;
/// reports echo a hash of it so a "pass" is tied to the convention sheet
/// in force.
const std::string& convention_sheet();
std::string convention_hash();

}  // namespace linfty
