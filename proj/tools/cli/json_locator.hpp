#pragma once

// Maps JSON pointers of an already-validated document to source lines, so
// schema and invariant diagnostics can name the offending line.

#include <map>
#include <string>
#include <string_view>

namespace stromcheck::cli {

class JsonLocator {
 public:
  explicit JsonLocator(std::string_view text);

  // Line (1-based) where the value at `pointer` starts; falls back to the
  // nearest recorded ancestor, then to line 1.
  int line(const std::string& pointer) const;

 private:
  std::map<std::string, int> lines_;
};

}  // namespace stromcheck::cli
