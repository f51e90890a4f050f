#include "tagmap/diagnostic.hpp"

#include <algorithm>

namespace tagmap {

bool has_errors(const Diagnostics& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::string format_diagnostic(const Diagnostic& diag, const std::string& origin) {
  std::string out;
  if (!origin.empty()) out += origin + ":";
  if (diag.span.begin.line != 0) {
    out += std::to_string(diag.span.begin.line) + ":" + std::to_string(diag.span.begin.column) + ":";
  }
  if (!out.empty()) out += " ";
  out += diag.severity == Severity::error ? "error: " : "warning: ";
  out += diag.message;
  return out;
}

}  // namespace tagmap
