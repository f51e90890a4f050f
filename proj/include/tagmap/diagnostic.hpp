#pragma once

#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace tagmap {

struct SourcePos {
  std::size_t line = 0;  // 1-based; 0 means "no position"
  std::size_t column = 0;
  std::size_t offset = 0;

  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

struct SourceSpan {
  SourcePos begin;
  SourcePos end;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { warning, error };

struct Diagnostic {
  Severity severity = Severity::error;
  SourceSpan span;
  std::string message;

  static Diagnostic error(SourceSpan span, std::string message) {
    return {Severity::error, span, std::move(message)};
  }
  static Diagnostic warning(SourceSpan span, std::string message) {
    return {Severity::warning, span, std::move(message)};
  }
};

using Diagnostics = std::vector<Diagnostic>;

bool has_errors(const Diagnostics& diags);

// "<origin>:line:col: error: message"; origin may be empty.
std::string format_diagnostic(const Diagnostic& diag, const std::string& origin = {});

/// Either a value or an error (by default a nonempty diagnostic list),
/// never both.
template <class T, class E = Diagnostics>
class Result {
 public:
  Result(T value) : state_(std::in_place_index<0>, std::move(value)) {}
  Result(E error) : state_(std::in_place_index<1>, std::move(error)) {}
  Result(Diagnostic diag)
    requires std::is_same_v<E, Diagnostics>
      : state_(std::in_place_index<1>, Diagnostics{std::move(diag)}) {}

  bool ok() const { return state_.index() == 0; }
  explicit operator bool() const { return ok(); }

  const T& value() const& { return std::get<0>(state_); }
  T& value() & { return std::get<0>(state_); }
  T&& value() && { return std::get<0>(std::move(state_)); }
  const T* operator->() const { return &value(); }
  const T& operator*() const { return value(); }

  const E& error() const { return std::get<1>(state_); }
  const E& diagnostics() const { return error(); }

 private:
  std::variant<T, E> state_;
};

}  // namespace tagmap
