#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tagmap/retagger.hpp"

namespace tagmap::cli {

enum ExitStatus : int {
  kOk = 0,
  kCompileError = 1,  // parse or type errors (also ill-typed batch queries)
  kStrictWarnings = 2,
  kIoError = 3,
  kHoles = 4,         // retag met tags without a coverage rule
};

struct Config {
  std::string command;
  std::string tagset_path;
  std::string rules_path;
  std::optional<std::string> corpus_path;
  CorpusFormat format = CorpusFormat::slash;
  bool strict = false;
  std::optional<std::string> batch_path;
  std::optional<std::string> output_path;
  std::vector<std::string> specs;  // queries given on the command line
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

int cmd_compile(const Config& cfg, Streams io);
int cmd_check(const Config& cfg, Streams io);
int cmd_query(const Config& cfg, Streams io);
int cmd_retag(const Config& cfg, Streams io);
int cmd_explain(const Config& cfg, Streams io);

/// Parses arguments and dispatches. `argv[0]` is the program name.
int run(int argc, const char* const* argv, Streams io);

}  // namespace tagmap::cli
