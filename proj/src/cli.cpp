#include "tagmap/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "tagmap/mapping.hpp"

namespace tagmap::cli {

namespace {

constexpr const char* kVersion = "tagmap 1.0.0";

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void print_diagnostics(std::ostream& err, const Diagnostics& diags, const std::string& origin) {
  for (const Diagnostic& d : diags) err << format_diagnostic(d, origin) << "\n";
}

struct Loaded {
  std::shared_ptr<const Mapping> mapping;
  int status = kOk;
};

Loaded load(const Config& cfg, Streams io) {
  Loaded out;
  auto tagset = read_file(cfg.tagset_path);
  if (!tagset) {
    io.err << "error: cannot read tagset file '" << cfg.tagset_path << "'\n";
    out.status = kIoError;
    return out;
  }
  auto rules = read_file(cfg.rules_path);
  if (!rules) {
    io.err << "error: cannot read rule file '" << cfg.rules_path << "'\n";
    out.status = kIoError;
    return out;
  }
  CompileOutcome compiled = compile_mapping(*tagset, *rules);
  print_diagnostics(io.err, compiled.tagset_diagnostics, cfg.tagset_path);
  if (!compiled.mapping) {
    print_diagnostics(io.err, compiled.rules_diagnostics, cfg.rules_path);
    out.status = kCompileError;
    return out;
  }
  out.mapping = compiled.mapping;
  return out;
}

// Rule-file warnings followed by MTree diagnostics.
std::vector<std::string> warning_lines(const Mapping& m, const Config& cfg) {
  std::vector<std::string> lines;
  for (const Diagnostic& d : m.rules().warnings()) lines.push_back(format_diagnostic(d, cfg.rules_path));
  for (const Inconsistency& inc : m.mtree().diagnostics) lines.push_back(render(inc));
  return lines;
}

int strict_status(const Mapping& m, const Config& cfg) {
  return cfg.strict && m.warning_count() > 0 ? kStrictWarnings : kOk;
}

// Data goes to -o when given, else to the output stream.
class Output {
 public:
  Output(const Config& cfg, std::ostream& fallback) : stream_(&fallback) {
    if (cfg.output_path) {
      file_ = std::make_unique<std::ofstream>(*cfg.output_path, std::ios::binary);
      if (*file_) {
        stream_ = file_.get();
      } else {
        failed_ = true;
      }
    }
  }
  bool failed() const { return failed_; }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
  bool failed_ = false;
};

std::string summary_line(const Mapping& m) {
  return "tags: " + std::to_string(m.rules().inventory().size()) +
         ", classes: " + std::to_string(m.graph().universe_size()) +
         ", warnings: " + std::to_string(m.warning_count());
}

int open_output(Output& out, const Config& cfg, Streams io) {
  if (!out.failed()) return kOk;
  io.err << "error: cannot write output file '" << *cfg.output_path << "'\n";
  return kIoError;
}

}  // namespace

int cmd_compile(const Config& cfg, Streams io) {
  Loaded l = load(cfg, io);
  if (!l.mapping) return l.status;
  for (const std::string& line : warning_lines(*l.mapping, cfg)) io.err << line << "\n";
  Output out(cfg, io.out);
  if (int s = open_output(out, cfg, io)) return s;
  out.stream() << summary_line(*l.mapping) << "\n";
  return strict_status(*l.mapping, cfg);
}

int cmd_check(const Config& cfg, Streams io) {
  Loaded l = load(cfg, io);
  if (!l.mapping) return l.status;
  Output out(cfg, io.out);
  if (int s = open_output(out, cfg, io)) return s;
  for (const std::string& line : warning_lines(*l.mapping, cfg)) out.stream() << line << "\n";
  out.stream() << summary_line(*l.mapping) << "\n";
  return strict_status(*l.mapping, cfg);
}

int cmd_explain(const Config& cfg, Streams io) {
  Loaded l = load(cfg, io);
  if (!l.mapping) return l.status;
  print_diagnostics(io.err, l.mapping->rules().warnings(), cfg.rules_path);
  Output out(cfg, io.out);
  if (int s = open_output(out, cfg, io)) return s;
  out.stream() << render_explain(l.mapping->mtree());
  return strict_status(*l.mapping, cfg);
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Returns false when the spec was rejected.
bool answer(const Mapping& m, const std::string& spec, std::ostream& out, std::ostream& err,
            const std::string& origin) {
  auto r = m.query(spec);
  if (!r) {
    print_diagnostics(err, r.diagnostics(), origin);
    return false;
  }
  out << render_query(r.value());
  return true;
}

}  // namespace

int cmd_query(const Config& cfg, Streams io) {
  Loaded l = load(cfg, io);
  if (!l.mapping) return l.status;
  if (int s = strict_status(*l.mapping, cfg)) {
    for (const std::string& line : warning_lines(*l.mapping, cfg)) io.err << line << "\n";
    return s;
  }
  Output out(cfg, io.out);
  if (int s = open_output(out, cfg, io)) return s;
  const Mapping& m = *l.mapping;

  if (!cfg.specs.empty() || cfg.batch_path) {
    bool all_ok = true;
    for (const std::string& spec : cfg.specs) all_ok = answer(m, spec, out.stream(), io.err, "query") && all_ok;
    if (cfg.batch_path) {
      std::ifstream batch(*cfg.batch_path);
      if (!batch) {
        io.err << "error: cannot read batch file '" << *cfg.batch_path << "'\n";
        return kIoError;
      }
      std::string line;
      while (std::getline(batch, line)) {
        std::string spec = trim(line);
        if (spec.empty() || spec.front() == '#') continue;
        all_ok = answer(m, spec, out.stream(), io.err, *cfg.batch_path) && all_ok;
      }
    }
    return all_ok ? kOk : kCompileError;
  }

  // Interactive session.
  std::string line;
  for (;;) {
    out.stream() << "Query> " << std::flush;
    if (!std::getline(io.in, line)) break;
    std::string spec = trim(line);
    if (spec == "\\q") break;
    if (spec.empty()) continue;
    answer(m, spec, out.stream(), io.err, "query");
    out.stream() << std::flush;
  }
  out.stream() << "\n";
  return kOk;
}

int cmd_retag(const Config& cfg, Streams io) {
  if (!cfg.corpus_path) {
    io.err << "error: retag requires --corpus <file> ('-' reads standard input)\n";
    return kIoError;
  }
  Loaded l = load(cfg, io);
  if (!l.mapping) return l.status;
  if (int s = strict_status(*l.mapping, cfg)) {
    for (const std::string& line : warning_lines(*l.mapping, cfg)) io.err << line << "\n";
    return s;
  }
  std::ifstream file;
  std::istream* in = &io.in;
  if (*cfg.corpus_path != "-") {
    file.open(*cfg.corpus_path, std::ios::binary);
    if (!file) {
      io.err << "error: cannot read corpus file '" << *cfg.corpus_path << "'\n";
      return kIoError;
    }
    in = &file;
  }
  Output out(cfg, io.out);
  if (int s = open_output(out, cfg, io)) return s;
  Diagnostics diags;
  RetagSummary summary = retag_stream(*in, out.stream(), l.mapping->rules(), cfg.format, &diags);
  print_diagnostics(io.err, diags, *cfg.corpus_path == "-" ? "<stdin>" : *cfg.corpus_path);
  if (summary.holes() > 0) {
    io.err << "error: " << summary.holes() << " token(s) carry tags without a coverage rule\n";
    return kHoles;
  }
  return kOk;
}

int run(int argc, const char* const* argv, Streams io) {
  CLI::App app{"Maps physical part-of-speech tagsets to a typed standard tagset"};
  app.require_subcommand(0, 1);
  bool show_version = false;
  app.add_flag("--version", show_version, "Print the version banner");

  Config cfg;
  std::string format = "slash";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tagset", cfg.tagset_path, "Tagset definition file")->required();
    sub->add_option("--rules", cfg.rules_path, "Mapping rule file")->required();
    sub->add_flag("--strict", cfg.strict, "Treat consistency warnings as failures (exit 2)");
    sub->add_option("-o,--output", cfg.output_path, "Write data output to this file");
  };
  CLI::App* compile = app.add_subcommand("compile", "Compile tagset and rules and report a summary");
  CLI::App* check = app.add_subcommand("check", "Compile and list every consistency warning");
  CLI::App* query = app.add_subcommand("query", "Translate specifications into physical-tag queries");
  CLI::App* retag = app.add_subcommand("retag", "Annotate a tagged corpus with standard readings");
  CLI::App* explain = app.add_subcommand("explain", "Print the MTree and its diagnostics");
  for (CLI::App* sub : {compile, check, query, retag, explain}) add_common(sub);
  query->add_option("--batch", cfg.batch_path, "Read specifications one per line from a file");
  // Specs are taken from the leftover arguments: CLI11 would otherwise read a
  // bracketed argument such as `[a, b]` as an inline list.
  query->allow_extras();
  query->footer("Specifications given after the options are resolved in order; without any, an interactive "
                "session starts.");
  retag->add_option("--corpus", cfg.corpus_path, "Corpus file ('-' for standard input)");
  retag->add_option("--format", format, "Corpus format")->check(CLI::IsMember({"slash", "tsv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, io.out, io.err);
    return code == 0 ? kOk : kCompileError;
  }

  if (show_version) {
    io.out << kVersion << "\n";
    return kOk;
  }
  cfg.format = format == "tsv" ? CorpusFormat::tsv : CorpusFormat::slash;
  if (query->parsed()) {
    cfg.specs = query->remaining();
    for (const std::string& s : cfg.specs) {
      if (s.size() > 1 && s.front() == '-') {
        io.err << "error: unknown option '" << s << "'\n";
        return kCompileError;
      }
    }
  }
  if (compile->parsed()) return cmd_compile(cfg, io);
  if (check->parsed()) return cmd_check(cfg, io);
  if (query->parsed()) return cmd_query(cfg, io);
  if (retag->parsed()) return cmd_retag(cfg, io);
  if (explain->parsed()) return cmd_explain(cfg, io);
  io.err << app.help();
  return kCompileError;
}

}  // namespace tagmap::cli
