#pragma once

#include "ctxcalc/choice_rng.hpp"
#include "ctxcalc/errors.hpp"
#include "ctxcalc/evaluator.hpp"
#include "ctxcalc/streams.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace ctxcalc {

enum class OutputMode { plain, json };

// Interactive state: dimensions, bindings, stream equations and the choice
// generator. A command that throws leaves the session exactly as it was.
//
//   dim <name> : int|str|bool|enum{A,B} [domain lo..hi | domain [t, ...]]
//   let <name> = <expression>
//   stream <name> = <stream expr> [; <name> = <stream expr> ...]
//   show <stream expr> [dim] [count]
//   eval <expression>
//   seed <n>
//   mode plain|json
//   load <file>
//   quit
class Session {
 public:
  explicit Session(std::uint64_t seed = 0, OutputMode mode = OutputMode::plain,
                   std::uint64_t budget = streams::default_budget);

  // Returns false after `quit`. Blank lines and lines starting with `#` do
  // nothing. Throws Error.
  bool run_command(std::string_view line, std::ostream& out);

  const Environment& environment() const noexcept { return state_.env; }
  const streams::EquationSet& equations() const noexcept { return state_.equations; }
  OutputMode mode() const noexcept { return state_.mode; }
  std::uint64_t budget() const noexcept { return state_.budget; }
  void set_budget(std::uint64_t budget) noexcept { state_.budget = budget; }

 private:
  struct State {
    Environment env;
    std::shared_ptr<const streams::StreamGraph> graph;
    streams::EquationSet equations;
    ChoiceRng rng;
    OutputMode mode;
    std::uint64_t budget;
  };

  void dispatch(State& next, std::string_view line, std::ostream& out, bool& keep_going);
  void load(State& next, const std::string& path, std::ostream& out, bool& keep_going);

  State state_;
  // Values depend only on stream ids, which are never reused, so the cache
  // stays valid across definitions.
  std::shared_ptr<streams::Warehouse> warehouse_;
  int load_depth_ = 0;
};

// `error: Name: message (column N)`, or with `line L, ` before the column
// when a line number is known.
std::string render_error(const Error& e, std::optional<std::size_t> line = std::nullopt);

// Runs every line of a script. Returns 0 on success, 1 when a command fails
// (its error is written to err and the rest of the script is skipped).
int run_lines(Session& session, std::istream& in, std::ostream& out, std::ostream& err);
// As run_lines, but returns 2 if the file cannot be read.
int run_script(Session& session, const std::string& path, std::ostream& out, std::ostream& err);

}  // namespace ctxcalc
