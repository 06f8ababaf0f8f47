#include "ctxcalc/session.hpp"

#include "ctxcalc/context_ops.hpp"
#include "ctxcalc/lexer.hpp"
#include "ctxcalc/parser.hpp"

#include <json.hpp>

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace ctxcalc {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::size_t default_show_count = 10;
constexpr int max_load_depth = 16;

Error at_column(const Error& e, std::size_t shift) {
  if (!e.position()) return e;
  return Error(e.code(), e.what(), *e.position() + shift);
}

[[noreturn]] void syntax(const Token& t, const std::string& message) {
  throw Error(ErrorCode::syntax_error, message, t.position);
}

void expect_word(const Token& t, std::string_view what) {
  if (!t.is(TokenKind::identifier)) syntax(t, "expected " + std::string(what));
}

std::uint64_t parse_count(const Token& t, std::string_view what) {
  if (!t.is(TokenKind::integer)) syntax(t, "expected " + std::string(what));
  try {
    std::size_t used = 0;
    const auto v = std::stoull(t.text, &used);
    if (used == t.text.size()) return v;
  } catch (const std::exception&) {
  }
  syntax(t, std::string(what) + " is too large");
}

// Byte offset of the first token after the leading command word, so that
// parsers working on the remaining text can report line columns.
// Commands are ASCII, so the columns before the rest are bytes.
std::size_t rest_offset(const Token& second) { return second.position - 1; }

ordered_json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

ordered_json value_json(const Value& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  return to_string(v);
}

ordered_json stream_json(const streams::StreamValue& v) {
  if (v.is_nil()) return nullptr;
  if (v.is_boolean()) return v.as_boolean();
  return integer_json(v.as_integer());
}

TagType parse_tag_type(std::span<const Token> tokens, std::size_t& pos, const std::string& dim_name) {
  const Token& t = tokens[pos];
  expect_word(t, "a tag type (int, str, bool or enum{...})");
  ++pos;
  if (t.text == "int") return TagType::of(TagKind::integer);
  if (t.text == "str") return TagType::of(TagKind::string);
  if (t.text == "bool") return TagType::of(TagKind::boolean);
  if (t.text != "enum") syntax(t, "unknown tag type '" + t.text + "'");
  if (!tokens[pos].is(TokenKind::lbrace)) syntax(tokens[pos], "expected '{' after enum");
  ++pos;
  std::vector<std::string> labels;
  while (true) {
    expect_word(tokens[pos], "an enum label");
    labels.push_back(tokens[pos++].text);
    if (tokens[pos].is(TokenKind::comma)) {
      ++pos;
      continue;
    }
    if (!tokens[pos].is(TokenKind::rbrace)) syntax(tokens[pos], "expected ',' or '}'");
    ++pos;
    break;
  }
  return TagType::enumeration(dim_name, std::move(labels));
}

RawTag parse_raw_tag(std::span<const Token> tokens, std::size_t& pos) {
  const Token& t = tokens[pos];
  if (t.is(TokenKind::minus) && tokens[pos + 1].is(TokenKind::integer)) {
    pos += 2;
    return RawTag{RawTag::Kind::integer, "-" + tokens[pos - 1].text};
  }
  ++pos;
  switch (t.kind) {
    case TokenKind::integer: return RawTag{RawTag::Kind::integer, t.text};
    case TokenKind::string: return RawTag{RawTag::Kind::string, t.text};
    case TokenKind::identifier: return RawTag{RawTag::Kind::word, t.text};
    default: syntax(t, "expected a tag");
  }
}

std::vector<TagValue> parse_domain(std::span<const Token> tokens, std::size_t& pos, const Dimension& probe) {
  std::vector<TagValue> domain;
  if (tokens[pos].is(TokenKind::lbracket)) {
    ++pos;
    if (tokens[pos].is(TokenKind::rbracket)) {
      ++pos;
      return domain;
    }
    while (true) {
      const std::size_t at = tokens[pos].position;
      try {
        domain.push_back(resolve_tag(probe, parse_raw_tag(tokens, pos)));
      } catch (const Error& e) {
        throw Error(e.code(), e.what(), e.position().value_or(at));
      }
      if (tokens[pos].is(TokenKind::comma)) {
        ++pos;
        continue;
      }
      if (!tokens[pos].is(TokenKind::rbracket)) syntax(tokens[pos], "expected ',' or ']'");
      ++pos;
      return domain;
    }
  }
  const Token& start = tokens[pos];
  const RawTag lo = parse_raw_tag(tokens, pos);
  if (!tokens[pos].is(TokenKind::dot_dot)) syntax(tokens[pos], "expected '..' or a bracketed domain");
  ++pos;
  const RawTag hi = parse_raw_tag(tokens, pos);
  if (lo.kind != RawTag::Kind::integer || hi.kind != RawTag::Kind::integer || probe.kind() != TagKind::integer) {
    throw Error(ErrorCode::ill_formed_domain, "a lo..hi domain needs an int dimension and integer bounds",
                start.position);
  }
  const Integer a(lo.text);
  const Integer b(hi.text);
  if (b < a) throw Error(ErrorCode::ill_formed_domain, "domain " + lo.text + ".." + hi.text + " is empty", start.position);
  if (b - a >= Integer(max_range_result)) {
    throw Error(ErrorCode::range_too_large, "domain " + lo.text + ".." + hi.text + " is too large", start.position);
  }
  for (Integer x = a; x <= b; ++x) domain.push_back(TagValue::integer(x));
  return domain;
}

}  // namespace

Session::Session(std::uint64_t seed, OutputMode mode, std::uint64_t budget)
    : state_{Environment(seed), nullptr, {}, ChoiceRng(seed), mode, budget},
      warehouse_(std::make_shared<streams::Warehouse>()) {
  auto graph = std::make_shared<const streams::StreamGraph>();
  state_.graph = graph;
  state_.equations = streams::EquationSet(graph);
}

bool Session::run_command(std::string_view line, std::ostream& out) {
  State next = state_;
  std::ostringstream buffer;
  bool keep_going = true;
  dispatch(next, line, buffer, keep_going);
  state_ = std::move(next);
  out << buffer.str();
  return keep_going;
}

void Session::dispatch(State& next, std::string_view line, std::ostream& out, bool& keep_going) {
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string_view::npos || line[first] == '#') return;

  // Paths are not tokenized: they may contain characters no parser accepts.
  const std::string_view rest = line.substr(first);
  if (rest.substr(0, 4) == "load" && (rest.size() == 4 || rest[4] == ' ' || rest[4] == '\t')) {
    std::string path(rest.substr(4));
    const auto strip = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!path.empty() && strip(path.back())) path.pop_back();
    while (!path.empty() && strip(path.front())) path.erase(path.begin());
    if (path.size() >= 2 && path.front() == '"' && path.back() == '"') path = path.substr(1, path.size() - 2);
    if (path.empty()) throw Error(ErrorCode::syntax_error, "expected a file name", first + 5);
    load(next, path, out, keep_going);
    return;
  }

  const std::vector<Token> tokens = tokenize(line);
  const Token& command = tokens[0];
  expect_word(command, "a command");
  const std::string& word = command.text;

  auto emit = [&](const ordered_json& record, const std::string& plain) {
    if (next.mode == OutputMode::json) {
      out << record.dump() << '\n';
    } else {
      out << plain << '\n';
    }
  };
  auto end_of_command = [&](std::size_t pos) {
    if (!tokens[pos].is(TokenKind::end)) syntax(tokens[pos], "unexpected trailing input");
  };

  if (word == "quit" || word == "exit") {
    end_of_command(1);
    keep_going = false;
    return;
  }

  if (word == "dim") {
    std::size_t pos = 1;
    expect_word(tokens[pos], "a dimension name");
    const Token& name = tokens[pos++];
    if (!tokens[pos].is(TokenKind::colon)) syntax(tokens[pos], "expected ':' after the dimension name");
    ++pos;
    const TagType type = parse_tag_type(tokens, pos, name.text);
    std::optional<std::vector<TagValue>> domain;
    if (tokens[pos].is_word("domain")) {
      ++pos;
      const Dimension probe(name.text, type, std::nullopt);
      domain = parse_domain(tokens, pos, probe);
    }
    end_of_command(pos);
    try {
      next.env.registry().register_dimension(name.text, type, std::move(domain));
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), e.position().value_or(name.position));
    }
    return;
  }

  if (word == "let") {
    expect_word(tokens[1], "a name");
    const Token& name = tokens[1];
    if (!tokens[2].is(TokenKind::eq)) syntax(tokens[2], "expected '=' after the name");
    const auto rest = std::span<const Token>(tokens).subspan(3);
    if (rest.front().is(TokenKind::end)) syntax(rest.front(), "expected an expression");
    const ParsedExpr parsed = parse_expression(rest, next.env.set_names());
    Value value = evaluate(parsed.ast, next.env, next.rng);
    try {
      next.env.bind(name.text, value);
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), e.position().value_or(name.position));
    }
    ordered_json record{{"kind", std::string(kind_name(kind_of(value)))}, {"name", name.text},
                        {"value", value_json(value)}};
    emit(record, name.text + " = " + to_string(value));
    return;
  }

  if (word == "eval") {
    const auto rest = std::span<const Token>(tokens).subspan(1);
    if (rest.front().is(TokenKind::end)) syntax(rest.front(), "expected an expression");
    const ParsedExpr parsed = parse_expression(rest, next.env.set_names());
    const Value value = evaluate(parsed.ast, next.env, next.rng);
    emit(ordered_json{{"kind", std::string(kind_name(kind_of(value)))}, {"value", value_json(value)}},
         to_string(value));
    return;
  }

  if (word == "stream") {
    if (tokens[1].is(TokenKind::end)) syntax(tokens[1], "expected a stream equation");
    const std::size_t shift = rest_offset(tokens[1]);
    auto graph = std::make_shared<streams::StreamGraph>(*next.graph);
    std::vector<std::pair<std::string, streams::NodeId>> equations;
    try {
      equations = streams::parse_equations(line.substr(shift), *graph);
    } catch (const Error& e) {
      throw at_column(e, shift);
    }
    std::vector<std::pair<std::string, streams::NodeId>> all(next.equations.equations().begin(),
                                                             next.equations.equations().end());
    all.insert(all.end(), equations.begin(), equations.end());
    next.equations = streams::define_streams(graph, all);
    next.graph = graph;
    return;
  }

  if (word == "show") {
    auto graph = std::make_shared<streams::StreamGraph>(*next.graph);
    std::size_t pos = 1;
    if (tokens[pos].is(TokenKind::end)) syntax(tokens[pos], "expected a stream expression");
    const streams::NodeId expr = streams::parse_stream_expr(tokens, pos, *graph);
    std::string dim(streams::default_dimension);
    std::uint64_t count = default_show_count;
    if (tokens[pos].is(TokenKind::identifier)) dim = tokens[pos++].text;
    if (tokens[pos].is(TokenKind::integer)) count = parse_count(tokens[pos++], "a count");
    end_of_command(pos);
    const streams::EquationSet eqs = streams::EquationSet(graph).define(
        {next.equations.equations().begin(), next.equations.equations().end()});
    std::vector<streams::StreamValue> values;
    try {
      values = streams::eval_prefix(expr, dim, count, eqs, warehouse_.get(), next.budget);
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), e.position().value_or(tokens[1].position));
    }
    ordered_json array = ordered_json::array();
    std::string plain;
    for (const auto& v : values) {
      array.push_back(stream_json(v));
      if (!plain.empty()) plain += ' ';
      plain += v.to_string();
    }
    emit(ordered_json{{"kind", "stream_prefix"}, {"value", array}}, plain);
    next.graph = graph;
    next.equations = eqs;
    return;
  }

  if (word == "seed") {
    const std::uint64_t seed = parse_count(tokens[1], "a seed");
    end_of_command(2);
    next.env.set_seed(seed);
    next.rng.reseed(seed);
    return;
  }

  if (word == "mode") {
    const Token& m = tokens[1];
    if (m.is_word("plain")) {
      next.mode = OutputMode::plain;
    } else if (m.is_word("json")) {
      next.mode = OutputMode::json;
    } else {
      syntax(m, "expected plain or json");
    }
    end_of_command(2);
    return;
  }

  throw Error(ErrorCode::invalid_command, "unknown command '" + word + "'", command.position);
}

void Session::load(State& next, const std::string& path, std::ostream& out, bool& keep_going) {
  if (load_depth_ >= max_load_depth) {
    throw Error(ErrorCode::io_error, "load nesting deeper than " + std::to_string(max_load_depth));
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot read " + path);
  ++load_depth_;
  std::string text;
  std::size_t line_no = 0;
  try {
    while (keep_going && std::getline(in, text)) {
      ++line_no;
      dispatch(next, text, out, keep_going);
    }
  } catch (const Error& e) {
    --load_depth_;
    std::string where = path + " line " + std::to_string(line_no);
    if (e.position()) where += ", column " + std::to_string(*e.position());
    throw Error(e.code(), std::string(e.what()) + " (" + where + ")");
  }
  --load_depth_;
  keep_going = true;
}

std::string render_error(const Error& e, std::optional<std::size_t> line) {
  std::string out = "error: " + std::string(error_name(e.code())) + ": " + e.what();
  std::string where;
  if (line) where = "line " + std::to_string(*line);
  if (e.position()) where += (where.empty() ? "" : ", ") + std::string("column ") + std::to_string(*e.position());
  if (!where.empty()) out += " (" + where + ")";
  return out;
}

namespace {

void report(const Session& session, const Error& e, std::size_t line, std::ostream& err) {
  if (session.mode() == OutputMode::json) {
    ordered_json record{{"kind", "error"}, {"error", std::string(error_name(e.code()))}, {"message", e.what()},
                        {"line", line}};
    if (e.position()) record["column"] = *e.position();
    err << record.dump() << '\n';
  } else {
    err << render_error(e, line) << '\n';
  }
}

}  // namespace

int run_lines(Session& session, std::istream& in, std::ostream& out, std::ostream& err) {
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    try {
      if (!session.run_command(text, out)) break;
    } catch (const Error& e) {
      report(session, e, line_no, err);
      return e.code() == ErrorCode::io_error ? 2 : 1;
    }
  }
  return 0;
}

int run_script(Session& session, const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << render_error(Error(ErrorCode::io_error, "cannot read " + path)) << '\n';
    return 2;
  }
  return run_lines(session, in, out, err);
}

}  // namespace ctxcalc
