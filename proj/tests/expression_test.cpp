#include "support.hpp"

#include "ctxcalc/errors.hpp"
#include "ctxcalc/evaluator.hpp"
#include "ctxcalc/lexer.hpp"
#include "ctxcalc/parser.hpp"

#include <doctest.h>

#include <functional>

using namespace ctxcalc;

namespace {

Error error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorCode::io_error, "");
}

Expr var(const char* n) { return Expr::variable(n); }
Expr bin(ExprOp op, Expr a, Expr b) { return Expr::binary(op, std::move(a), std::move(b)); }

struct OpInfo {
  const char* spelling;
  ExprOp op;
  int level;  // tightest is 1
};

// The grammar tables, written out independently of the parser.
const std::vector<OpInfo> context_ops = {
    {"!", ExprOp::projection, 1},       {"^", ExprOp::hiding, 1},          {"/", ExprOp::substitution, 1},
    {"|", ExprOp::choice, 2},           {"&", ExprOp::conjunction, 3},     {"%", ExprOp::disjunction, 3},
    {"(+)", ExprOp::override_op, 4},    {"(-)", ExprOp::difference, 4},    {"<=>", ExprOp::undirected_range, 5},
    {"=>", ExprOp::directed_range, 5},  {"<=", ExprOp::directed_range, 5}, {"==", ExprOp::equal, 6},
    {"<<=", ExprOp::subset, 6},         {">>=", ExprOp::superset, 6},
};

const std::vector<OpInfo> set_ops = {
    {"!", ExprOp::projection, 1},    {"^", ExprOp::hiding, 1},         {"|", ExprOp::choice, 2},
    {"(+)", ExprOp::override_op, 3}, {"(-)", ExprOp::difference, 3},   {"><", ExprOp::join, 4},
    {"[&]", ExprOp::set_intersection, 4}, {"[+]", ExprOp::set_union, 4},
};

Expr make(const OpInfo& o, Expr a, Expr b) {
  if (std::string_view(o.spelling) == "<=") return bin(o.op, std::move(b), std::move(a));
  return bin(o.op, std::move(a), std::move(b));
}

// `a | b | c` is one three-way choice.
Expr flat_choice(std::vector<Expr> alts) {
  Expr e;
  e.op = ExprOp::choice;
  e.operands = std::move(alts);
  return e;
}

void precedence_table(const std::vector<OpInfo>& ops, Grammar g) {
  for (const auto& o1 : ops) {
    for (const auto& o2 : ops) {
      const std::string text = std::string("a ") + o1.spelling + " b " + o2.spelling + " c";
      CAPTURE(text);
      auto parse = [&] { return g == Grammar::context ? parse_context_expr(text) : parse_context_set_expr(text); };
      if (is_comparison(o1.op) && is_comparison(o2.op)) {
        CHECK(error_of(parse).code() == ErrorCode::syntax_error);
        continue;
      }
      Expr expected;
      if (o1.op == ExprOp::choice && o2.op == ExprOp::choice) {
        expected = flat_choice({var("a"), var("b"), var("c")});
      } else if (o1.level <= o2.level) {
        expected = make(o2, make(o1, var("a"), var("b")), var("c"));
      } else {
        expected = make(o1, var("a"), make(o2, var("b"), var("c")));
      }
      CHECK(parse() == expected);
    }
  }
}

// Random trees over the context grammar; comparisons only at the root.
Expr random_expr(testing::Generator& gen, const std::vector<OpInfo>& ops, int depth) {
  static const char* names[] = {"a", "b", "c", "s"};
  if (depth == 0 || gen.uniform(0, 3) == 0) return var(names[gen.uniform(0, 3)]);
  std::vector<const OpInfo*> usable;
  for (const auto& o : ops) {
    if (!is_comparison(o.op) && std::string_view(o.spelling) != "<=") usable.push_back(&o);
  }
  const OpInfo& o = *usable[static_cast<std::size_t>(gen.uniform(0, static_cast<int>(usable.size()) - 1))];
  if (o.op == ExprOp::projection || o.op == ExprOp::hiding) {
    return bin(o.op, random_expr(gen, ops, depth - 1), gen.coin() ? var("D") : Expr::dimset({"x", "y"}));
  }
  if (o.op == ExprOp::choice) {
    std::vector<Expr> alts;
    const int n = gen.uniform(2, 3);
    for (int i = 0; i < n; ++i) alts.push_back(random_expr(gen, ops, depth - 1));
    return flat_choice(std::move(alts));
  }
  return bin(o.op, random_expr(gen, ops, depth - 1), random_expr(gen, ops, depth - 1));
}

Environment example11() {
  Environment env(0);
  auto& reg = env.registry();
  for (const char* d : {"x", "y", "z", "w"}) reg.register_dimension(d, TagType::of(TagKind::integer));
  env.bind("c1", testing::ctx(reg, {{"x", 3}, {"y", 4}, {"z", 5}}));
  env.bind("c2", testing::ctx(reg, {{"y", 5}}));
  env.bind("c3", testing::ctx(reg, {{"x", 5}, {"y", 6}, {"w", 5}}));
  env.bind("D", testing::dimset({"w"}));
  return env;
}

}  // namespace

TEST_CASE("tokenizing") {
  auto tokens = tokenize("c3 ^ D (+) c1 | c2");
  CHECK(tokens.size() == 8);
  CHECK(tokens.back().is(TokenKind::end));
  CHECK(tokens[3].is(TokenKind::oplus));
  CHECK(tokens[5].is(TokenKind::bar));

  CHECK(tokenize("").size() == 1);

  const Error e = error_of([] { tokenize("c1 $$ c2"); });
  CHECK(e.code() == ErrorCode::unknown_token);
  CHECK(e.position() == 4u);

  const auto uni = tokenize("c3 ↑ D ⊕ c1 | c2");
  REQUIRE(uni.size() == tokens.size());
  for (std::size_t i = 0; i < uni.size(); ++i) CHECK(uni[i].kind == tokens[i].kind);
  CHECK(uni[4].position == 10u);

  CHECK(tokenize("[&] [+] >< <=> => <= <<= >>= ==")[0].is(TokenKind::bracket_amp));
  CHECK(tokenize("⊓ ⊞ ⋈ ⇔ ⇒ ⊆ ⊇ ∩ ∪ ↓ ⊖ ∅")[11].is(TokenKind::empty_set));
  CHECK(error_of([] { tokenize("\"open"); }).code() == ErrorCode::unknown_token);
}

TEST_CASE("context grammar groupings") {
  CHECK(parse_context_expr("c3 ^ D (+) c1 | c2") ==
        bin(ExprOp::override_op, bin(ExprOp::hiding, var("c3"), var("D")),
            bin(ExprOp::choice, var("c1"), var("c2"))));
  CHECK(parse_context_expr("c3 ↑ D ⊕ c1 | c2") == parse_context_expr("c3 ^ D (+) c1 | c2"));
  CHECK(parse_context_expr("c1 (+) c2 (-) c3") ==
        bin(ExprOp::difference, bin(ExprOp::override_op, var("c1"), var("c2")), var("c3")));
  CHECK(parse_context_expr("(c1)") == var("c1"));
  CHECK(parse_context_expr("c1 (+) (c2 (-) c3)") ==
        bin(ExprOp::override_op, var("c1"), bin(ExprOp::difference, var("c2"), var("c3"))));
}

TEST_CASE("context-set grammar groupings") {
  CHECK(parse_context_set_expr("s1 >< s2 [&] s3") ==
        bin(ExprOp::set_intersection, bin(ExprOp::join, var("s1"), var("s2")), var("s3")));
  CHECK(parse_context_set_expr("s1 ^ D [+] s2") ==
        bin(ExprOp::set_union, bin(ExprOp::hiding, var("s1"), var("D")), var("s2")));
  CHECK(parse_context_set_expr("s1") == var("s1"));

  const Expr sub = parse_context_set_expr("s / (d, 9) >< t");
  REQUIRE(sub.op == ExprOp::join);
  CHECK(sub.operands[0].op == ExprOp::set_substitution);
  CHECK(sub.operands[0].name == "d");
  CHECK(sub.operands[0].tag.text == "9");
}

TEST_CASE("every adjacent operator pair groups by the tables") {
  precedence_table(context_ops, Grammar::context);
  precedence_table(set_ops, Grammar::context_set);
}

TEST_CASE("syntax errors") {
  CHECK(error_of([] { parse_context_expr("c1 (+)"); }).code() == ErrorCode::syntax_error);
  CHECK(error_of([] { parse_context_expr("(c1 (+) c2"); }).code() == ErrorCode::unbalanced_parens);
  CHECK(error_of([] { parse_context_expr("c1 )"); }).code() == ErrorCode::unbalanced_parens);
  CHECK(error_of([] { parse_context_expr("c1 c2"); }).code() == ErrorCode::syntax_error);
  CHECK(error_of([] { parse_context_expr("c1 == c2 == c3"); }).code() == ErrorCode::syntax_error);
  const Error e = error_of([] { parse_context_expr("c1 (+) (+)"); });
  CHECK(e.position() == 8u);
}

TEST_CASE("printing reparses to the same tree") {
  testing::Generator gen(77);
  for (int i = 0; i < 1000; ++i) {
    Expr e = random_expr(gen, context_ops, 4);
    if (gen.uniform(0, 4) == 0) {
      static const ExprOp cmp[] = {ExprOp::equal, ExprOp::subset, ExprOp::superset};
      e = bin(cmp[gen.uniform(0, 2)], e, random_expr(gen, context_ops, 2));
    }
    const std::string text = to_string(e, Grammar::context);
    CAPTURE(text);
    CHECK(parse_context_expr(text) == e);

    const Expr s = random_expr(gen, set_ops, 4);
    const std::string set_text = to_string(s, Grammar::context_set);
    CAPTURE(set_text);
    CHECK(parse_context_set_expr(set_text) == s);
  }
}

TEST_CASE("choice expression evaluates by seed") {
  const Environment env = example11();
  const Context pick_c1 = testing::ctx(env.registry(), {{"x", 3}, {"y", 4}, {"z", 5}});
  const Context pick_c2 = testing::ctx(env.registry(), {{"x", 5}, {"y", 5}});
  bool saw[2] = {false, false};
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    ChoiceRng probe(seed);
    const std::size_t which = probe.pick(2);
    ChoiceRng rng(seed);
    const Value v = evaluate_text("c3 ^ D (+) c1 | c2", env, rng);
    CHECK(std::get<Context>(v) == (which == 0 ? pick_c1 : pick_c2));
    saw[which] = true;
  }
  CHECK(saw[0]);
  CHECK(saw[1]);
}

TEST_CASE("evaluation") {
  Environment env = example11();
  ChoiceRng rng(1);
  CHECK(std::get<bool>(evaluate_text("c1 == c1", env, rng)));
  CHECK_FALSE(std::get<bool>(evaluate_text("c1 == c2", env, rng)));
  CHECK(std::get<bool>(evaluate_text("c2 <<= c2 % c1", env, rng)));
  CHECK(std::get<bool>(evaluate_text("c1 >>= c1 ! {x}", env, rng)));
  CHECK(to_string(evaluate_text("c3 ! {x, y}", env, rng)) == "{(x,5),(y,6)}");
  CHECK(to_string(evaluate_text("c3 ^ w", env, rng)) == "{(x,5),(y,6)}");
  CHECK(to_string(evaluate_text("{(x,1)} <=> {(x,3)}", env, rng)) == "{{(x,1)},{(x,2)},{(x,3)}}");
  CHECK(to_string(evaluate_text("{(x,3)} <= {(x,1)}", env, rng)) == "{{(x,1)},{(x,2)},{(x,3)}}");
  CHECK(to_string(evaluate_text("{(x,1)} / {(x,9)}", env, rng)) == "{(x,9)}");

  CHECK(error_of([&] { evaluate_text("undefined_name", env, rng); }).code() == ErrorCode::unbound_variable);
  CHECK(error_of([&] { evaluate_text("({(x,1)} <=> {(x,2)}) & c1", env, rng); }).code() == ErrorCode::kind_mismatch);
  CHECK(error_of([&] { evaluate_text("c1 (+) {(x,1),(x,2)}", env, rng); }).code() == ErrorCode::non_simple_operand);
  CHECK(error_of([&] { evaluate_text("{(q,1)}", env, rng); }).code() == ErrorCode::unknown_dimension);
  CHECK(error_of([&] { evaluate_text("{(x,\"s\")}", env, rng); }).code() == ErrorCode::tag_type_mismatch);

  const Error e = error_of([&] { evaluate_text("c1 (+) nope", env, rng); });
  CHECK(e.position() == 8u);
}

TEST_CASE("context-set evaluation") {
  Environment env = example11();
  ChoiceRng rng(2);
  env.bind("s", std::get<ContextSet>(evaluate_text("{(x,1)} <=> {(x,3)}", env, rng)));
  CHECK(to_string(evaluate_text("s / (x, 7)", env, rng)) == "{{(x,7)}}");
  CHECK(to_string(evaluate_text("s >< {{(x,2),(y,1)}}", env, rng)) == "{{(x,2),(y,1)}}");
  CHECK(to_string(evaluate_text("s [&] emptyset", env, rng)) == "emptyset");
  CHECK(to_string(evaluate_text("s ^ x", env, rng)) == "{{}}");
  CHECK(to_string(evaluate_text("(s >< s) (+) {{(y,2)}}", env, rng)) == "{{(x,1),(y,2)},{(x,2),(y,2)},{(x,3),(y,2)}}");
}

TEST_CASE("boxes in expressions") {
  Environment env(0);
  std::vector<TagValue> dom{TagValue::integer(1), TagValue::integer(2), TagValue::integer(3)};
  env.registry().register_dimension("d1", TagType::of(TagKind::integer), dom);
  env.registry().register_dimension("d2", TagType::of(TagKind::integer), dom);
  ChoiceRng rng(0);
  const Value b = evaluate_text("Box[d1, d2 | d1 < d2]", env, rng);
  CHECK(kind_of(b) == ValueKind::box);
  env.bind("b", b);
  CHECK(to_string(evaluate_text("b ! {d1}", env, rng)) == "{{(d1,1)},{(d1,2)}}");
}

TEST_CASE("only choice depends on the seed") {
  Environment env = example11();
  const std::string fixed = "c3 ^ D (+) c1";
  ChoiceRng a(1), b(2);
  CHECK(evaluate_text(fixed, env, a) == evaluate_text(fixed, env, b));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ChoiceRng r1(seed), r2(seed);
    CHECK(evaluate_text("c3 ^ D (+) c1 | c2", env, r1) == evaluate_text("c3 ^ D (+) c1 | c2", env, r2));
  }
}
