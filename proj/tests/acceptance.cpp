// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
//
//   acceptance <ctxcalc executable> <example script> <golden transcript>

#include "oracles.hpp"

#include "ctxcalc/context_ops.hpp"
#include "ctxcalc/errors.hpp"
#include "ctxcalc/evaluator.hpp"
#include "ctxcalc/parser.hpp"
#include "ctxcalc/set_ops.hpp"
#include "ctxcalc/streams.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace ctxcalc;
using testing::ctx;
using testing::set;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures for one criterion.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++cases_;
    if (!ok) {
      ++failures_;
      if (first_.empty()) first_ = what;
    }
  }

  template <class F>
  void guarded(const std::string& what, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      check(false, what + " threw: " + e.what());
    }
  }

  Outcome outcome(const std::string& summary) const {
    std::ostringstream out;
    out << summary << " (" << cases_ << " checks, " << failures_ << " failures)";
    if (!first_.empty()) out << "; first failure: " << first_;
    return {failures_ == 0 && cases_ > 0, out.str()};
  }

 private:
  long cases_ = 0;
  long failures_ = 0;
  std::string first_;
};

std::string show(const Context& c) { return to_string(c); }
std::string show(const ContextSet& s) { return to_string(s); }

template <class T>
void expect(Tally& t, const T& got, const T& want, const std::string& what) {
  t.check(got == want, what + ": got " + show(got) + ", want " + show(want));
}

Outcome projection_example() {
  Tally t;
  auto reg = testing::int_registry();
  t.guarded("projection", [&] {
    expect(t, projection(ctx(reg, {{"d", 1}, {"e", 4}, {"f", 3}}), testing::dimset({"d", "e"})),
           ctx(reg, {{"d", 1}, {"e", 4}}), "c1 ! {d,e}");
  });
  return t.outcome("projection {(d,1),(e,4),(f,3)} ! {d,e} = {(d,1),(e,4)}");
}

Outcome hiding_example() {
  Tally t;
  auto reg = testing::int_registry();
  t.guarded("hiding", [&] {
    expect(t, hiding(ctx(reg, {{"d", 1}, {"e", 4}, {"f", 3}}), testing::dimset({"d", "e"})), ctx(reg, {{"f", 3}}),
           "c1 ^ {d,e}");
  });
  return t.outcome("hiding {(d,1),(e,4),(f,3)} ^ {d,e} = {(f,3)}");
}

Outcome substitution_example() {
  Tally t;
  auto reg = testing::int_registry();
  t.guarded("substitution", [&] {
    expect(t, substitution(ctx(reg, {{"d", 1}, {"e", 4}, {"d", 3}}), ctx(reg, {{"d", 4}, {"f", 3}})),
           ctx(reg, {{"e", 4}, {"d", 4}}), "c1 / c2");
  });
  return t.outcome("substitution {(d,1),(e,4),(d,3)} / {(d,4),(f,3)} = {(e,4),(d,4)}");
}

Outcome undirected_range_example() {
  Tally t;
  auto reg = testing::int_registry();
  t.guarded("undirected range", [&] {
    std::vector<Context> nine;
    for (int e = 1; e <= 3; ++e) {
      for (int d = 1; d <= 3; ++d) nine.push_back(ctx(reg, {{"e", e}, {"d", d}}));
    }
    const auto c1 = ctx(reg, {{"e", 3}, {"d", 1}});
    const auto c2 = ctx(reg, {{"e", 1}, {"d", 3}});
    const auto c3 = ctx(reg, {{"e", 3}});
    const auto c4 = ctx(reg, {{"f", 4}});
    const auto c5 = ctx(reg, {{"e", 1}, {"f", 4}});
    expect(t, undirected_range(c1, c2), set(nine), "c1 <=> c2");
    expect(t, undirected_range(c3, c4), set({ctx(reg, {{"e", 3}, {"f", 4}})}), "c3 <=> c4");
    expect(t, undirected_range(c3, c5),
           set({ctx(reg, {{"e", 1}, {"f", 4}}), ctx(reg, {{"e", 2}, {"f", 4}}), ctx(reg, {{"e", 3}, {"f", 4}})}),
           "c3 <=> c5");
  });
  return t.outcome("undirected range: 9-element set, singleton, 3-element set");
}

Outcome directed_range_example() {
  Tally t;
  auto reg = testing::int_registry();
  t.guarded("directed range", [&] {
    const auto c1 = ctx(reg, {{"d", 1}});
    const auto c2 = ctx(reg, {{"d", 3}, {"f", 4}});
    expect(t, directed_range(c1, c2),
           set({ctx(reg, {{"d", 1}, {"f", 4}}), ctx(reg, {{"d", 2}, {"f", 4}}), ctx(reg, {{"d", 3}, {"f", 4}})}),
           "c1 => c2");
    expect(t, directed_range(c2, c1), set({ctx(reg, {{"f", 4}})}), "c2 => c1");

    Environment env;
    for (const char* d : {"d", "f"}) env.registry().register_dimension(d, TagType::of(TagKind::integer));
    env.bind("c1", ctx(env.registry(), {{"d", 1}}));
    env.bind("c2", ctx(env.registry(), {{"d", 3}, {"f", 4}}));
    ChoiceRng rng(0);
    t.check(evaluate_text("c2 <= c1", env, rng) == evaluate_text("c1 => c2", env, rng), "c2 <= c1 equals c1 => c2");
  });
  return t.outcome("directed range, including the ignored pair c2 => c1 = {{(f,4)}}");
}

Outcome choice_example() {
  Tally t;
  t.guarded("choice", [&] {
    Environment env;
    auto& reg = env.registry();
    for (const char* d : {"x", "y", "z", "w"}) reg.register_dimension(d, TagType::of(TagKind::integer));
    env.bind("c1", ctx(reg, {{"x", 3}, {"y", 4}, {"z", 5}}));
    env.bind("c2", ctx(reg, {{"y", 5}}));
    env.bind("c3", ctx(reg, {{"x", 5}, {"y", 6}, {"w", 5}}));
    env.bind("D", testing::dimset({"w"}));

    for (const char* text : {"c3 ^ D (+) c1 | c2", "c3 ↑ D ⊕ c1 | c2"}) {
      const Expr ast = parse_context_expr(text);
      const Expr want = Expr::binary(ExprOp::override_op, Expr::binary(ExprOp::hiding, Expr::variable("c3"), Expr::variable("D")),
                                     Expr::binary(ExprOp::choice, Expr::variable("c1"), Expr::variable("c2")));
      t.check(ast == want, std::string("grouping of ") + text + " is " + to_string(ast, Grammar::context));
    }

    std::optional<std::uint64_t> seed_for[2];
    for (std::uint64_t seed = 0; seed < 100 && !(seed_for[0] && seed_for[1]); ++seed) {
      ChoiceRng probe(seed);
      auto& slot = seed_for[probe.pick(2)];
      if (!slot) slot = seed;
    }
    t.check(seed_for[0] && seed_for[1], "seeds selecting each alternative exist");
    const Context want[2] = {ctx(reg, {{"x", 3}, {"y", 4}, {"z", 5}}), ctx(reg, {{"x", 5}, {"y", 5}})};
    for (int which = 0; which < 2; ++which) {
      if (!seed_for[which]) continue;
      ChoiceRng rng(*seed_for[which]);
      const Value v = evaluate_text("c3 ^ D (+) c1 | c2", env, rng);
      const auto* got = std::get_if<Context>(&v);
      t.check(got && *got == want[which], "seed " + std::to_string(*seed_for[which]) + " gives " + to_string(v));
    }
  });
  return t.outcome("c3 ^ D (+) c1 | c2 groups as override(hiding(c3,D), choice(c1,c2)) and yields both alternatives");
}

struct StreamProgram {
  std::shared_ptr<streams::StreamGraph> graph = std::make_shared<streams::StreamGraph>();
  streams::EquationSet eqs;
  streams::Warehouse wh;

  explicit StreamProgram(const std::string& text) { eqs = streams::define_streams(graph, streams::parse_equations(text, *graph)); }

  std::string row(std::string_view expr, std::size_t n) {
    std::string out;
    for (const auto& v : streams::eval_prefix(streams::parse_stream_expr(expr, *graph), "time", n, eqs, &wh)) {
      out += (out.empty() ? "" : " ") + v.to_string();
    }
    return out;
  }
};

Outcome operator_rows() {
  Tally t;
  t.guarded("operator rows", [&] {
    StreamProgram p("A = [1,2,3,4,5]; B = [false,false,true,false,true]");
    const std::pair<const char*, const char*> rows[] = {
        {"first A", "1 1 1 1 1"}, {"next A", "2 3 4 5"}, {"prev A", "nil 1 2 3 4"}, {"A fby B", "1 0 0 1 0"},
        {"A wvr B", "3 5"},       {"A asa B", "3 3 3"},  {"A upon B", "1 1 1 2 2"},
    };
    for (const auto& [expr, want] : rows) {
      const std::size_t n = static_cast<std::size_t>(std::count(want, want + std::strlen(want), ' ') + 1);
      const std::string got = p.row(expr, n);
      t.check(got == want, std::string(expr) + " = " + got + ", want " + want);
    }
  });
  return t.outcome("first/next/prev/fby/wvr/asa rows; upon = 1 1 1 2 2 from the recursive definition");
}

Outcome navigation_rows() {
  Tally t;
  t.guarded("navigation rows", [&] {
    StreamProgram p("A = [1,2,4,8,16,32,64,128]; B = [1,2,3,0,6,7,4,5]");
    const std::string nav = p.row("A @.time B", 8);
    t.check(nav == "2 4 8 1 64 128 16 32", "A @.time B = " + nav);
    const std::string query = p.row("#.time", 8);
    t.check(query == "0 1 2 3 4 5 6 7", "#.time = " + query);
  });
  return t.outcome("A @.time B = 2 4 8 1 64 128 16 32 and #.time = 0..7");
}

Outcome context_properties() {
  Tally t;
  auto reg = testing::int_registry();
  testing::Generator gen(9001);
  constexpr int cases = 1000;
  for (int i = 0; i < cases; ++i) {
    t.guarded("case " + std::to_string(i), [&] {
      const Context c = gen.general(reg);
      const Context s = gen.simple(reg);
      const Context s2 = gen.simple(reg);
      const DimSet D = gen.dimset();
      const std::string at = " for c=" + to_string(c) + " s=" + to_string(s) + " s2=" + to_string(s2);

      t.check(disjunction(projection(c, D), hiding(c, D)) == c && conjunction(projection(c, D), hiding(c, D)).empty(),
              "partition" + at);

      const Context o = override_with(c, s);
      DimSet both = dims(c);
      for (const auto& d : dims(s)) both.insert(d);
      t.check(dims(o) == both, "override dims union" + at);
      t.check(projection(o, dims(s)) == s, "override absorbs" + at);
      t.check(override_with(c, Context()) == c && override_with(Context(), s) == s, "override identities" + at);

      const DimSet sd = dims(s);
      const Context same = gen.simple_over(reg, std::vector<std::string>(sd.begin(), sd.end()));
      t.check(substitution(same, s) == s, "substitution with equal domains" + at);

      t.check(undirected_range(s, s2) == undirected_range(s2, s), "range symmetry" + at);
      t.check(undirected_range(s, s2) == testing::range_oracle(reg, s, s2, false), "undirected range oracle" + at);
      t.check(directed_range(s, s2) == testing::range_oracle(reg, s, s2, true), "directed range oracle" + at);

      std::vector<Context> candidates{c, s, s2};
      candidates.resize(static_cast<std::size_t>(gen.uniform(1, 3)));
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        ChoiceRng rng(seed);
        const Context picked = choice(candidates, rng);
        if (std::find(candidates.begin(), candidates.end(), picked) == candidates.end()) {
          t.check(false, "choice membership" + at);
        }
      }
      t.check(true, "choice membership");

      const Context a = gen.general(reg), b = gen.general(reg), e = gen.general(reg);
      auto le = [](Containment k) { return k == Containment::subset || k == Containment::equal; };
      t.check(compare(a, a) == Containment::equal, "reflexive");
      t.check(!(le(compare(a, b)) && le(compare(b, a))) || a == b, "antisymmetric");
      t.check(!(le(compare(a, b)) && le(compare(b, e))) || le(compare(a, e)), "transitive");
    });
  }
  return t.outcome(std::to_string(cases) + " random cases of each context law, choice over 100 seeds");
}

Outcome set_properties() {
  Tally t;
  auto reg = testing::int_registry();
  testing::Generator gen(4242, "abc");
  constexpr int cases = 1000;
  for (int i = 0; i < cases; ++i) {
    t.guarded("set case", [&] {
      const ContextSet s1 = gen.simple_set(reg);
      const ContextSet s2 = gen.simple_set(reg);
      const std::string at = " for s1=" + to_string(s1) + " s2=" + to_string(s2);
      t.check(join(s1, s2) == join(s2, s1), "join commutes" + at);
      t.check(join(s1, s2) == testing::natural_join(reg, s1, s2), "join oracle" + at);
      t.check(set_intersection(s1, s2) == set_intersection(s2, s1), "intersection commutes" + at);
      t.check(set_union(s1, s2) == set_union(s2, s1), "union commutes" + at);

      DimSet delta3;
      const DimSet d2 = testing::all_dims(s2);
      for (const auto& d : testing::all_dims(s1)) {
        if (d2.count(d)) delta3.insert(d);
      }
      bool agree = true;
      for (const auto& a : s1.members()) {
        for (const auto& b : s2.members()) agree = agree && testing::agree_on(a, b, delta3);
      }
      if (agree) {
        t.check(set_intersection(s1, s2) == lift_projection(join(s1, s2), delta3), "restricted identity" + at);
      }
    });
  }

  DimensionRegistry boxes;
  std::vector<DimensionPtr> dims;
  for (const char* n : {"p", "q", "r"}) {
    std::vector<TagValue> dom;
    for (int v = 0; v < 4; ++v) dom.push_back(TagValue::integer(v));
    dims.push_back(boxes.register_dimension(n, TagType::of(TagKind::integer), dom));
  }
  for (int i = 0; i < cases; ++i) {
    t.guarded("box case", [&] {
      const auto k = static_cast<std::size_t>(gen.uniform(1, 3));
      const std::vector<DimensionPtr> box_dims(dims.begin(), dims.begin() + static_cast<std::ptrdiff_t>(k));
      std::vector<std::string> names;
      for (const auto& d : box_dims) names.push_back(d->name());
      const BoolExpr pred = testing::random_predicate(gen, names);
      const Box b = box_make(box_dims, pred);
      const ContextSet members = box_enumerate(b);
      std::vector<Context> expected;
      std::vector<int> pick(k, 0);
      bool consistent = true;
      while (true) {
        std::map<std::string, int> env;
        std::vector<std::pair<std::string, TagValue>> pairs;
        for (std::size_t j = 0; j < k; ++j) {
          env[names[j]] = pick[j];
          pairs.emplace_back(names[j], TagValue::integer(pick[j]));
        }
        const Context c = make_context(boxes, pairs);
        const bool in = testing::holds(pred, env);
        consistent = consistent && box_contains(b, c) == in && members.contains(c) == in;
        if (in) expected.push_back(c);
        std::size_t j = 0;
        while (j < k && ++pick[j] > 3) pick[j++] = 0;
        if (j == k) break;
      }
      t.check(consistent && members == ContextSet(expected), "box " + to_string(b));
    });
  }
  return t.outcome(std::to_string(cases) + " random set pairs and " + std::to_string(cases) +
                   " random boxes over domains up to 4^3");
}

Outcome stream_properties() {
  Tally t;
  std::mt19937 rng(777);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  using testing::Opt;
  using testing::OptBool;
  for (int round = 0; round < 200; ++round) {
    t.guarded("stream case", [&] {
      std::vector<Opt> a(static_cast<std::size_t>(uni(0, 12)));
      std::vector<Opt> c(static_cast<std::size_t>(uni(0, 12)));
      std::vector<OptBool> b(static_cast<std::size_t>(uni(0, 12)));
      for (auto& x : a) x = uni(0, 9) == 0 ? Opt{} : Opt{uni(-20, 20)};
      for (auto& x : c) x = uni(0, 9) == 0 ? Opt{} : Opt{uni(-20, 20)};
      for (auto& x : b) x = uni(0, 11) == 0 ? OptBool{} : OptBool{uni(0, 2) == 0};
      const std::string text = "A = " + testing::literal(a) + "; B = " + testing::literal(b) + "; C = " + testing::literal(c);
      StreamProgram p(text);
      auto values = [&](std::string_view expr, streams::Warehouse* wh) {
        std::vector<Opt> out;
        const auto id = streams::parse_stream_expr(expr, *p.graph);
        for (const auto& v : streams::eval_prefix(id, "time", 13, p.eqs, wh)) {
          out.push_back(v.is_nil() ? Opt{} : Opt{static_cast<long>(v.as_integer())});
        }
        return out;
      };
      for (const char* expr : {"A wvr B", "A asa B", "A upon B", "A fby C", "prev A"}) {
        const auto memo = values(expr, &p.wh);
        const auto plain = values(expr, nullptr);
        t.check(memo == plain, std::string("memoized equals unmemoized for ") + expr + " in " + text);
        for (std::size_t i = 0; i < memo.size(); ++i) {
          Opt want;
          const std::string_view e = expr;
          if (e == "A wvr B") want = testing::oracle_wvr(a, b, i);
          if (e == "A asa B") want = testing::oracle_wvr(a, b, 0);
          if (e == "A upon B") want = testing::oracle_upon(a, b, i);
          if (e == "A fby C") want = i == 0 ? testing::at(a, 0) : testing::at(c, i - 1);
          if (e == "prev A") want = i == 0 ? Opt{} : testing::at(a, i - 1);
          t.check(memo[i] == want, std::string(expr) + " at " + std::to_string(i) + " in " + text);
        }
      }
    });
  }

  // Navigation axiom on random multidimensional contexts.
  t.guarded("navigation", [&] {
    StreamProgram p("X = #.time * 100 + #.x * 10 + #.y; L = [3,1,4,1,5].x");
    for (const char* name : {"X", "L"}) {
      for (const char* d : {"time", "x", "y"}) {
        const auto nav = p.graph->at(p.eqs.root(name), d, p.graph->query(d));
        for (int i = 0; i < 100; ++i) {
          const streams::EvaluationContext ctx{{"time", static_cast<std::uint64_t>(uni(0, 9))},
                                               {"x", static_cast<std::uint64_t>(uni(0, 9))},
                                               {"y", static_cast<std::uint64_t>(uni(0, 9))}};
          t.check(streams::eval(nav, ctx, p.eqs, &p.wh) == streams::eval(p.eqs.root(name), ctx, p.eqs, nullptr),
                  std::string("(") + name + " @." + d + " #." + d + ") = " + name);
        }
      }
    }
  });

  // An all-false guard diverges; the budget turns that into an error.
  t.guarded("budget", [&] {
    StreamProgram p("A = #.time; F = false");
    const auto w = p.graph->wvr(p.eqs.root("A"), p.eqs.root("F"));
    constexpr std::uint64_t budget = 50'000;
    streams::EvalStats stats;
    bool exhausted = false;
    try {
      streams::eval(w, {}, p.eqs, &p.wh, budget, &stats);
    } catch (const Error& e) {
      exhausted = e.code() == ErrorCode::demand_exhausted;
    }
    t.check(exhausted, "all-false wvr raises DemandExhausted");
    t.check(stats.demands <= budget, "stopped within the budget");
  });
  return t.outcome("200 random prefixes against index arithmetic, navigation axiom, memoization, budget");
}

struct RunResult {
  std::string output;
  int status = -1;
};

RunResult run_cli(const std::string& exe, const std::string& script) {
  const std::string command = "'" + exe + "' --seed 0 --script '" + script + "'";
  RunResult r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) r.output.append(buffer, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

Outcome cli_determinism(const std::string& exe, const std::string& script, const std::string& golden) {
  Tally t;
  t.guarded("cli", [&] {
    const RunResult first = run_cli(exe, script);
    const RunResult second = run_cli(exe, script);
    t.check(first.status == 0, "first run exit code " + std::to_string(first.status));
    t.check(second.status == 0, "second run exit code " + std::to_string(second.status));
    t.check(!first.output.empty(), "transcript is not empty");
    t.check(first.output == second.output, "transcripts differ between runs");
    std::ifstream in(golden, std::ios::binary);
    std::stringstream want;
    want << in.rdbuf();
    t.check(in.good() || in.eof(), "golden transcript readable");
    t.check(first.output == want.str(), "transcript matches " + golden);
  });
  return t.outcome("example script run twice with --seed 0: identical transcripts, exit code 0, golden match");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: acceptance <ctxcalc executable> <example script> <golden transcript>\n";
    return 2;
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"projection example", projection_example},
      {"hiding example", hiding_example},
      {"substitution example", substitution_example},
      {"undirected range examples", undirected_range_example},
      {"directed range examples", directed_range_example},
      {"choice expression example", choice_example},
      {"stream operator rows", operator_rows},
      {"navigation and query rows", navigation_rows},
      {"context operator properties", context_properties},
      {"context set properties", set_properties},
      {"stream oracle suite", stream_properties},
      {"command line determinism", [&] { return cli_determinism(argv[1], argv[2], argv[3]); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first << ": "
              << o.detail << '\n';
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " acceptance criteria passed\n";
  return failed == 0 ? 0 : 1;
}
