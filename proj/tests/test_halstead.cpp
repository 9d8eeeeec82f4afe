#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "swstat/error.hpp"
#include "swstat/halstead.hpp"

using namespace swstat::halstead;

namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(SWSTAT_FIXTURE_DIR) + "/halstead/" + name);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> texts(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

TokenCounts counts_of(std::string_view src) { return halstead_counts(tokenize(src)); }

}  // namespace

TEST_CASE("tokenize a simple assignment") {
  const auto tokens = tokenize("a = b + c;");
  CHECK(texts(tokens) == std::vector<std::string>{"a", "=", "b", "+", "c", ";"});
  const std::vector<TokenClass> classes = {TokenClass::operand, TokenClass::op, TokenClass::operand,
                                           TokenClass::op,      TokenClass::operand, TokenClass::op};
  for (std::size_t i = 0; i < tokens.size(); ++i) CHECK(tokens[i].cls == classes[i]);
}

TEST_CASE("comments, directives and literals") {
  CHECK(tokenize("/* x */").empty());
  CHECK(tokenize("// x = y;\n").empty());
  CHECK(texts(tokenize("\"x+y\"")) == std::vector<std::string>{"\"x+y\""});
  CHECK(texts(tokenize("#include <vector>\nint x;")) == std::vector<std::string>{"int", "x", ";"});
  CHECK(texts(tokenize("#define F(a) \\\n  (a + 1)\ny;")) == std::vector<std::string>{"y", ";"});
  CHECK(texts(tokenize("  /* c */ #if 0\nz")) == std::vector<std::string>{"z"});
  CHECK(texts(tokenize("c = '\\'';")) == std::vector<std::string>{"c", "=", "'\\''", ";"});
  CHECK(texts(tokenize("s = R\"d(a\"b)d\";")) == std::vector<std::string>{"s", "=", "R\"d(a\"b)d\"", ";"});
  CHECK(texts(tokenize("w = L\"hi\" u8\"x\";")) == std::vector<std::string>{"w", "=", "L\"hi\"", "u8\"x\"", ";"});
  CHECK(texts(tokenize("x = 1.5e-3f + 0x1F + 1'000;")) ==
        std::vector<std::string>{"x", "=", "1.5e-3f", "+", "0x1F", "+", "1'000", ";"});
  CHECK(texts(tokenize("p->q <<= a::b...")) == std::vector<std::string>{"p", "->", "q", "<<=", "a", "::", "b", "..."});
}

TEST_CASE("keyword classification") {
  const auto tokens = tokenize("return this ? true : nullptr;");
  REQUIRE(tokens.size() == 7);
  CHECK(tokens[0].cls == TokenClass::op);       // return
  CHECK(tokens[1].cls == TokenClass::operand);  // this
  CHECK(tokens[3].cls == TokenClass::operand);  // true
  CHECK(tokens[5].cls == TokenClass::operand);  // nullptr
}

TEST_CASE("unterminated constructs report the line") {
  CHECK_THROWS_WITH_AS((void)tokenize("a;\n/* oops"), "line 2: unterminated block comment",
                       swstat::InputError);
  CHECK_THROWS_WITH_AS((void)tokenize("x;\ny = \"abc\nz;"), "line 2: unterminated string literal",
                       swstat::InputError);
  CHECK_THROWS_WITH_AS((void)tokenize("c = 'a"), "line 1: unterminated character literal",
                       swstat::InputError);
  CHECK_THROWS_AS((void)tokenize("R\"x(never closed"), swstat::InputError);
}

TEST_CASE("halstead counts") {
  CHECK(counts_of("a = b + c;") == TokenCounts{3, 3, 3, 3});
  CHECK(counts_of("a = a + a;") == TokenCounts{3, 1, 3, 3});
  CHECK(counts_of("") == TokenCounts{0, 0, 0, 0});
  // f ( x ) ; : the parenthesis pair is one "()" operator occurrence.
  CHECK(counts_of("f(x);") == TokenCounts{2, 2, 2, 2});
  CHECK(counts_of("v[i] = {1};") == TokenCounts{4, 3, 4, 3});
}

TEST_CASE("halstead measures") {
  const auto m = halstead_measures({3, 3, 3, 3});
  CHECK(m.vocabulary == 6);
  CHECK(m.length == 6);
  CHECK(m.volume == doctest::Approx(15.509775004326936).epsilon(1e-12));
  CHECK(m.difficulty == 1.5);
  CHECK(m.effort == doctest::Approx(23.264662506490403).epsilon(1e-12));
  CHECK(m.effort == m.difficulty * m.volume);

  const auto unit = halstead_measures({1, 1, 1, 1});
  CHECK(unit.volume == 2.0);
  CHECK(unit.difficulty == 0.5);
  CHECK(unit.effort == 1.0);

  CHECK_THROWS_WITH_AS((void)halstead_measures({3, 0, 3, 0}), "degenerate counts",
                       swstat::AnalysisError);
  CHECK_THROWS_AS((void)halstead_measures({0, 0, 0, 0}), swstat::AnalysisError);
}

TEST_CASE("extract_file") {
  const auto recs = extract_file("a = b + c;", "v1", "p", "f.cc");
  REQUIRE(recs.size() == 7);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(recs[i].metric == metric_names()[i]);
    CHECK(recs[i].entity == "f.cc");
    CHECK(recs[i].version == "v1");
  }
  CHECK(recs[6].metric == "halstead_effort");
  CHECK(recs[6].value == doctest::Approx(23.26466).epsilon(1e-6));
  CHECK_THROWS_WITH_AS((void)extract_file("", "v1", "p", "empty.cc"), "empty.cc: degenerate counts",
                       swstat::AnalysisError);
  CHECK_THROWS_WITH_AS((void)extract_file("/*", "v1", "p", "bad.cc"),
                       "bad.cc: line 1: unterminated block comment", swstat::InputError);
}

TEST_CASE("corpus invariants") {
  std::mt19937_64 rng(4);
  for (const char* name : {"box_solid.cc", "vec3.hh", "tally.c"}) {
    CAPTURE(name);
    const auto src = read_fixture(name);
    const auto tokens = tokenize(src);
    const auto base = halstead_counts(tokens);
    CHECK(base.N1 >= base.n1);
    CHECK(base.N2 >= base.n2);

    // Totality: every token is counted once, except bracket closers.
    std::size_t closers = 0;
    for (const auto& t : tokens) closers += (t.text == ")" || t.text == "]" || t.text == "}");
    CHECK(base.N1 + base.N2 + closers == tokens.size());

    const auto doubled = counts_of(src + "\n" + src);
    CHECK(doubled.n1 == base.n1);
    CHECK(doubled.n2 == base.n2);
    CHECK(doubled.N1 == 2 * base.N1);
    CHECK(doubled.N2 == 2 * base.N2);
    CHECK(halstead_measures(doubled).effort > halstead_measures(base).effort);

    // Re-emit the tokens with arbitrary whitespace and comments in between.
    const std::vector<std::string> gaps = {" ", "\n", "\t", " /* note */ ", " // tail\n", "\n\n  "};
    std::uniform_int_distribution<std::size_t> pick(0, gaps.size() - 1);
    std::string reformatted;
    for (const auto& t : tokens) reformatted += t.text + gaps[pick(rng)];
    CHECK(counts_of(reformatted) == base);
  }
  CHECK(counts_of(read_fixture("vec3_reformatted.hh.txt")) == counts_of(read_fixture("vec3.hh")));
}
