#include <doctest.h>

#include "testutil.hpp"
#include "vultriage/lexer.hpp"
#include "vultriage/metrics.hpp"

using namespace vultriage;

namespace {

const std::string kWorkedExample =
    "int f(int a, int b) {\n"
    "  // add\n"
    "  if (a && b) {\n"
    "    return a + b;\n"
    "  }\n"
    "  return 0;\n"
    "}";

}  // namespace

TEST_CASE("worked example metric vector") {
  const MetricVector m = extract_metrics(kWorkedExample);
  CHECK(m.nloc == 6);
  CHECK(m.ccn == 3);
  CHECK(m.token_count == 27);
  CHECK(m.max_depth == 2);
  CHECK(m.param_count == 2);
}

TEST_CASE("nloc counts non-blank lines") {
  CHECK(nloc("") == 0);
  CHECK(nloc("a\n\n  \nb") == 2);
  CHECK(nloc("   \n\t\n") == 0);
  CHECK(nloc("x") == 1);
}

TEST_CASE("cyclomatic_approx counts lexical decision points") {
  CHECK(cyclomatic_approx("x = 1;") == 1);
  CHECK(cyclomatic_approx("if (a && b) {}") == 3);
  CHECK(cyclomatic_approx("switch(x){case 1: case 2: break;}") == 3);
  // substrings must not match
  CHECK(cyclomatic_approx("iffy = whiley;") == 1);
  CHECK(cyclomatic_approx("a = b ? c : d;") == 2);
}

TEST_CASE("token_count uses the shared lexer") {
  CHECK(token_count("") == 0);
  CHECK(token_count("a+b") == 3);
}

TEST_CASE("max_brace_depth clamps and skips literals") {
  CHECK(max_brace_depth("{ { } }") == 2);
  CHECK(max_brace_depth("}{") == 1);
  CHECK(max_brace_depth("s=\"{{{\";") == 0);
  CHECK(max_brace_depth("") == 0);
}

TEST_CASE("param_count handles the spec shapes") {
  CHECK(param_count("int f(void) {}") == 0);
  CHECK(param_count("int f() {}") == 0);
  CHECK(param_count("int f(int a, int b) {}") == 2);
  CHECK(param_count("void g(int (*cb)(int,int), int n){}") == 2);
  CHECK(param_count("no parens at all") == 0);
  // unclosed group runs to end of input
  CHECK(param_count("int f(int a, int b") == 2);
}

TEST_CASE("property: metrics are comment-insensitive and match the oracle") {
  testutil::SnippetGen gen(23);
  for (int i = 0; i < 300; ++i) {
    const std::string src = gen.function();
    const MetricVector m = extract_metrics(src);
    CHECK(extract_metrics(strip_comments(src)) == m);

    const std::string stripped = testutil::oracle_strip(src);
    CHECK(m.nloc == testutil::oracle_nloc(stripped));
    CHECK(m.ccn == testutil::oracle_ccn(stripped));
    CHECK(m.token_count == testutil::oracle_tokenize(stripped).size());
    CHECK(m.max_depth == testutil::oracle_depth(stripped));
    CHECK(m.param_count == testutil::oracle_params(stripped));
  }
}

TEST_CASE("property: nloc invariant under inserting blank lines") {
  testutil::SnippetGen gen(29);
  for (int i = 0; i < 100; ++i) {
    const std::string src = gen.function();
    const std::size_t base = extract_metrics(src).nloc;
    std::string padded = src;
    padded.insert(padded.find('\n') + 1, "\n   \n\t\n");
    CHECK(extract_metrics(padded).nloc == base);
  }
}

TEST_CASE("ccn is at least 1 whenever tokens exist") {
  testutil::SnippetGen gen(31);
  for (int i = 0; i < 50; ++i) {
    const std::string src = gen.function();
    if (!tokenize(strip_comments(src)).empty()) CHECK(extract_metrics(src).ccn >= 1);
  }
}
