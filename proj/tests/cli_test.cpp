#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "tscalc/cli.hpp"

namespace {

using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = tscalc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, IntegrateDiamond) {
  const auto r = run({"integrate", "--scale", "[0,1] u {2,4}", "--func", "1", "--from", "0", "--to",
                      "4", "--kind", "diamond", "--output", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out).at("value").get<double>(), 17.0 / 3.0, 1e-12);
}

TEST(Cli, Compare) {
  const auto r = run({"compare", "--scale", "[0,1] u {2,4}", "--func", "1", "--from", "0", "--to", "4",
                      "--alpha", "0.5", "--output", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j.at("diamond").at("value").get<double>(), 17.0 / 3.0, 1e-12);
  EXPECT_NEAR(j.at("diamond_alpha").at("value").get<double>(), 4.0, 1e-12);
  EXPECT_NEAR(j.at("difference").get<double>(), 5.0 / 3.0, 1e-12);
}

TEST(Cli, GammaTable) {
  const auto r = run({"gamma-table", "--scale", "hZ(1;0;3)", "--output", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  ASSERT_EQ(j.size(), 4u);
  EXPECT_EQ(j[0].at("gamma"), 1.0);
  EXPECT_EQ(j[1].at("gamma"), 0.5);
  EXPECT_EQ(j[2].at("gamma"), 0.5);
  EXPECT_EQ(j[3].at("gamma"), 0.0);
}

TEST(Cli, Derive) {
  const auto r = run({"derive", "--scale", "hZ(1;0;5)", "--func", "t^2", "--at", "1", "--kind",
                      "diamond-alpha", "--alpha", "0.5", "--output", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("value"), 2.0);
}

TEST(Cli, VerifyExplicit) {
  const auto r = run({"verify", "--scale", "[0,1] u {2,4}", "--func", "t", "--gfunc", "t^2 + 1",
                      "--from", "0", "--to", "4", "--c", "1", "--p", "3", "--output", "json"});
  ASSERT_EQ(r.code, 0) << r.err << r.out;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.size(), 13u);
  for (const auto& c : j) EXPECT_TRUE(c.at("passed").get<bool>()) << c.dump();
}

TEST(Cli, VerifyRandomized) {
  const auto r = run({"verify", "--seed", "3", "--trials", "5", "--output", "json"});
  ASSERT_EQ(r.code, 0) << r.err << r.out;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("seed"), 3);
  EXPECT_EQ(j.at("failures"), 0);
  EXPECT_EQ(j.at("checks"), json::array());
  EXPECT_EQ(run({"verify", "--seed", "3", "--trials", "5", "--output", "json"}).out, r.out);
}

TEST(Cli, ExitCodes) {
  // usage
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"integrate", "--scale", "[0,1]"}).code, 2);
  EXPECT_EQ(run({"integrate", "--scale", "[0,1]", "--func", "t", "--from", "0", "--to", "1", "--kind",
                 "diamond-alpha"})
                .code,
            2);
  EXPECT_EQ(run({"integrate", "--scale", "[0,1]", "--func", "t", "--from", "0", "--to", "1", "--alpha",
                 "0.5"})
                .code,
            2);
  EXPECT_EQ(run({"integrate", "--scale", "[0,1]", "--func", "t", "--from", "zero", "--to", "1"}).code, 2);
  // parse errors are position-prefixed
  const auto bad_func = run({"integrate", "--scale", "[0,1]", "--func", "t +", "--from", "0", "--to", "1"});
  EXPECT_EQ(bad_func.code, 2);
  EXPECT_EQ(bad_func.err, "3: expected an operand but reached end of input\n");
  EXPECT_EQ(run({"gamma-table", "--scale", "[2,1]"}).code, 2);
  EXPECT_EQ(run({"gamma-table", "--scale", "hZ(0;0;1)"}).code, 2);
  // domain
  const auto not_in = run({"integrate", "--scale", "[0,1] u {2,4}", "--func", "1", "--from", "0", "--to", "3"});
  EXPECT_EQ(not_in.code, 1);
  EXPECT_EQ(not_in.err.rfind("PointNotInScale: ", 0), 0u) << not_in.err;
  EXPECT_EQ(run({"integrate", "--scale", "[-1,1]", "--func", "1/t", "--from", "-1", "--to", "1"}).code, 1);
  EXPECT_EQ(run({"derive", "--scale", "{0,1,2}", "--func", "t", "--at", "2", "--kind", "delta"}).code, 1);
  // help
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, CsvAndTable) {
  const auto csv = run({"gamma-table", "--scale", "[0,1] u {2,4}", "--output", "csv"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "t,class,sigma,rho,mu,nu,gamma");
  const auto table = run({"integrate", "--scale", "[0,1] u {2,4}", "--func", "1", "--from", "0", "--to",
                          "4"});
  ASSERT_EQ(table.code, 0);
  EXPECT_NE(table.out.find("5.66666666667"), std::string::npos);
}

// --- README examples -------------------------------------------------------

std::vector<std::string> shell_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool in_quotes = false;
  bool has = false;
  for (char ch : line) {
    if (ch == '"') {
      in_quotes = !in_quotes;
      has = true;
    } else if (ch == ' ' && !in_quotes) {
      if (has) out.push_back(cur);
      cur.clear();
      has = false;
    } else {
      cur += ch;
      has = true;
    }
  }
  if (has) out.push_back(cur);
  return out;
}

std::vector<std::string> words(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

bool as_number(const std::string& s, double& v) {
  char* end = nullptr;
  v = std::strtod(s.c_str(), &end);
  return end != s.c_str() && *end == '\0';
}

// Words equal, numbers to 10 significant digits; JSON punctuation is
// stripped so "5.6," compares as 5.6.
bool same_output(const std::string& want, const std::string& got, std::string& why) {
  const auto trim = [](std::string w) {
    while (!w.empty() && (w.back() == ',' || w.back() == ':')) w.pop_back();
    return w;
  };
  const auto a = words(want);
  const auto b = words(got);
  if (a.size() != b.size()) {
    why = "word count " + std::to_string(a.size()) + " vs " + std::to_string(b.size());
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto x = trim(a[i]);
    const auto y = trim(b[i]);
    double u = 0;
    double v = 0;
    if (as_number(x, u) && as_number(y, v)) {
      if (std::abs(u - v) > 5e-10 * std::max(std::abs(u), std::abs(v))) {
        why = x + " vs " + y;
        return false;
      }
    } else if (x != y) {
      why = x + " vs " + y;
      return false;
    }
  }
  return true;
}

TEST(Readme, DocumentedExamplesReproduce) {
  std::ifstream in(TSCALC_README);
  ASSERT_TRUE(in) << "README not found at " << TSCALC_README;
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);

  int examples = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string prompt = "$ tscalc ";
    if (lines[i].rfind(prompt, 0) != 0) continue;
    const auto args = shell_split(lines[i].substr(prompt.size()));
    std::string expected;
    std::size_t k = i + 1;
    for (; k < lines.size() && lines[k].rfind("```", 0) != 0 && lines[k].rfind(prompt, 0) != 0; ++k) {
      expected += lines[k] + '\n';
    }
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << lines[i] << "\n" << r.err;
    std::string why;
    EXPECT_TRUE(same_output(expected, r.out, why)) << lines[i] << ": " << why << "\n" << r.out;
    ++examples;
    i = k - 1;
  }
  EXPECT_GE(examples, 5);
}

}  // namespace
