#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

#include "fraclab/cli.hpp"
#include "fraclab/expr.hpp"

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "fraclab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = fraclab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

using fraclab::expr::Expression;

TEST(Expression, Arithmetic) {
    EXPECT_DOUBLE_EQ(Expression::parse("1 + 2*3")(0.0), 7.0);
    EXPECT_DOUBLE_EQ(Expression::parse("(1 + 2)*3")(0.0), 9.0);
    EXPECT_DOUBLE_EQ(Expression::parse("8/4/2")(0.0), 1.0);
    EXPECT_DOUBLE_EQ(Expression::parse("2^3^2")(0.0), 512.0);
    EXPECT_DOUBLE_EQ(Expression::parse("-2^2")(0.0), -4.0);
    EXPECT_DOUBLE_EQ(Expression::parse("2^-1")(0.0), 0.5);
    EXPECT_DOUBLE_EQ(Expression::parse("1.5e2")(0.0), 150.0);
}

TEST(Expression, FunctionsVariablesAndConstants) {
    const auto e = Expression::parse("t^2*exp(-t) + sin(pi*t) - cos(t)");
    for (double t : {0.0, 0.3, 1.7}) {
        const double ref = t * t * std::exp(-t) + std::sin(std::numbers::pi * t) - std::cos(t);
        EXPECT_NEAR(e(t), ref, 1e-15);
    }
    const auto g = Expression::parse("K*x*(1 - x)", {"x", "K"});
    EXPECT_DOUBLE_EQ(g(0.25, 2.0), 0.375);
    EXPECT_DOUBLE_EQ(g(std::vector<double>{0.5, 4.0}), 1.0);
}

TEST(Expression, Errors) {
    for (const char* bad : {"", "1 +", "(1", "foo", "sin 1", "2 $ 3", "t t"})
        EXPECT_THROW(Expression::parse(bad), fraclab::expr::ParseError) << bad;
    EXPECT_THROW(Expression::parse("y"), fraclab::expr::ParseError);
    EXPECT_THROW(Expression::parse("t")(std::vector<double>{1.0, 2.0}), fraclab::DomainError);
}

TEST(Cli, CaputoOfLinearFunction) {
    const auto r = run({"op", "--kind", "caputo", "--alpha", "0.5", "--fn", "t", "--grid", "0:1:64"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(first_line(r.out), "t,value");
    const auto last = r.out.substr(r.out.rfind('\n', r.out.size() - 2) + 1);
    const double v = std::stod(last.substr(last.find(',') + 1));
    EXPECT_NEAR(v, 2.0 / std::sqrt(std::numbers::pi), 1e-12);
}

TEST(Cli, UsageErrorsExitWithOne) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({"ivp", "--no-such-flag"}).code, 1);
    EXPECT_EQ(run({"op", "--alpha", "0.5"}).code, 1);
    EXPECT_EQ(run({"ivp", "--N", "many"}).code, 1);
}

TEST(Cli, ValidationErrorsExitWithTwo) {
    const std::regex diagnostic("^[a-z_]+,[^\n]+\n$");
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"ivp", "--alpha", "1.5"},
             {"ivp", "--rhs", "y +"},
             {"op", "--kind", "caputo", "--alpha", "1.0"},
             {"op", "--kind", "nth-level", "--alpha", "0.5", "--gammas", "0.3,0.5,2.3"},
             {"ivp", "--config", "/nonexistent/fraclab.cfg"},
             {"gfc", "--pair", "gamma", "--shape", "1.5"},
         }) {
        const auto r = run(args);
        EXPECT_EQ(r.code, 2) << args[0] << " " << r.err;
        EXPECT_TRUE(std::regex_match(r.err, diagnostic)) << r.err;
        EXPECT_TRUE(r.out.empty());
    }
}

TEST(Cli, ConstraintViolationCode) {
    const auto r = run({"op", "--kind", "nth-level", "--alpha", "0.5", "--gammas", "0.3,0.5,2.3"});
    EXPECT_EQ(r.err.rfind("constraint_violation,", 0), 0u) << r.err;
}

TEST(Cli, NumericalFailuresExitWithThree) {
    const auto r = run({"ivp", "--alpha", "0.8", "--rhs", "y^2", "--T", "10", "--N", "1000"});
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
    const auto cfg = temp_file("fraclab_test.cfg", "# comment\nsolver = adams\nalpha = 0.3\nrhs = -y\nN = 64\n");
    const auto from_file = run({"ivp", "--config", cfg.string()});
    const auto from_flags = run({"ivp", "--solver", "adams", "--alpha", "0.3", "--rhs", "-y", "--N", "64"});
    ASSERT_EQ(from_file.code, 0) << from_file.err;
    EXPECT_EQ(from_file.out, from_flags.out);
    const auto overridden = run({"ivp", "--config", cfg.string(), "--alpha", "0.7"});
    const auto direct = run({"ivp", "--alpha", "0.7", "--rhs", "-y", "--N", "64"});
    EXPECT_EQ(overridden.out, direct.out);
    EXPECT_NE(overridden.out, from_file.out);
    std::filesystem::remove(cfg);
}

TEST(Cli, MalformedConfigIsValidationError) {
    const auto cfg = temp_file("fraclab_bad.cfg", "alpha 0.3\n");
    const auto r = run({"ivp", "--config", cfg.string()});
    EXPECT_EQ(r.code, 2);
    std::filesystem::remove(cfg);
}

TEST(Cli, OutputIsDeterministic) {
    const std::vector<std::string> args{"ivp", "--solver", "diffusive", "--alpha", "0.4", "--N", "200"};
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, TvpSummaryColumns) {
    const auto r = run({"tvp", "--alpha", "0.6", "--b", "1", "--ystar", "0.5", "--N", "128", "--method", "both"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(first_line(r.err), "method,recovered_y_a,residual,iterations,seconds");
    EXPECT_NE(r.err.find("\nshooting,"), std::string::npos);
    EXPECT_NE(r.err.find("\nfredholm,"), std::string::npos);
}

TEST(Cli, MapBifurcationTable) {
    const auto r = run({"map", "--alpha", "1", "--x0", "0.1", "--step", "1", "--kick", "K*x*(1-x)", "--K-values",
                        "2.3", "--transient", "500", "--samples", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(first_line(r.out), "K,step,x,status");
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
}

TEST(Cli, VerifySuiteWritesChecks) {
    const auto r = run({"verify", "--suite", "maps", "--seed", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(first_line(r.out), "suite,check,value,tolerance,status");
    EXPECT_EQ(run({"verify", "--suite", "nonsense"}).code, 2);
}
