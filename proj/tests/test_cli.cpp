#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "lindgal/config.hpp"

using namespace lindgal;

namespace {

std::string problems_text(const std::string& cfg) {
    try {
        parse_config_text(cfg);
        return "";
    } catch (const ConfigError& e) {
        return e.what();
    }
}

}  // namespace

TEST_CASE("a complete evolve config parses") {
    RunConfig cfg = parse_config_text(
        "[run]\n"
        "command = evolve\n"
        "out = results\n"
        "seed = 7\n"
        "[model]\n"
        "name = qou\n"
        "lambda = 1.0\n"
        "mu = 0.5\n"
        "[evolve]\n"
        "N = 30\n"
        "times = 0.5 1 2\n"
        "k_list = 1 2\n"
        "initial = coherent(1)\n"
        "rel_tol = 1e-9\n");
    CHECK(cfg.command == "evolve");
    CHECK(cfg.out_dir == "results");
    CHECK(cfg.seed == 7);
    CHECK(cfg.model_name == "qou");
    CHECK(cfg.model_params.at("mu") == 0.5);
    CHECK(cfg.N == 30);
    CHECK(cfg.times == std::vector<double>{0.5, 1, 2});
    CHECK(cfg.k_list == std::vector<double>{1, 2});
    CHECK(cfg.has_initial);
    CHECK(cfg.rel_tol == 1e-9);
    CHECK(cfg.build_model().name == "qou");
}

TEST_CASE("comments and blank lines are ignored") {
    RunConfig cfg = parse_config_text(
        "# top note\n\n[run]\ncommand = steady  # trailing\n\n[model]\nname = decay\n"
        "[steady]\nN = 12\n");
    CHECK(cfg.command == "steady");
    CHECK(cfg.N == 12);
}

TEST_CASE("unknown keys get a nearest-key suggestion") {
    std::string msg = problems_text(
        "[run]\ncommand = evolve\n[model]\nname = qou\n[evolve]\nrel_tol = 1e-8\ntmies = 1\n");
    CHECK(msg.find("unknown key 'tmies'") != std::string::npos);
    CHECK(msg.find("'times'") != std::string::npos);
}

TEST_CASE("all problems are collected, not just the first") {
    std::string msg = problems_text(
        "[run]\n[model]\nlambda = x\n[converge]\nN_list = 4 8\n");
    CHECK(msg.find("command is required") != std::string::npos);
    CHECK(msg.find("not a number") != std::string::npos);
    CHECK(msg.find("name is required") != std::string::npos);
}

TEST_CASE("converge cross-field rules") {
    std::string base =
        "[run]\ncommand = converge\n[model]\nname = qou\n[converge]\n";
    CHECK(problems_text(base + "N_list = 4 8\nN_ref = 12\ntimes = 1\n")
              .find("N_ref must be >= 2*max(N_list)") != std::string::npos);
    CHECK(problems_text(base + "N_ref = 16\ntimes = 1\n").find("N_list is required") !=
          std::string::npos);
    CHECK(problems_text(base + "N_list = 4 8\nN_ref = 16\n").find("times is required") !=
          std::string::npos);
    CHECK_NOTHROW(parse_config_text(base + "N_list = 4 8\nN_ref = 16\ntimes = 1\n"));
}

TEST_CASE("structural errors are reported with line numbers") {
    std::string msg = problems_text("[run\ncommand = check\n");
    CHECK(msg.find("line 1") != std::string::npos);
    CHECK(msg.find("malformed section header") != std::string::npos);

    msg = problems_text("key = 1\n[run]\ncommand = check\n");
    CHECK(msg.find("outside any section") != std::string::npos);

    msg = problems_text("[garbage]\nx = 1\n[run]\ncommand = check\n");
    CHECK(msg.find("unknown section 'garbage'") != std::string::npos);
}

TEST_CASE("custom model round trip through the config") {
    RunConfig cfg = parse_config_text(
        "[run]\ncommand = evolve\n[model]\nname = custom\n"
        "jumps = 1*a0; 0.5*ad0\nweights = 1\n[evolve]\nN = 10\n");
    CHECK(cfg.custom_jumps == std::vector<std::string>{"1*a0", "0.5*ad0"});
    ModelSpec m = cfg.build_model();
    CHECK(m.model.jumps.size() == 2);
    CHECK(m.d == 2);
}

TEST_CASE("weighted custom model parses rational weights") {
    RunConfig cfg = parse_config_text(
        "[run]\ncommand = steady\n[model]\nname = custom\njumps = 1*a1\n"
        "weights = 1/2 1\n[steady]\nN = 6\n");
    REQUIRE(cfg.custom_weights.size() == 2);
    CHECK(cfg.custom_weights[0] == Rational(1, 2));
    CHECK(cfg.custom_weights[1] == Rational(1));
    CHECK(cfg.build_model().model.modes() == 2);
}

TEST_CASE("unknown model name fails at build time") {
    RunConfig cfg = parse_config_text(
        "[run]\ncommand = steady\n[model]\nname = mystery\n[steady]\nN = 6\n");
    CHECK_THROWS(cfg.build_model());
}

TEST_CASE("missing file raises a config error") {
    CHECK_THROWS_AS(parse_config("/nonexistent/path.ini"), ConfigError);
}
