#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lindgal/convergence.hpp"
#include "lindgal/models.hpp"

namespace lindgal {

// All validation problems found in a config file, not just the first.
struct ConfigError : std::runtime_error {
    std::vector<std::string> problems;
    explicit ConfigError(std::vector<std::string> p);
};

struct RunConfig {
    std::string command;  // evolve | steady | converge | apriori | check
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    int threads = 1;

    // model section
    std::string model_name;
    std::map<std::string, double> model_params;
    std::string custom_hamiltonian;
    std::vector<std::string> custom_jumps;
    std::vector<Rational> custom_weights;

    // shared propagation parameters
    int N = 40;
    double rel_tol = 1e-10;
    std::vector<double> times;
    std::vector<double> k_list;
    InitialStateSpec initial;
    bool has_initial = false;

    // converge
    std::vector<int> N_list;
    int N_ref = 0;

    // apriori
    int edge_margin = -1;
    int samples = 50;

    ModelSpec build_model() const;
};

// Flat key-value text with [section] headers; '#' starts a comment.
// Unknown keys are rejected with a nearest-key suggestion; every violated
// rule is collected before throwing.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<memory>");

}  // namespace lindgal
