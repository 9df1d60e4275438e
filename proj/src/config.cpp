#include "lindgal/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace lindgal {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream iss(s);
    std::vector<std::string> out;
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

int edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::vector<int>> dp(a.size() + 1, std::vector<int>(b.size() + 1));
    for (size_t i = 0; i <= a.size(); ++i) dp[i][0] = static_cast<int>(i);
    for (size_t j = 0; j <= b.size(); ++j) dp[0][j] = static_cast<int>(j);
    for (size_t i = 1; i <= a.size(); ++i)
        for (size_t j = 1; j <= b.size(); ++j)
            dp[i][j] = std::min({dp[i - 1][j] + 1, dp[i][j - 1] + 1,
                                 dp[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    return dp[a.size()][b.size()];
}

const std::map<std::string, std::vector<std::string>>& known_keys() {
    static const std::map<std::string, std::vector<std::string>> keys = {
        {"run", {"command", "out", "seed", "threads"}},
        {"model",
         {"name", "lambda", "mu", "kappa2", "alpha", "kappa1", "kappa1p", "kappa_b",
          "hamiltonian", "jumps", "weights"}},
        {"evolve", {"N", "rel_tol", "times", "initial", "k_list"}},
        {"steady", {"N"}},
        {"converge", {"N_list", "N_ref", "times", "initial", "k_list", "rel_tol"}},
        {"apriori", {"N", "k_list", "edge_margin", "samples"}},
    };
    return keys;
}

std::string nearest_key(const std::string& section, const std::string& key) {
    auto it = known_keys().find(section);
    if (it == known_keys().end()) return "";
    std::string best;
    int best_d = 1 << 20;
    for (const auto& k : it->second) {
        int d = edit_distance(k, key);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> p)
    : std::runtime_error([&p] {
          std::string msg = "config validation failed:";
          for (const auto& e : p) msg += "\n  - " + e;
          return msg;
      }()),
      problems(std::move(p)) {}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    cfg.config_path = origin;
    std::vector<std::string> problems;
    std::string section;
    std::istringstream stream(text);
    std::string line;
    int lineno = 0;
    std::map<std::pair<std::string, std::string>, std::string> values;

    while (std::getline(stream, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                problems.push_back("line " + std::to_string(lineno) + ": malformed section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            if (!known_keys().count(section))
                problems.push_back("line " + std::to_string(lineno) + ": unknown section '" +
                                   section + "'");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            problems.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
            continue;
        }
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (section.empty()) {
            problems.push_back("line " + std::to_string(lineno) + ": key '" + key +
                               "' outside any section");
            continue;
        }
        auto ks = known_keys().find(section);
        if (ks != known_keys().end() &&
            std::find(ks->second.begin(), ks->second.end(), key) == ks->second.end()) {
            problems.push_back("line " + std::to_string(lineno) + ": unknown key '" + key +
                               "' in [" + section + "]; nearest valid key is '" +
                               nearest_key(section, key) + "'");
            continue;
        }
        values[{section, key}] = val;
    }

    auto get = [&](const std::string& sec, const std::string& key) -> const std::string* {
        auto it = values.find({sec, key});
        return it == values.end() ? nullptr : &it->second;
    };
    auto parse_double = [&](const std::string& sec, const std::string& key, double& dst) {
        if (const std::string* v = get(sec, key)) {
            try {
                dst = std::stod(*v);
            } catch (...) {
                problems.push_back("[" + sec + "] " + key + ": not a number: '" + *v + "'");
            }
        }
    };
    auto parse_int = [&](const std::string& sec, const std::string& key, auto& dst) {
        if (const std::string* v = get(sec, key)) {
            try {
                dst = static_cast<std::decay_t<decltype(dst)>>(std::stoll(*v));
            } catch (...) {
                problems.push_back("[" + sec + "] " + key + ": not an integer: '" + *v + "'");
            }
        }
    };

    if (const std::string* v = get("run", "command")) cfg.command = *v;
    if (const std::string* v = get("run", "out")) cfg.out_dir = *v;
    parse_int("run", "seed", cfg.seed);
    parse_int("run", "threads", cfg.threads);

    if (const std::string* v = get("model", "name")) cfg.model_name = *v;
    for (const char* p : {"lambda", "mu", "kappa2", "alpha", "kappa1", "kappa1p", "kappa_b"}) {
        if (const std::string* v = get("model", p)) {
            try {
                cfg.model_params[p] = std::stod(*v);
            } catch (...) {
                problems.push_back(std::string("[model] ") + p + ": not a number: '" + *v + "'");
            }
        }
    }
    if (const std::string* v = get("model", "hamiltonian")) cfg.custom_hamiltonian = *v;
    if (const std::string* v = get("model", "jumps")) {
        std::string cur;
        for (char c : *v + ";") {
            if (c == ';') {
                std::string t = trim(cur);
                if (!t.empty()) cfg.custom_jumps.push_back(t);
                cur.clear();
            } else {
                cur += c;
            }
        }
    }
    if (const std::string* v = get("model", "weights")) {
        try {
            for (const auto& tok : split_ws(*v)) cfg.custom_weights.push_back(parse_rational(tok));
        } catch (...) {
            problems.push_back("[model] weights: malformed rational list '" + *v + "'");
        }
    }

    const std::string cmd_sec = cfg.command == "converge" || cfg.command == "apriori" ||
                                        cfg.command == "steady" || cfg.command == "evolve"
                                    ? cfg.command
                                    : "evolve";
    parse_int(cmd_sec, "N", cfg.N);
    parse_double(cmd_sec, "rel_tol", cfg.rel_tol);
    parse_int(cmd_sec, "edge_margin", cfg.edge_margin);
    parse_int(cmd_sec, "samples", cfg.samples);
    if (const std::string* v = get(cmd_sec, "times")) {
        try {
            for (const auto& tok : split_ws(*v)) cfg.times.push_back(std::stod(tok));
        } catch (...) {
            problems.push_back("[" + cmd_sec + "] times: malformed number list");
        }
    }
    if (const std::string* v = get(cmd_sec, "k_list")) {
        try {
            for (const auto& tok : split_ws(*v)) cfg.k_list.push_back(std::stod(tok));
        } catch (...) {
            problems.push_back("[" + cmd_sec + "] k_list: malformed number list");
        }
    }
    if (const std::string* v = get(cmd_sec, "initial")) {
        try {
            cfg.initial = InitialStateSpec::parse(*v);
            cfg.has_initial = true;
        } catch (const std::exception& e) {
            problems.push_back("[" + cmd_sec + "] initial: " + e.what());
        }
    }
    if (const std::string* v = get("converge", "N_list")) {
        try {
            for (const auto& tok : split_ws(*v)) cfg.N_list.push_back(std::stoi(tok));
        } catch (...) {
            problems.push_back("[converge] N_list: malformed integer list");
        }
    }
    parse_int("converge", "N_ref", cfg.N_ref);

    // cross-field rules
    static const std::vector<std::string> commands = {"evolve", "steady", "converge", "apriori",
                                                      "check"};
    if (cfg.command.empty()) {
        problems.push_back("[run] command is required");
    } else if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end()) {
        problems.push_back("[run] unknown command '" + cfg.command + "'");
    }
    if (cfg.command != "check" && cfg.model_name.empty())
        problems.push_back("[model] name is required");
    if (cfg.command == "converge") {
        if (cfg.N_list.empty()) problems.push_back("[converge] N_list is required");
        if (cfg.N_ref == 0) problems.push_back("[converge] N_ref is required");
        if (!cfg.N_list.empty() && cfg.N_ref < 2 * *std::max_element(cfg.N_list.begin(),
                                                                     cfg.N_list.end()))
            problems.push_back(
                "[converge] N_ref must be >= 2*max(N_list): the reference solution must dominate "
                "the Galerkin error");
        if (cfg.times.empty()) problems.push_back("[converge] times is required");
    }
    if (!problems.empty()) throw ConfigError(std::move(problems));
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError({"cannot open config file '" + path + "'"});
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_config_text(buf.str(), path);
}

ModelSpec RunConfig::build_model() const {
    auto param = [&](const std::string& key, double fallback) {
        auto it = model_params.find(key);
        return it == model_params.end() ? fallback : it->second;
    };
    if (model_name == "qou") return qou_model(param("lambda", 1.0), param("mu", 0.5));
    if (model_name == "cat")
        return cat_model(param("kappa2", 1.0), param("alpha", 2.0), param("kappa1", 0.0),
                         param("kappa1p", 0.0));
    if (model_name == "cat_buffer")
        return cat_buffer_model(param("alpha", 2.0), param("kappa_b", 1.0));
    if (model_name == "decay") return decay_model();
    if (model_name == "custom") {
        std::vector<Rational> w = custom_weights.empty() ? std::vector<Rational>{Rational(1)}
                                                         : custom_weights;
        return custom_model("custom", custom_hamiltonian, custom_jumps, w);
    }
    throw std::invalid_argument("unknown model name '" + model_name + "'");
}

}  // namespace lindgal
