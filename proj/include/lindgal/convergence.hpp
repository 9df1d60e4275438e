#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "lindgal/evolve.hpp"
#include "lindgal/models.hpp"

namespace lindgal {

// Initial-state recipe. Non-custom kinds populate mode 0 and leave other
// modes in vacuum.
struct InitialStateSpec {
    enum class Kind { coherent, thermal, algebraic_tail, fock, custom };
    Kind kind = Kind::coherent;
    double alpha = 0;      // coherent
    double nbar = 0;       // thermal
    double tail_k = 0;     // algebraic tail regularity index
    int fock_n = 0;        // fock
    Eigen::MatrixXcd custom;

    // "coherent(2)", "thermal(0.5)", "algebraic_tail(6)", "fock(3)"
    static InitialStateSpec parse(const std::string& text);
    std::string to_string() const;
};

// coherent: c_n = e^{-|a|^2/2} a^n/sqrt(n!), renormalized on the space.
// thermal(nbar): diagonal geometric. algebraic_tail(k): diagonal
// p_n ∝ (1+n)^{-(k+1.1)}, in W^{k,1} but barely. fock(n): |n><n|.
DensityMatrix make_initial_state(const InitialStateSpec& spec, const TruncationScheme& space);

struct StudyConfig {
    ModelSpec model;
    InitialStateSpec initial;
    std::vector<int> N_list;       // increasing
    int N_ref = 0;                 // >= 2 * max(N_list)
    std::vector<double> times;     // increasing, > 0
    std::vector<double> k_list;    // Sobolev indices reported for rho_ref(t)
    double rel_tol = 1e-10;
    int threads = 1;

    void validate() const;  // throws listing the first violated rule
};

struct ConvergenceRecord {
    int N = 0;
    double t = 0;
    double error = 0;
    double error_over_t = 0;
};

struct RateFit {
    double slope = 0;
    double intercept = 0;
    double rms_residual = 0;
    int points_used = 0;
    bool ok = false;
};

struct ConvergenceReport {
    std::vector<ConvergenceRecord> records;           // sorted by (N, t)
    std::map<double, double> proxy_error;             // t -> ||rho_ref - rho_ref/2||_1
    std::map<double, std::map<double, double>> ref_sobolev;  // t -> k -> norm
    std::map<double, RateFit> fits;                   // per t
    std::map<int, double> initial_truncation;         // N -> ||rho0 - P_N rho0 P_N||_1
    std::map<int, double> initial_tail;               // N -> ||P_N^perp rho0||_1
    double predicted_rate = 0;
    bool reliable = true;
    double max_trace_drift = 0;       // worst drift over every propagation in the study
    double min_positivity_floor = 0;  // most negative eigenvalue seen anywhere
};

// The headline experiment: propagate at every N and at N_ref, difference in
// the reference space with zero-padding, fit log-log rates per time.
ConvergenceReport run_study(const StudyConfig& cfg);

// ||(L - L_N)(rho)||_1 on the ambient space, with L the reference generator
// of the ambient space and L_N built from operators truncated at `cutoff`.
double duhamel_residual(const LindbladModel& model, const TruncationScheme& space_big,
                        const Eigen::MatrixXcd& rho, int cutoff);

// Least-squares slope of log(error) vs log(N), excluding errors at or below
// the numerical floor of 1e-12. Needs >= 3 usable points.
RateFit fit_rate(const std::vector<int>& Ns, const std::vector<double>& errors);

void write_report_csv(const ConvergenceReport& report, const StudyConfig& cfg,
                      const std::string& path);
void write_plotdata(const ConvergenceReport& report, const std::string& path);

}  // namespace lindgal
