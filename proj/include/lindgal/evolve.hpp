#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lindgal/lindblad.hpp"

namespace lindgal {

// Hermitian, PSD, unit-trace matrix on a truncated space, with tolerance
// metadata describing how strictly the invariants are enforced.
struct DensityMatrix {
    Eigen::MatrixXcd mat;
    TruncationScheme space;
    double herm_tol = 1e-10;
    double pos_tol = 1e-10;
    double trace_tol = 1e-8;

    void validate() const;  // throws on violation
    double min_eigenvalue() const;
};

struct PropagationResult {
    std::vector<std::pair<double, DensityMatrix>> states;
    double trace_drift = 0;       // max |tr - tr0| observed at outputs
    double positivity_floor = 0;  // most negative eigenvalue observed
    std::size_t rhs_evals = 0;
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;
};

// Matrix-valued raw trajectory; used where the initial matrix is a
// compression with trace < 1 (no renormalization anywhere).
struct MatrixTrajectory {
    std::vector<std::pair<double, Eigen::MatrixXcd>> states;
    double trace_drift = 0;
    double positivity_floor = 0;
    std::size_t rhs_evals = 0;
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;
};

// Adaptive Dormand-Prince 5(4) on the matrix-valued right-hand side of
// d rho/dt = L(rho). Hermiticity is restored by symmetrization after each
// accepted step; the trace is never renormalized, and drift beyond
// 10 * rel_tol * (1 + t) aborts with an error.
MatrixTrajectory propagate_matrix(const Generator& gen, const Eigen::MatrixXcd& rho0,
                                  const std::vector<double>& times, double rel_tol = 1e-10);

PropagationResult propagate(const LindbladModel& model, const TruncationScheme& space,
                            const DensityMatrix& rho0, const std::vector<double>& times,
                            double rel_tol = 1e-10);

// Exponential of the assembled superoperator; cross-check path for small D.
MatrixTrajectory propagate_expm(const Generator& gen, const Eigen::MatrixXcd& rho0,
                                const std::vector<double>& times);

struct SteadyStateOptions {
    double zero_threshold_factor = 1e-10;  // sigma < factor * ||S||_inf counts as null
    std::size_t dense_svd_max_dim = 2704;  // largest D^2 for the dense SVD path
};

struct SteadyStateResult {
    DensityMatrix state;
    int null_dimension = 1;
    bool dimension_checked = true;  // false on the large-D linear-solve path
    bool multiplicity_warning = false;
    double residual = 0;  // ||L_N(state)||_1
    std::vector<Eigen::MatrixXcd> null_ops;
};

// Null space of the vectorized truncated generator. Dense SVD extraction by
// default; above the SVD budget, a sparse bordered solve (S x = 0 with the
// trace-one row substituted) finds the unique fixed point without a
// multiplicity check.
SteadyStateResult steady_state(const LindbladModel& model, const TruncationScheme& space,
                               const SteadyStateOptions& opts = {});

}  // namespace lindgal
