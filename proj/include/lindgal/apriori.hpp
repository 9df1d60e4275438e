#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "lindgal/lindblad.hpp"

namespace lindgal {

struct AprioriEstimate {
    double k = 0;
    double w_k = 0;    // growth constant in tr L(rho) Lambda^k <= w_k tr rho Lambda^k
    double mu_k = 0;   // uniform variant tr L(rho) Lambda^k <= mu_k - eta_k tr rho Lambda^k
    double eta_k = 0;
    int edge_margin = 0;
    bool valid = false;
};

// tr(L(rho) Lambda^k) with the reference generator. Sets *edge_warning when
// rho carries mass within `edge_margin` levels of the cutoff, where the
// compressed generator no longer matches the untruncated one.
double moment_derivative(const LindbladModel& model, const TruncationScheme& space,
                         const Eigen::MatrixXcd& rho, double k, int edge_margin = -1,
                         bool* edge_warning = nullptr);

// Smallest w with the interior-block compression of L*(Lambda^k) - w Lambda^k
// negative semidefinite: max eigenvalue of Lambda^{-k/2} L*(Lambda^k)
// Lambda^{-k/2} on states at distance >= edge_margin from the cutoff.
double estimate_w(const LindbladModel& model, const TruncationScheme& space, double k,
                  int edge_margin);

// Same estimate at N and 2N; valid iff the value does not grow by more than
// `tol` when the truncation doubles.
AprioriEstimate estimate_w_sweep(const LindbladModel& model, const TruncationScheme& space,
                                 double k, int edge_margin, double tol = 1e-6);

// (mu_k, eta_k) for the uniform-in-time variant, fitted over interior
// diagonal point masses plus seeded random finite-rank PSD states; the pair
// minimizing mu/eta over the feasible set is returned.
AprioriEstimate estimate_uniform(const LindbladModel& model, const TruncationScheme& space,
                                 double k, int edge_margin, std::uint64_t seed = 1,
                                 int n_samples = 50);

// ratio(t) = ||rho(t)||_{W^{k,1}} / (e^{w_k t} ||rho0||_{W^{k,1}}) along a
// propagation of the Galerkin generator.
std::vector<std::pair<double, double>> semigroup_bound_check(
    const LindbladModel& model, const TruncationScheme& space, const Eigen::MatrixXcd& rho0,
    double k, const std::vector<double>& times, double w_k, double rel_tol = 1e-10);

// Random finite-rank PSD trace-one state supported on levels <= level_cap.
Eigen::MatrixXcd random_interior_state(const TruncationScheme& space, int level_cap, int rank,
                                       std::uint64_t seed);

}  // namespace lindgal
