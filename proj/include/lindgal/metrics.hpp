#pragma once

#include <Eigen/Dense>
#include <map>
#include <utility>
#include <vector>

#include "lindgal/fock.hpp"

namespace lindgal {

// Sum of singular values. Hermitian inputs take the eigenvalue fast path;
// differences of density matrices always land there.
double trace_norm(const Eigen::MatrixXcd& a);

// ||Lambda^{k/2} rho Lambda^{k/2}||_1, the W^{k,1} norm on the truncated space.
double sobolev_trace_norm(const Eigen::MatrixXcd& rho, const TruncationScheme& space, double k);

// ||P_{N'}^⊥ rho||_1.
double tail_mass(const Eigen::MatrixXcd& rho, const TruncationScheme& space, int cutoff);

// For each cutoff N': ||Lambda^{s1/2} P^⊥ Lambda^{-s2/2}||_inf * N'^{(s2-s1)/2}.
// All ratios are <= 1 (Markov-type projector decay).
std::vector<std::pair<int, double>> projector_decay_check(const TruncationScheme& space,
                                                          double s1, double s2,
                                                          const std::vector<int>& cutoffs);

// lhs = ||M0 rho M1†||_1, rhs = ||M0||_{H^s->H} ||rho||_{W^{s,1}} ||M1||_{H^s->H}.
std::pair<double, double> sandwich_bound_check(const FockOperator& m0, const FockOperator& m1,
                                               const Eigen::MatrixXcd& rho,
                                               const TruncationScheme& space, double s);

struct NormReport {
    double trace_norm = 0;
    std::map<double, double> sobolev_norms;
    std::map<int, double> tail;
};

NormReport norm_report(const Eigen::MatrixXcd& rho, const TruncationScheme& space,
                       const std::vector<double>& ks, const std::vector<int>& cutoffs);

}  // namespace lindgal
