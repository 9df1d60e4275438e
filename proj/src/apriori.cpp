#include "lindgal/apriori.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "lindgal/evolve.hpp"
#include "lindgal/metrics.hpp"

namespace lindgal {

namespace {

// Basis ordering is by level, so interior states form an index prefix.
std::size_t interior_dim(const TruncationScheme& space, int edge_margin) {
    double cap = static_cast<double>(space.level() - edge_margin);
    std::size_t m = 0;
    while (m < space.dim() && space.level_value(m) <= cap + 1e-12) ++m;
    return m;
}

}  // namespace

double moment_derivative(const LindbladModel& model, const TruncationScheme& space,
                         const Eigen::MatrixXcd& rho, double k, int edge_margin,
                         bool* edge_warning) {
    if (edge_margin < 0) edge_margin = model.order();
    Generator gen(model, space, GeneratorKind::reference);
    Eigen::MatrixXcd lrho = gen.apply(rho);
    Eigen::VectorXd lam = lambda_diagonal(space, k);
    double val = (lrho.diagonal().real().array() * lam.array()).sum();
    if (edge_warning) {
        double tail = tail_mass(rho, space, space.level() - edge_margin);
        *edge_warning = tail > 1e-12 * std::max(1.0, trace_norm(rho));
    }
    return val;
}

double estimate_w(const LindbladModel& model, const TruncationScheme& space, double k,
                  int edge_margin) {
    if (edge_margin < model.order())
        throw std::invalid_argument("estimate_w: edge_margin must be >= model degree");
    Generator gen(model, space, GeneratorKind::reference);
    Eigen::MatrixXcd lam_k = lambda_diagonal(space, k).cast<std::complex<double>>().asDiagonal();
    Eigen::MatrixXcd x = gen.adjoint_apply(lam_k);
    Eigen::VectorXd scale = lambda_diagonal(space, -k / 2.0);
    Eigen::MatrixXcd g = scale.asDiagonal() * x * scale.asDiagonal();
    g = 0.5 * (g + g.adjoint()).eval();
    std::size_t m = interior_dim(space, edge_margin);
    if (m == 0) throw std::invalid_argument("estimate_w: empty interior block");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g.topLeftCorner(m, m),
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

AprioriEstimate estimate_w_sweep(const LindbladModel& model, const TruncationScheme& space,
                                 double k, int edge_margin, double tol) {
    AprioriEstimate est;
    est.k = k;
    est.edge_margin = edge_margin;
    double w1 = estimate_w(model, space, k, edge_margin);
    double w2 = estimate_w(model, space.with_level(2 * space.level()), k, edge_margin);
    est.w_k = std::max(w1, w2);
    est.valid = w2 <= w1 + tol;
    return est;
}

Eigen::MatrixXcd random_interior_state(const TruncationScheme& space, int level_cap, int rank,
                                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::size_t m = 0;
    while (m < space.dim() && space.level_value(m) <= static_cast<double>(level_cap) + 1e-12) ++m;
    if (m == 0) throw std::invalid_argument("random_interior_state: empty interior");
    const Eigen::Index d = static_cast<Eigen::Index>(space.dim());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    for (int r = 0; r < rank; ++r) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
        for (std::size_t i = 0; i < m; ++i) v(i) = std::complex<double>(gauss(rng), gauss(rng));
        rho += v * v.adjoint();
    }
    rho /= rho.trace();
    return rho;
}

AprioriEstimate estimate_uniform(const LindbladModel& model, const TruncationScheme& space,
                                 double k, int edge_margin, std::uint64_t seed, int n_samples) {
    if (edge_margin < model.order())
        throw std::invalid_argument("estimate_uniform: edge_margin must be >= model degree");
    Generator gen(model, space, GeneratorKind::reference);
    Eigen::MatrixXcd lam_k = lambda_diagonal(space, k).cast<std::complex<double>>().asDiagonal();
    Eigen::MatrixXcd x_op = gen.adjoint_apply(lam_k);
    x_op = 0.5 * (x_op + x_op.adjoint()).eval();
    Eigen::VectorXd lam = lambda_diagonal(space, k);
    std::size_t m = interior_dim(space, edge_margin);

    // constraint points (x_i, y_i): y_i <= mu - eta x_i must hold for all
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < m; ++i)
        pts.emplace_back(lam(i), x_op(i, i).real());
    int level_cap = space.level() - edge_margin;
    for (int s = 0; s < n_samples; ++s) {
        Eigen::MatrixXcd rho = random_interior_state(space, level_cap, 3, seed + 977 * s);
        double x = (rho.diagonal().real().array() * lam.array()).sum();
        double y = (rho * x_op).trace().real();
        pts.emplace_back(x, y);
    }

    AprioriEstimate est;
    est.k = k;
    est.edge_margin = edge_margin;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int g = 0; g <= 700; ++g) {
        double eta = std::pow(10.0, -4.0 + 7.0 * g / 700.0);
        double mu = 0;
        for (const auto& [x, y] : pts) mu = std::max(mu, y + eta * x);
        double ratio = mu / eta;
        if (ratio < best_ratio) {
            best_ratio = ratio;
            est.mu_k = mu;
            est.eta_k = eta;
        }
    }
    est.valid = std::isfinite(best_ratio) && est.eta_k > 0;
    est.w_k = estimate_w(model, space, k, edge_margin);
    return est;
}

std::vector<std::pair<double, double>> semigroup_bound_check(
    const LindbladModel& model, const TruncationScheme& space, const Eigen::MatrixXcd& rho0,
    double k, const std::vector<double>& times, double w_k, double rel_tol) {
    Generator gen(model, space, GeneratorKind::galerkin);
    MatrixTrajectory traj = propagate_matrix(gen, rho0, times, rel_tol);
    double norm0 = sobolev_trace_norm(rho0, space, k);
    std::vector<std::pair<double, double>> out;
    for (const auto& [t, rho] : traj.states) {
        double ratio = sobolev_trace_norm(rho, space, k) / (std::exp(w_k * t) * norm0);
        out.emplace_back(t, ratio);
    }
    return out;
}

}  // namespace lindgal
