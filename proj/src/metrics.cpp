#include "lindgal/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace lindgal {

double trace_norm(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("trace_norm: not square");
    if (!a.allFinite()) throw std::invalid_argument("trace_norm: non-finite entries");
    double scale = a.cwiseAbs().maxCoeff();
    if (scale == 0) return 0;
    if ((a - a.adjoint().eval()).cwiseAbs().maxCoeff() <= 1e-12 * scale) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseAbs().sum();
    }
    return a.jacobiSvd().singularValues().sum();
}

double sobolev_trace_norm(const Eigen::MatrixXcd& rho, const TruncationScheme& space, double k) {
    if (k < 0) throw std::invalid_argument("sobolev_trace_norm: negative k");
    Eigen::VectorXd w = lambda_diagonal(space, k / 2.0);
    return trace_norm(w.asDiagonal() * rho * w.asDiagonal());
}

double tail_mass(const Eigen::MatrixXcd& rho, const TruncationScheme& space, int cutoff) {
    if (cutoff > space.level()) throw std::invalid_argument("tail_mass: cutoff exceeds level");
    Eigen::MatrixXcd masked = rho;
    for (std::size_t i = 0; i < space.dim(); ++i)
        if (space.level_value(i) <= static_cast<double>(cutoff) + 1e-12)
            masked.row(i).setZero();
    // P^⊥ rho is generally non-Hermitian
    return masked.jacobiSvd().singularValues().sum();
}

std::vector<std::pair<int, double>> projector_decay_check(const TruncationScheme& space,
                                                          double s1, double s2,
                                                          const std::vector<int>& cutoffs) {
    if (s1 < 0 || s1 > s2) throw std::invalid_argument("projector_decay_check: need 0 <= s1 <= s2");
    std::vector<std::pair<int, double>> out;
    for (int np : cutoffs) {
        // diagonal operator: norm = max over excluded levels of level^{-(s2-s1)/2}
        double norm = 0;
        for (std::size_t i = 0; i < space.dim(); ++i) {
            double lvl = space.level_value(i);
            if (lvl > static_cast<double>(np) + 1e-12)
                norm = std::max(norm, std::pow(lvl, -(s2 - s1) / 2.0));
        }
        out.emplace_back(np, norm * std::pow(static_cast<double>(np), (s2 - s1) / 2.0));
    }
    return out;
}

std::pair<double, double> sandwich_bound_check(const FockOperator& m0, const FockOperator& m1,
                                               const Eigen::MatrixXcd& rho,
                                               const TruncationScheme& space, double s) {
    double lhs = trace_norm(m0.mat * rho * m1.mat.adjoint());
    double rhs = operator_sobolev_norm(m0, s, 0) * sobolev_trace_norm(rho, space, s) *
                 operator_sobolev_norm(m1, s, 0);
    return {lhs, rhs};
}

NormReport norm_report(const Eigen::MatrixXcd& rho, const TruncationScheme& space,
                       const std::vector<double>& ks, const std::vector<int>& cutoffs) {
    NormReport r;
    r.trace_norm = trace_norm(rho);
    for (double k : ks) r.sobolev_norms[k] = sobolev_trace_norm(rho, space, k);
    for (int np : cutoffs) r.tail[np] = tail_mass(rho, space, np);
    return r;
}

}  // namespace lindgal
