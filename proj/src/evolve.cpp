#include "lindgal/evolve.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

#include "lindgal/linalg.hpp"
#include "lindgal/metrics.hpp"

namespace lindgal {

void DensityMatrix::validate() const {
    if (mat.rows() != static_cast<Eigen::Index>(space.dim()) || mat.rows() != mat.cols())
        throw std::invalid_argument("DensityMatrix: dimension mismatch");
    if (!mat.allFinite()) throw std::invalid_argument("DensityMatrix: non-finite entries");
    double herm = (mat - mat.adjoint().eval()).cwiseAbs().maxCoeff();
    if (herm > herm_tol)
        throw std::invalid_argument("DensityMatrix: hermiticity deviation " + std::to_string(herm));
    double tr_dev = std::abs(mat.trace() - std::complex<double>(1.0));
    if (tr_dev > trace_tol)
        throw std::invalid_argument("DensityMatrix: trace deviation " + std::to_string(tr_dev));
    double mineig = min_eigenvalue();
    if (mineig < -pos_tol)
        throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(mineig));
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::MatrixXcd h = 0.5 * (mat + mat.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
// b - b* (5th minus embedded 4th), for the error estimate
constexpr double kE1 = kB1 - 5179.0 / 57600, kE3 = kB3 - 7571.0 / 16695,
                 kE4 = kB4 - 393.0 / 640, kE5 = kB5 + 92097.0 / 339200,
                 kE6 = kB6 - 187.0 / 2100, kE7 = -1.0 / 40;

double min_eig(const Eigen::MatrixXcd& rho) {
    Eigen::MatrixXcd h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace

MatrixTrajectory propagate_matrix(const Generator& gen, const Eigen::MatrixXcd& rho0,
                                  const std::vector<double>& times, double rel_tol) {
    const Eigen::Index d = static_cast<Eigen::Index>(gen.dim());
    if (rho0.rows() != d || rho0.cols() != d)
        throw std::invalid_argument("propagate: initial matrix dimension mismatch");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0 || (i > 0 && times[i] <= times[i - 1]))
            throw std::invalid_argument("propagate: times must be strictly increasing and >= 0");
    }

    MatrixTrajectory result;
    const double tr0 = rho0.trace().real();
    const double atol = 1e-14;

    Eigen::MatrixXcd y = 0.5 * (rho0 + rho0.adjoint());
    double t = 0;
    double h = 0;

    auto record = [&](double tt) {
        result.states.emplace_back(tt, y);
        double drift = std::abs(y.trace().real() - tr0);
        result.trace_drift = std::max(result.trace_drift, drift);
        result.positivity_floor = std::min(result.positivity_floor, min_eig(y));
        if (drift > 10 * rel_tol * (1.0 + tt))
            throw std::runtime_error("propagate: trace drift " + std::to_string(drift) +
                                     " exceeds bound at t=" + std::to_string(tt));
    };

    Eigen::MatrixXcd k1, k2, k3, k4, k5, k6, k7;
    for (double t_out : times) {
        if (t_out == 0.0) {
            record(0.0);
            continue;
        }
        while (t < t_out) {
            k1 = gen.apply(y);
            result.rhs_evals++;
            if (h == 0) {
                double rate = k1.norm() / std::max(1.0, y.norm());
                h = std::min(0.01, 0.01 / std::max(1e-8, rate));
            }
            h = std::min(h, t_out - t);
            bool accepted = false;
            while (!accepted) {
                k2 = gen.apply(y + h * kA21 * k1);
                k3 = gen.apply(y + h * (kA31 * k1 + kA32 * k2));
                k4 = gen.apply(y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
                k5 = gen.apply(y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
                k6 = gen.apply(y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
                Eigen::MatrixXcd y5 =
                    y + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
                k7 = gen.apply(y5);
                result.rhs_evals += 6;
                Eigen::MatrixXcd err_mat =
                    h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);
                double sc = atol + rel_tol * std::max(y.norm(), y5.norm());
                double err = err_mat.norm() / sc;
                if (!std::isfinite(err)) err = 1e10;
                if (err <= 1.0) {
                    accepted = true;
                    result.steps_accepted++;
                    t += h;
                    y = 0.5 * (y5 + y5.adjoint());
                    if (!y.allFinite())
                        throw std::runtime_error("propagate: non-finite state at t=" +
                                                 std::to_string(t));
                } else {
                    result.steps_rejected++;
                }
                double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
                h *= std::clamp(fac, 0.2, 5.0);
                if (accepted) h = std::min(h, t_out - t);
                if (h <= 0 && t < t_out) h = (t_out - t);
                if (h < 1e-14 && !accepted)
                    throw std::runtime_error("propagate: step size underflow at t=" +
                                             std::to_string(t));
            }
        }
        record(t_out);
    }
    return result;
}

PropagationResult propagate(const LindbladModel& model, const TruncationScheme& space,
                            const DensityMatrix& rho0, const std::vector<double>& times,
                            double rel_tol) {
    rho0.validate();
    Eigen::MatrixXcd start = rho0.mat;
    if (!(rho0.space == space)) {
        // compress or pad onto the requested space (basis prefix property)
        if (!rho0.space.same_weights(space))
            throw std::invalid_argument("propagate: initial state has different mode weights");
        const Eigen::Index d = static_cast<Eigen::Index>(space.dim());
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
        Eigen::Index c = std::min<Eigen::Index>(d, rho0.mat.rows());
        m.topLeftCorner(c, c) = rho0.mat.topLeftCorner(c, c);
        start = m;
    }
    Generator gen(model, space, GeneratorKind::galerkin);
    MatrixTrajectory traj = propagate_matrix(gen, start, times, rel_tol);
    PropagationResult out;
    out.trace_drift = traj.trace_drift;
    out.positivity_floor = traj.positivity_floor;
    out.rhs_evals = traj.rhs_evals;
    out.steps_accepted = traj.steps_accepted;
    out.steps_rejected = traj.steps_rejected;
    for (auto& [t, m] : traj.states) {
        DensityMatrix dm{std::move(m), space, 1e-9, 10 * rel_tol + 1e-9,
                         10 * rel_tol * (1 + t) + rho0.trace_tol};
        out.states.emplace_back(t, std::move(dm));
    }
    return out;
}

MatrixTrajectory propagate_expm(const Generator& gen, const Eigen::MatrixXcd& rho0,
                                const std::vector<double>& times) {
    const Eigen::Index d = static_cast<Eigen::Index>(gen.dim());
    if (rho0.rows() != d || rho0.cols() != d)
        throw std::invalid_argument("propagate_expm: dimension mismatch");
    Eigen::MatrixXcd s = gen.superoperator();
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho0.data(), d * d);
    MatrixTrajectory result;
    const double tr0 = rho0.trace().real();
    double t_prev = 0;
    for (double t : times) {
        if (t > t_prev) {
            Eigen::MatrixXcd e = (s * (t - t_prev)).exp();
            v = e * v;
            t_prev = t;
        }
        Eigen::MatrixXcd y = Eigen::Map<Eigen::MatrixXcd>(v.data(), d, d);
        y = 0.5 * (y + y.adjoint()).eval();
        result.states.emplace_back(t, y);
        result.trace_drift = std::max(result.trace_drift, std::abs(y.trace().real() - tr0));
        result.positivity_floor = std::min(result.positivity_floor, min_eig(y));
    }
    return result;
}

namespace {

Eigen::MatrixXcd unstack(const Eigen::VectorXcd& v, Eigen::Index d) {
    return Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d);
}

// sparse Kronecker accumulation coeff * (A^T or conj A) ⊗ B into triplets
void kron_triplets(std::vector<Eigen::Triplet<std::complex<double>>>& trip,
                   const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                   std::complex<double> coeff) {
    const Eigen::Index da = a.rows(), db = b.rows();
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j) {
            std::complex<double> aij = coeff * a(i, j);
            if (std::abs(aij) < 1e-300) continue;
            for (Eigen::Index k = 0; k < db; ++k)
                for (Eigen::Index l = 0; l < db; ++l) {
                    std::complex<double> bkl = b(k, l);
                    if (std::abs(bkl) < 1e-300) continue;
                    trip.emplace_back(i * db + k, j * db + l, aij * bkl);
                }
        }
}

}  // namespace

SteadyStateResult steady_state(const LindbladModel& model, const TruncationScheme& space,
                               const SteadyStateOptions& opts) {
    Generator gen(model, space, GeneratorKind::galerkin);
    const Eigen::Index d = static_cast<Eigen::Index>(space.dim());
    const Eigen::Index d2 = d * d;
    SteadyStateResult out{DensityMatrix{Eigen::MatrixXcd::Zero(d, d), space}, 1, true, false,
                          0.0, {}};

    if (static_cast<std::size_t>(d2) <= opts.dense_svd_max_dim) {
        Eigen::MatrixXcd s = gen.superoperator();
        Eigen::MatrixXcd v;
        Eigen::VectorXd sv = singular_values(s, &v);
        double smax = s.cwiseAbs().rowwise().sum().maxCoeff();  // ||S||_inf
        double thresh = opts.zero_threshold_factor * smax;
        int nullity = 0;
        for (Eigen::Index i = d2 - 1; i >= 0 && sv(i) < thresh; --i) nullity++;
        if (nullity == 0) nullity = 1;  // smallest singular vector is still the best candidate
        out.null_dimension = nullity;
        out.multiplicity_warning = nullity != 1;
        Eigen::Index best = d2 - 1;
        double best_tr = -1;
        for (int i = 0; i < nullity; ++i) {
            Eigen::VectorXcd vec = v.col(d2 - 1 - i);
            out.null_ops.push_back(unstack(vec, d));
            double tr = std::abs(out.null_ops.back().trace());
            if (tr > best_tr) {
                best_tr = tr;
                best = d2 - 1 - i;
            }
        }
        Eigen::MatrixXcd rho = unstack(v.col(best), d);
        rho = 0.5 * (rho + rho.adjoint()).eval();
        std::complex<double> tr = rho.trace();
        if (std::abs(tr) < 1e-14)
            throw std::runtime_error("steady_state: traceless null vector; cannot normalize");
        rho /= tr;
        out.state.mat = 0.5 * (rho + rho.adjoint());
    } else {
        // bordered sparse solve: substitute the trace-one row for the
        // redundant equation at vec index 0
        std::vector<Eigen::Triplet<std::complex<double>>> trip;
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
        const std::complex<double> mi(0.0, -1.0);
        const Eigen::MatrixXcd& h = gen.hamiltonian_matrix();
        if (h.cwiseAbs().maxCoeff() > 0) {
            kron_triplets(trip, id, h, mi);
            kron_triplets(trip, h.transpose(), id, -mi);
        }
        for (std::size_t j = 0; j < gen.jump_matrices().size(); ++j) {
            kron_triplets(trip, gen.jump_matrices()[j].conjugate(), gen.jump_matrices()[j], 1.0);
            kron_triplets(trip, id, gen.jump_gram_matrices()[j], -0.5);
            kron_triplets(trip, gen.jump_gram_matrices()[j].transpose(), id, -0.5);
        }
        std::vector<Eigen::Triplet<std::complex<double>>> bordered;
        bordered.reserve(trip.size() + d);
        for (const auto& t : trip)
            if (t.row() != 0) bordered.push_back(t);
        for (Eigen::Index i = 0; i < d; ++i) bordered.emplace_back(0, i * d + i, 1.0);
        Eigen::SparseMatrix<std::complex<double>> sp(d2, d2);
        sp.setFromTriplets(bordered.begin(), bordered.end());
        sp.makeCompressed();
        Eigen::SparseLU<Eigen::SparseMatrix<std::complex<double>>> lu(sp);
        if (lu.info() != Eigen::Success)
            throw std::runtime_error("steady_state: sparse factorization failed");
        Eigen::VectorXcd b = Eigen::VectorXcd::Zero(d2);
        b(0) = 1.0;
        Eigen::VectorXcd x = lu.solve(b);
        Eigen::MatrixXcd rho = unstack(x, d);
        rho = 0.5 * (rho + rho.adjoint()).eval();
        rho /= rho.trace();
        out.state.mat = rho;
        out.dimension_checked = false;
        out.null_ops.push_back(rho);
    }
    out.residual = trace_norm(gen.apply(out.state.mat));
    out.state.herm_tol = 1e-10;
    out.state.pos_tol = 1e-8;
    out.state.trace_tol = 1e-10;
    return out;
}

}  // namespace lindgal
