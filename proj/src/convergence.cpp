#include "lindgal/convergence.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "lindgal/metrics.hpp"

namespace lindgal {

InitialStateSpec InitialStateSpec::parse(const std::string& text) {
    auto open = text.find('(');
    auto close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw std::invalid_argument("initial state spec '" + text + "': expected kind(value)");
    std::string kind = text.substr(0, open);
    double value = std::stod(text.substr(open + 1, close - open - 1));
    InitialStateSpec s;
    if (kind == "coherent") {
        s.kind = Kind::coherent;
        s.alpha = value;
    } else if (kind == "thermal") {
        s.kind = Kind::thermal;
        s.nbar = value;
    } else if (kind == "algebraic_tail") {
        s.kind = Kind::algebraic_tail;
        s.tail_k = value;
    } else if (kind == "fock") {
        s.kind = Kind::fock;
        s.fock_n = static_cast<int>(value);
    } else {
        throw std::invalid_argument("initial state spec: unknown kind '" + kind + "'");
    }
    return s;
}

std::string InitialStateSpec::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::coherent: os << "coherent(" << alpha << ")"; break;
        case Kind::thermal: os << "thermal(" << nbar << ")"; break;
        case Kind::algebraic_tail: os << "algebraic_tail(" << tail_k << ")"; break;
        case Kind::fock: os << "fock(" << fock_n << ")"; break;
        case Kind::custom: os << "custom"; break;
    }
    return os.str();
}

DensityMatrix make_initial_state(const InitialStateSpec& spec, const TruncationScheme& space) {
    const Eigen::Index d = static_cast<Eigen::Index>(space.dim());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);

    auto mode0_only = [&](std::size_t i) {
        const auto& n = space.multi_index(i);
        for (std::size_t m = 1; m < n.size(); ++m)
            if (n[m] != 0) return false;
        return true;
    };

    switch (spec.kind) {
        case InitialStateSpec::Kind::coherent: {
            Eigen::VectorXcd c = Eigen::VectorXcd::Zero(d);
            double log_norm = -spec.alpha * spec.alpha / 2.0;
            double captured = 0;
            for (Eigen::Index i = 0; i < d; ++i) {
                if (!mode0_only(i)) continue;
                int n = space.multi_index(i)[0];
                double log_amp = log_norm;
                for (int j = 1; j <= n; ++j)
                    log_amp += std::log(spec.alpha) - 0.5 * std::log(static_cast<double>(j));
                double amp = spec.alpha == 0 ? (n == 0 ? 1.0 : 0.0) : std::exp(log_amp);
                c(i) = amp;
                captured += amp * amp;
            }
            if (1.0 - captured > 1e-6)
                throw std::invalid_argument("make_initial_state: coherent alpha too large for the space (tail mass " +
                                            std::to_string(1.0 - captured) + ")");
            c /= c.norm();
            rho = c * c.adjoint();
            break;
        }
        case InitialStateSpec::Kind::thermal: {
            if (spec.nbar < 0) throw std::invalid_argument("make_initial_state: negative nbar");
            double q = spec.nbar / (1.0 + spec.nbar);
            double captured = 0;
            for (Eigen::Index i = 0; i < d; ++i) {
                if (!mode0_only(i)) continue;
                int n = space.multi_index(i)[0];
                double p = (1.0 - q) * std::pow(q, n);
                rho(i, i) = p;
                captured += p;
            }
            if (1.0 - captured > 1e-6)
                throw std::invalid_argument("make_initial_state: thermal nbar too large for the space");
            rho /= rho.trace();
            break;
        }
        case InitialStateSpec::Kind::algebraic_tail: {
            // p_n ∝ (1+n)^{-(k+1+eps)} with eps = 0.1: in W^{k,1} but barely
            const double expo = spec.tail_k + 1.1;
            for (Eigen::Index i = 0; i < d; ++i) {
                if (!mode0_only(i)) continue;
                int n = space.multi_index(i)[0];
                rho(i, i) = std::pow(1.0 + n, -expo);
            }
            rho /= rho.trace();
            break;
        }
        case InitialStateSpec::Kind::fock: {
            std::vector<int> idx(space.modes(), 0);
            idx[0] = spec.fock_n;
            long long i = space.index_of(idx);
            if (i < 0)
                throw std::invalid_argument("make_initial_state: fock level outside the space");
            rho(i, i) = 1.0;
            break;
        }
        case InitialStateSpec::Kind::custom: {
            if (spec.custom.rows() != d)
                throw std::invalid_argument("make_initial_state: custom matrix dimension mismatch");
            rho = spec.custom;
            break;
        }
    }
    return DensityMatrix{std::move(rho), space};
}

void StudyConfig::validate() const {
    if (N_list.size() < 1) throw std::invalid_argument("study: empty N_list");
    for (std::size_t i = 1; i < N_list.size(); ++i)
        if (N_list[i] <= N_list[i - 1])
            throw std::invalid_argument("study: N_list must be strictly increasing");
    if (N_ref < 2 * N_list.back())
        throw std::invalid_argument(
            "study: N_ref must be >= 2*max(N_list) so the reference dominates the Galerkin error");
    if (times.empty()) throw std::invalid_argument("study: empty times");
    for (std::size_t i = 0; i < times.size(); ++i)
        if (times[i] <= 0 || (i > 0 && times[i] <= times[i - 1]))
            throw std::invalid_argument("study: times must be positive and increasing");
}

namespace {

Eigen::MatrixXcd pad_to(const Eigen::MatrixXcd& m, Eigen::Index d) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    out.topLeftCorner(m.rows(), m.cols()) = m;
    return out;
}

}  // namespace

ConvergenceReport run_study(const StudyConfig& cfg) {
    cfg.validate();
    const LindbladModel& model = cfg.model.model;
    TruncationScheme ref_space(model.mode_weights, cfg.N_ref);
    DensityMatrix rho0 = make_initial_state(cfg.initial, ref_space);
    const Eigen::Index dref = static_cast<Eigen::Index>(ref_space.dim());

    std::vector<int> all_N = cfg.N_list;
    const int half = cfg.N_ref / 2;
    bool extra_half = true;
    for (int n : cfg.N_list)
        if (n == half) extra_half = false;
    if (extra_half) all_N.push_back(half);

    auto propagate_at = [&](int N) {
        TruncationScheme space = ref_space.with_level(N);
        const Eigen::Index dn = static_cast<Eigen::Index>(space.dim());
        Eigen::MatrixXcd init = rho0.mat.topLeftCorner(dn, dn);  // P_N rho0 P_N, no renorm
        Generator gen(model, space, GeneratorKind::galerkin);
        return propagate_matrix(gen, init, cfg.times, cfg.rel_tol);
    };

    std::map<int, MatrixTrajectory> traj;
    if (cfg.threads > 1) {
        std::vector<std::pair<int, std::future<MatrixTrajectory>>> futs;
        for (int n : all_N)
            futs.emplace_back(n, std::async(std::launch::async, propagate_at, n));
        for (auto& [n, f] : futs) traj[n] = f.get();
    } else {
        for (int n : all_N) traj[n] = propagate_at(n);
    }
    Generator gen_ref(model, ref_space, GeneratorKind::galerkin);
    MatrixTrajectory ref = propagate_matrix(gen_ref, rho0.mat, cfg.times, cfg.rel_tol);

    ConvergenceReport report;
    report.max_trace_drift = ref.trace_drift;
    report.min_positivity_floor = ref.positivity_floor;
    for (const auto& kv : traj) {
        report.max_trace_drift = std::max(report.max_trace_drift, kv.second.trace_drift);
        report.min_positivity_floor =
            std::min(report.min_positivity_floor, kv.second.positivity_floor);
    }
    for (int n : cfg.N_list) {
        const auto& tr = traj.at(n);
        for (std::size_t ti = 0; ti < cfg.times.size(); ++ti) {
            double t = cfg.times[ti];
            double err = trace_norm(pad_to(tr.states[ti].second, dref) - ref.states[ti].second);
            report.records.push_back({n, t, err, err / t});
        }
        TruncationScheme sub = ref_space.with_level(n);
        Eigen::Index dn = static_cast<Eigen::Index>(sub.dim());
        report.initial_truncation[n] =
            trace_norm(pad_to(rho0.mat.topLeftCorner(dn, dn), dref) - rho0.mat);
        report.initial_tail[n] = tail_mass(rho0.mat, ref_space, n);
    }
    const auto& half_tr = traj.at(half);
    for (std::size_t ti = 0; ti < cfg.times.size(); ++ti) {
        double t = cfg.times[ti];
        report.proxy_error[t] =
            trace_norm(pad_to(half_tr.states[ti].second, dref) - ref.states[ti].second);
        for (double k : cfg.k_list)
            report.ref_sobolev[t][k] = sobolev_trace_norm(ref.states[ti].second, ref_space, k);
    }

    for (std::size_t ti = 0; ti < cfg.times.size(); ++ti) {
        double t = cfg.times[ti];
        std::vector<int> Ns;
        std::vector<double> errs;
        for (const auto& r : report.records)
            if (r.t == t) {
                Ns.push_back(r.N);
                errs.push_back(r.error);
            }
        report.fits[t] = fit_rate(Ns, errs);
    }

    double k_study = cfg.initial.kind == InitialStateSpec::Kind::algebraic_tail
                         ? cfg.initial.tail_k
                         : (cfg.k_list.empty() ? cfg.model.d : cfg.k_list.back());
    report.predicted_rate = cfg.model.predicted_exponent(k_study);

    double min_err = std::numeric_limits<double>::infinity();
    for (const auto& r : report.records) min_err = std::min(min_err, r.error);
    double max_proxy = 0;
    for (const auto& [t, p] : report.proxy_error) max_proxy = std::max(max_proxy, p);
    report.reliable = max_proxy <= 0.01 * min_err;
    return report;
}

double duhamel_residual(const LindbladModel& model, const TruncationScheme& space_big,
                        const Eigen::MatrixXcd& rho, int cutoff) {
    if (cutoff > space_big.level())
        throw std::invalid_argument("duhamel_residual: cutoff exceeds ambient level");
    Generator gen_ref(model, space_big, GeneratorKind::reference);
    TruncationScheme sub = space_big.with_level(cutoff);
    Generator gen_sub(model, sub, GeneratorKind::galerkin);
    const Eigen::Index d = static_cast<Eigen::Index>(space_big.dim());

    Eigen::MatrixXcd h = pad_to(gen_sub.hamiltonian_matrix(), d);
    const std::complex<double> mi(0.0, -1.0);
    Eigen::MatrixXcd truncated = mi * (h * rho - rho * h);
    for (std::size_t j = 0; j < gen_sub.jump_matrices().size(); ++j) {
        Eigen::MatrixXcd l = pad_to(gen_sub.jump_matrices()[j], d);
        Eigen::MatrixXcd g = pad_to(gen_sub.jump_gram_matrices()[j], d);
        truncated += l * rho * l.adjoint() - 0.5 * (g * rho + rho * g);
    }
    return trace_norm(gen_ref.apply(rho) - truncated);
}

RateFit fit_rate(const std::vector<int>& Ns, const std::vector<double>& errors) {
    if (Ns.size() != errors.size()) throw std::invalid_argument("fit_rate: size mismatch");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        if (errors[i] > 1e-12) {
            xs.push_back(std::log(static_cast<double>(Ns[i])));
            ys.push_back(std::log(errors[i]));
        }
    }
    RateFit fit;
    fit.points_used = static_cast<int>(xs.size());
    if (xs.size() < 3) return fit;  // ok stays false
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    fit.ok = true;
    return fit;
}

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_report_csv(const ConvergenceReport& report, const StudyConfig& cfg,
                      const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_report_csv: cannot open " + path);
    f << "model,k,d,N,t,error,error_over_t,fitted_rate,predicted_rate,proxy_error\n";
    double k_study = cfg.initial.kind == InitialStateSpec::Kind::algebraic_tail
                         ? cfg.initial.tail_k
                         : (cfg.k_list.empty() ? cfg.model.d : cfg.k_list.back());
    for (const auto& r : report.records) {
        f << cfg.model.name << "," << fmt17(k_study) << "," << cfg.model.d << "," << r.N << ","
          << fmt17(r.t) << "," << fmt17(r.error) << "," << fmt17(r.error_over_t) << ","
          << fmt17(report.fits.at(r.t).slope) << "," << fmt17(report.predicted_rate) << ","
          << fmt17(report.proxy_error.at(r.t)) << "\n";
    }
}

void write_plotdata(const ConvergenceReport& report, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_plotdata: cannot open " + path);
    f << "t,log10_N,log10_error\n";
    for (const auto& r : report.records) {
        if (r.error <= 0) continue;
        f << fmt17(r.t) << "," << fmt17(std::log10(static_cast<double>(r.N))) << ","
          << fmt17(std::log10(r.error)) << "\n";
    }
}

}  // namespace lindgal
