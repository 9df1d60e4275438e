#include "lindgal/runner.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "lindgal/apriori.hpp"
#include "lindgal/metrics.hpp"

namespace lindgal {

namespace {

constexpr const char* kVersion = "lindgal 0.1.0";

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void run_evolve(const RunConfig& cfg, const std::filesystem::path& out) {
    ModelSpec spec = cfg.build_model();
    TruncationScheme space(spec.model.mode_weights, cfg.N);
    InitialStateSpec init = cfg.has_initial ? cfg.initial : InitialStateSpec::parse("fock(0)");
    DensityMatrix rho0 = make_initial_state(init, space);
    std::vector<double> times = cfg.times.empty() ? std::vector<double>{1.0} : cfg.times;
    PropagationResult result = propagate(spec.model, space, rho0, times, cfg.rel_tol);

    std::ofstream f(out / "trajectory.csv");
    f << "time,trace,min_eig";
    for (double k : cfg.k_list) f << ",sobolev_moment_k" << k;
    f << "\n";
    for (const auto& [t, dm] : result.states) {
        f << fmt17(t) << "," << fmt17(dm.mat.trace().real()) << ","
          << fmt17(dm.min_eigenvalue());
        for (double k : cfg.k_list) {
            Eigen::VectorXd lam = lambda_diagonal(space, k);
            f << "," << fmt17((dm.mat.diagonal().real().array() * lam.array()).sum());
        }
        f << "\n";
    }
}

void run_steady(const RunConfig& cfg, const std::filesystem::path& out) {
    ModelSpec spec = cfg.build_model();
    TruncationScheme space(spec.model.mode_weights, cfg.N);
    SteadyStateResult result = steady_state(spec.model, space);

    std::ofstream sum(out / "steady_summary.csv");
    sum << "model,N,dim,null_dimension,dimension_checked,multiplicity_warning,residual\n";
    sum << spec.name << "," << cfg.N << "," << space.dim() << "," << result.null_dimension << ","
        << (result.dimension_checked ? 1 : 0) << "," << (result.multiplicity_warning ? 1 : 0)
        << "," << fmt17(result.residual) << "\n";

    std::ofstream f(out / "steady_state.csv");
    f << "index,level,population\n";
    for (std::size_t i = 0; i < space.dim(); ++i)
        f << i << "," << fmt17(space.level_value(i)) << ","
          << fmt17(result.state.mat(i, i).real()) << "\n";
}

void run_converge(const RunConfig& cfg, const std::filesystem::path& out) {
    StudyConfig study{cfg.build_model(),
                      cfg.has_initial ? cfg.initial : InitialStateSpec::parse("coherent(1)"),
                      cfg.N_list,
                      cfg.N_ref,
                      cfg.times,
                      cfg.k_list,
                      cfg.rel_tol,
                      cfg.threads};
    ConvergenceReport report = run_study(study);
    write_report_csv(report, study, (out / "report.csv").string());
    write_plotdata(report, (out / "plotdata.csv").string());
    if (!report.reliable)
        std::cerr << "warning: study flagged unreliable (proxy error not dominated)\n";
}

void run_apriori(const RunConfig& cfg, const std::filesystem::path& out) {
    ModelSpec spec = cfg.build_model();
    TruncationScheme space(spec.model.mode_weights, cfg.N);
    int margin = cfg.edge_margin >= 0 ? cfg.edge_margin : spec.d;
    std::vector<double> ks = cfg.k_list.empty() ? std::vector<double>{1, 2, 4} : cfg.k_list;

    std::ofstream f(out / "apriori.csv");
    f << "model,k,N,w_k,mu_k,eta_k,valid\n";
    for (double k : ks) {
        AprioriEstimate sweep = estimate_w_sweep(spec.model, space, k, margin);
        AprioriEstimate uni = estimate_uniform(spec.model, space, k, margin, cfg.seed,
                                               cfg.samples);
        f << spec.name << "," << fmt17(k) << "," << cfg.N << "," << fmt17(sweep.w_k) << ","
          << fmt17(uni.mu_k) << "," << fmt17(uni.eta_k) << ","
          << ((sweep.valid && uni.valid) ? 1 : 0) << "\n";
    }
}

}  // namespace

int run_invariant_checks() {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
        if (!ok) failures++;
    };

    // exact canonical commutation after compression
    for (int n : {5, 20, 100}) {
        TruncationScheme space(n);
        NCPoly comm = NCPoly::annihilation(0, 1) * NCPoly::creation(0, 1) +
                      std::complex<double>(-1.0) * NCPoly::number(0, 1);
        Eigen::MatrixXcd c = build_poly_operator(space, comm).mat;
        Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(space.dim(), space.dim());
        check("commutation [a,a†] = Id at N=" + std::to_string(n),
              (c - id).cwiseAbs().maxCoeff() <= 1e-12);
    }

    // projector decay ratios <= 1
    {
        bool ok = true;
        TruncationScheme space(220);
        for (double s1 : {0.0, 1.0, 2.0, 4.0})
            for (double s2 : {0.0, 1.0, 2.0, 4.0}) {
                if (s2 < s1) continue;
                for (auto& [np, ratio] :
                     projector_decay_check(space, s1, s2, {5, 10, 50, 100, 200}))
                    ok = ok && ratio <= 1.0 + 1e-12;
            }
        check("projector decay ratio <= 1", ok);
    }

    ModelSpec qou = qou_model(1.0, 0.5);
    TruncationScheme small(10);
    Generator gen(qou.model, small, GeneratorKind::galerkin);

    // superoperator agrees with the direct action
    {
        Eigen::MatrixXcd s = gen.superoperator();
        Eigen::MatrixXcd rho = random_interior_state(small, 10, 4, 7);
        Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
        Eigen::VectorXcd sv = s * v;
        Eigen::MatrixXcd via_s = Eigen::Map<const Eigen::MatrixXcd>(sv.data(), 10, 10);
        check("superoperator/action agreement",
              (via_s - gen.apply(rho)).cwiseAbs().maxCoeff() <= 1e-12);
        Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(10, 10);
        Eigen::VectorXcd vid = Eigen::Map<const Eigen::VectorXcd>(id.data(), id.size());
        check("vec(Id) is a left null vector of S",
              (vid.adjoint() * s).cwiseAbs().maxCoeff() <= 1e-10);
    }

    // trace duality
    {
        Eigen::MatrixXcd rho = random_interior_state(small, 10, 3, 11);
        Eigen::MatrixXcd x = random_interior_state(small, 10, 3, 13);
        std::complex<double> lhs = (gen.apply(rho) * x).trace();
        std::complex<double> rhs = (rho * gen.adjoint_apply(x)).trace();
        check("trace duality of L and L*", std::abs(lhs - rhs) <= 1e-10);
    }

    // CPTP contraction of the propagated semigroup
    {
        Eigen::MatrixXcd r1 = random_interior_state(small, 8, 2, 21);
        Eigen::MatrixXcd r2 = random_interior_state(small, 8, 2, 23);
        MatrixTrajectory t1 = propagate_matrix(gen, r1, {1.0}, 1e-10);
        MatrixTrajectory t2 = propagate_matrix(gen, r2, {1.0}, 1e-10);
        double before = trace_norm(r1 - r2);
        double after = trace_norm(t1.states[0].second - t2.states[0].second);
        check("trace-norm contraction", after <= before + 1e-9);
    }

    // steady state of the decay model is the vacuum
    {
        SteadyStateResult ss = steady_state(decay_model().model, TruncationScheme(8));
        bool ok = ss.null_dimension == 1 && std::abs(ss.state.mat(0, 0).real() - 1.0) <= 1e-10;
        check("pure decay fixed point = vacuum", ok);
    }

    std::cout << (failures == 0 ? "all invariants passed\n"
                                : std::to_string(failures) + " invariant(s) failed\n");
    return failures;
}

int execute(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    if (cfg.command == "check") return run_invariant_checks() == 0 ? 0 : 1;

    fs::path out(cfg.out_dir);
    fs::create_directories(out);
    auto start = std::chrono::steady_clock::now();
    {
        // manifest first, so interrupted runs are detectable
        std::ofstream m(out / "manifest.txt");
        m << "version = " << kVersion << "\n";
        m << "command = " << cfg.command << "\n";
        m << "config = " << cfg.config_path << "\n";
        m << "seed = " << cfg.seed << "\n";
        m << "threads = " << cfg.threads << "\n";
        m << "timestamp = "
          << std::chrono::duration_cast<std::chrono::seconds>(
                 std::chrono::system_clock::now().time_since_epoch())
                 .count()
          << "\n";
        m << "status = started\n";
    }
    try {
        if (cfg.command == "evolve")
            run_evolve(cfg, out);
        else if (cfg.command == "steady")
            run_steady(cfg, out);
        else if (cfg.command == "converge")
            run_converge(cfg, out);
        else if (cfg.command == "apriori")
            run_apriori(cfg, out);
        else
            throw std::invalid_argument("unknown command '" + cfg.command + "'");
    } catch (const std::exception& e) {
        std::ofstream err(out / "error_report.txt");
        err << "command = " << cfg.command << "\n";
        err << "model = " << cfg.model_name << "\n";
        err << "error = " << e.what() << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    auto wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ofstream m(out / "manifest.txt", std::ios::app);
    m << "wall_time_s = " << fmt17(wall) << "\n";
    m << "status = completed\n";
    return 0;
}

}  // namespace lindgal
