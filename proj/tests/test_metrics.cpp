#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lindgal/apriori.hpp"
#include "lindgal/metrics.hpp"

using namespace lindgal;

TEST_CASE("trace norm of a diagonal matrix is the absolute sum") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = 2.0;
    m(1, 1) = -3.0;
    m(2, 2) = std::complex<double>(0, 0);
    m(3, 3) = 0.5;
    CHECK(trace_norm(m) == doctest::Approx(5.5).epsilon(1e-13));
}

TEST_CASE("trace norm of a non-hermitian matrix matches hand-computed singular values") {
    // [[0, 2], [0, 0]] has singular values {2, 0}
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 1) = 2.0;
    CHECK(trace_norm(m) == doctest::Approx(2.0));

    // [[1, 1], [0, 1]]: s^2 are roots of x^2 - 3x + 1
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(2, 2);
    j(0, 0) = j(0, 1) = j(1, 1) = 1.0;
    double s1 = std::sqrt((3.0 + std::sqrt(5.0)) / 2.0);
    double s2 = std::sqrt((3.0 - std::sqrt(5.0)) / 2.0);
    CHECK(trace_norm(j) == doctest::Approx(s1 + s2));
}

TEST_CASE("hermitian fast path agrees with the SVD path") {
    TruncationScheme s(12);
    Eigen::MatrixXcd h = random_interior_state(s, 12, 6, 31);
    h -= 0.1 * Eigen::MatrixXcd::Identity(12, 12);  // indefinite hermitian
    // force the generic path by adding a tiny non-hermitian perturbation
    Eigen::MatrixXcd almost = h;
    almost(0, 1) += 1e-9;
    CHECK(trace_norm(h) == doctest::Approx(trace_norm(almost)).epsilon(1e-6));
}

TEST_CASE("trace norm rejects bad input") {
    CHECK_THROWS(trace_norm(Eigen::MatrixXcd::Zero(2, 3)));
    Eigen::MatrixXcd nan = Eigen::MatrixXcd::Zero(2, 2);
    nan(0, 0) = std::nan("");
    CHECK_THROWS(trace_norm(nan));
}

TEST_CASE("Sobolev trace norm of a diagonal state is the weighted moment") {
    TruncationScheme s(6);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(6, 6);
    double expect = 0;
    for (int n = 0; n < 6; ++n) {
        double p = 1.0 / 6.0;
        rho(n, n) = p;
        expect += p * std::pow(1.0 + n, 3);
    }
    CHECK(sobolev_trace_norm(rho, s, 3) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(sobolev_trace_norm(rho, s, 0) == doctest::Approx(1.0));
}

TEST_CASE("tail mass isolates the part above the cutoff") {
    TruncationScheme s(10);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(10, 10);
    rho(2, 2) = 0.7;
    rho(8, 8) = 0.3;  // level 9 > cutoff 5
    CHECK(tail_mass(rho, s, 5) == doctest::Approx(0.3).epsilon(1e-13));
    CHECK(tail_mass(rho, s, 9) == doctest::Approx(0.0));
}

TEST_CASE("projector decay ratio equals the first-excluded-level formula") {
    TruncationScheme s(50);
    // diagonal case: ||Λ^{s1/2} P⊥ Λ^{-s2/2}|| = (N'+1)^{-(s2-s1)/2},
    // so the reported ratio is (N'/(N'+1))^{(s2-s1)/2}
    auto r = projector_decay_check(s, 0, 2, {10, 20});
    REQUIRE(r.size() == 2);
    CHECK(r[0].second == doctest::Approx(10.0 / 11.0));
    CHECK(r[1].second == doctest::Approx(20.0 / 21.0));
    // s1 == s2: the projector is not small at all, ratio exactly 1
    auto eq = projector_decay_check(s, 2, 2, {10});
    CHECK(eq[0].second == doctest::Approx(1.0));
}

TEST_CASE("projector decay ratios stay below one on a weighted scheme") {
    TruncationScheme s({Rational(1, 2), Rational(1)}, 30);
    for (auto& [np, ratio] : projector_decay_check(s, 1, 4, {5, 10, 20}))
        CHECK(ratio <= 1.0 + 1e-12);
}

TEST_CASE("sandwich bound holds with observed slack") {
    TruncationScheme s(15);
    FockOperator a = build_annihilation(s, 0);
    Eigen::MatrixXcd rho = random_interior_state(s, 15, 5, 41);
    auto [lhs, rhs] = sandwich_bound_check(a, a, rho, s, 2);
    CHECK(lhs <= rhs * (1 + 1e-12));
    CHECK(lhs > 0);
}

TEST_CASE("norm report aggregates the individual metrics") {
    TruncationScheme s(8);
    Eigen::MatrixXcd rho = random_interior_state(s, 8, 3, 53);
    NormReport rep = norm_report(rho, s, {0, 2}, {4});
    CHECK(rep.trace_norm == doctest::Approx(trace_norm(rho)));
    CHECK(rep.sobolev_norms.at(2) == doctest::Approx(sobolev_trace_norm(rho, s, 2)));
    CHECK(rep.tail.at(4) == doctest::Approx(tail_mass(rho, s, 4)));
}
