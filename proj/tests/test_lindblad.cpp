#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "lindgal/apriori.hpp"
#include "lindgal/lindblad.hpp"
#include "lindgal/models.hpp"

using namespace lindgal;

namespace {

Eigen::MatrixXcd unstack(const Eigen::VectorXcd& v, Eigen::Index d) {
    return Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d);
}

}  // namespace

TEST_CASE("model construction validates self-adjointness of H") {
    NCPoly good = NCPoly::number(0, 1);
    CHECK_NOTHROW(LindbladModel::make(good, {}, {Rational(1)}, "n"));

    NCPoly bad = NCPoly::annihilation(0, 1);  // a is not self-adjoint
    CHECK_THROWS(LindbladModel::make(bad, {}, {Rational(1)}, "bad"));
}

TEST_CASE("order is max of Hamiltonian degree and twice the jump degree") {
    ModelSpec qou = qou_model(1.0, 0.5);
    CHECK(qou.model.hamiltonian_degree() == 0);
    CHECK(qou.model.jump_degree() == 1);
    CHECK(qou.model.order() == 2);

    ModelSpec cat = cat_model(1.0, 2.0);
    CHECK(cat.model.jump_degree() == 2);
    CHECK(cat.model.order() == 4);
}

TEST_CASE("generator preserves trace and hermiticity") {
    ModelSpec spec = qou_model(1.0, 0.5);
    TruncationScheme s(12);
    Generator gen(spec.model, s, GeneratorKind::galerkin);

    Eigen::MatrixXcd rho = random_interior_state(s, 12, 5, 3);
    Eigen::MatrixXcd out = gen.apply(rho);
    CHECK(std::abs(out.trace()) <= 1e-13);
    CHECK((out - out.adjoint()).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("galerkin and reference generators differ only near the cutoff") {
    ModelSpec spec = qou_model(1.0, 0.5);
    TruncationScheme s(20);
    Generator gal(spec.model, s, GeneratorKind::galerkin);
    Generator ref(spec.model, s, GeneratorKind::reference);

    // interior state: identical action
    Eigen::MatrixXcd inner = Eigen::MatrixXcd::Zero(20, 20);
    inner(3, 3) = 1.0;
    CHECK((gal.apply(inner) - ref.apply(inner)).cwiseAbs().maxCoeff() <= 1e-13);

    // edge state: the compressions of L†L disagree
    Eigen::MatrixXcd edge = Eigen::MatrixXcd::Zero(20, 20);
    edge(19, 19) = 1.0;
    CHECK((gal.apply(edge) - ref.apply(edge)).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("adjoint is the trace dual") {
    ModelSpec spec = cat_model(1.0, 1.0);
    TruncationScheme s(10);
    Generator gen(spec.model, s, GeneratorKind::galerkin);
    Eigen::MatrixXcd rho = random_interior_state(s, 10, 4, 5);
    Eigen::MatrixXcd x = random_interior_state(s, 10, 4, 9);
    std::complex<double> lhs = (gen.apply(rho) * x).trace();
    std::complex<double> rhs = (rho * gen.adjoint_apply(x)).trace();
    CHECK(std::abs(lhs - rhs) <= 1e-12);
}

TEST_CASE("column-stacking superoperator reproduces the action") {
    ModelSpec spec = qou_model(1.0, 0.5);
    TruncationScheme s(7);
    Generator gen(spec.model, s, GeneratorKind::galerkin);
    Eigen::MatrixXcd sup = gen.superoperator();
    REQUIRE(sup.rows() == 49);

    Eigen::MatrixXcd rho = random_interior_state(s, 7, 3, 17);
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.data(), 49);
    CHECK((unstack(sup * v, 7) - gen.apply(rho)).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("convenience wrappers agree with the Generator class") {
    ModelSpec spec = qou_model(1.0, 0.5);
    TruncationScheme s(9);
    Generator gen(spec.model, s, GeneratorKind::galerkin);
    Eigen::MatrixXcd rho = random_interior_state(s, 9, 3, 2);
    CHECK((apply_lindbladian(spec.model, s, rho) - gen.apply(rho)).cwiseAbs().maxCoeff() <=
          1e-14);
    CHECK((build_superoperator(spec.model, s) - gen.superoperator()).cwiseAbs().maxCoeff() <=
          1e-14);
}

TEST_CASE("superoperator file round trip") {
    ModelSpec spec = qou_model(1.0, 0.5);
    TruncationScheme s(5);
    Eigen::MatrixXcd sup = build_superoperator(spec.model, s);
    std::string path = "superop_roundtrip.bin";
    write_superoperator(path, sup);
    Eigen::MatrixXcd back = read_superoperator(path);
    CHECK((back - sup).cwiseAbs().maxCoeff() == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("two-mode generator acts on the weighted space") {
    ModelSpec spec = cat_buffer_model(1.0, 2.0);
    TruncationScheme s(spec.model.mode_weights, 6);
    Generator gen(spec.model, s, GeneratorKind::galerkin);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(s.dim(), s.dim());
    rho(0, 0) = 1.0;  // vacuum x vacuum
    Eigen::MatrixXcd out = gen.apply(rho);
    CHECK(std::abs(out.trace()) <= 1e-12);
    // vacuum is not stationary for alpha=1: H pumps the buffer
    CHECK(out.cwiseAbs().maxCoeff() > 0.1);
}
