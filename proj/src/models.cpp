#include "lindgal/models.hpp"

#include <cmath>
#include <stdexcept>

namespace lindgal {

namespace {

ModelSpec finish(const std::string& name, std::map<std::string, double> params, NCPoly h,
                 std::vector<NCPoly> jumps, std::vector<Rational> weights) {
    ModelSpec spec{name, std::move(params),
                   LindbladModel::make(std::move(h), std::move(jumps), std::move(weights), name)};
    spec.d_H = spec.model.hamiltonian_degree();
    spec.d_j = spec.model.jump_degree();
    spec.d = spec.model.order();
    return spec;
}

}  // namespace

ModelSpec qou_model(double lambda, double mu) {
    if (lambda <= 0 || mu <= 0)
        throw std::invalid_argument("qou_model: lambda and mu must be positive");
    NCPoly h(1);
    std::vector<NCPoly> jumps{std::complex<double>(lambda) * NCPoly::annihilation(0, 1),
                              std::complex<double>(mu) * NCPoly::creation(0, 1)};
    return finish("qou", {{"lambda", lambda}, {"mu", mu}}, h, std::move(jumps), {Rational(1)});
}

ModelSpec cat_model(double kappa2, double alpha, double kappa1, double kappa1p,
                    const std::optional<NCPoly>& quadratic_h) {
    if (kappa2 <= 0) throw std::invalid_argument("cat_model: kappa2 must be positive");
    if (alpha < 0) throw std::invalid_argument("cat_model: alpha must be nonnegative");
    if (kappa1 < 0 || kappa1p < 0)
        throw std::invalid_argument("cat_model: loss/gain rates must be nonnegative");
    NCPoly two_photon(1);
    two_photon.add_term(1.0, {Letter{0, false}, Letter{0, false}});
    two_photon.add_term(-alpha * alpha, {});
    std::vector<NCPoly> jumps{std::complex<double>(std::sqrt(kappa2)) * two_photon};
    if (kappa1 > 0)
        jumps.push_back(std::complex<double>(std::sqrt(kappa1)) * NCPoly::annihilation(0, 1));
    if (kappa1p > 0)
        jumps.push_back(std::complex<double>(std::sqrt(kappa1p)) * NCPoly::creation(0, 1));
    NCPoly h = quadratic_h.value_or(NCPoly(1));
    if (h.degree() > 2) throw std::invalid_argument("cat_model: hamiltonian must be quadratic");
    return finish("cat",
                  {{"kappa2", kappa2}, {"alpha", alpha}, {"kappa1", kappa1}, {"kappa1p", kappa1p}},
                  h, std::move(jumps), {Rational(1)});
}

ModelSpec cat_buffer_model(double alpha, double kappa_b) {
    if (kappa_b <= 0) throw std::invalid_argument("cat_buffer_model: kappa_b must be positive");
    if (alpha < 0) throw std::invalid_argument("cat_buffer_model: alpha must be nonnegative");
    const double a2 = alpha * alpha;
    NCPoly h(2);
    h.add_term(1.0, {Letter{0, false}, Letter{0, false}, Letter{1, true}});
    h.add_term(-a2, {Letter{1, true}});
    h.add_term(1.0, {Letter{0, true}, Letter{0, true}, Letter{1, false}});
    h.add_term(-a2, {Letter{1, false}});
    std::vector<NCPoly> jumps{std::complex<double>(std::sqrt(kappa_b)) *
                              NCPoly::annihilation(1, 2)};
    return finish("cat_buffer", {{"alpha", alpha}, {"kappa_b", kappa_b}}, h, std::move(jumps),
                  {Rational(1, 2), Rational(1)});
}

ModelSpec decay_model() {
    return finish("decay", {}, NCPoly(1), {NCPoly::annihilation(0, 1)}, {Rational(1)});
}

ModelSpec custom_model(const std::string& name, const std::string& hamiltonian,
                       const std::vector<std::string>& jumps,
                       const std::vector<Rational>& mode_weights) {
    int modes = static_cast<int>(mode_weights.size());
    NCPoly h = hamiltonian.empty() ? NCPoly(modes) : NCPoly::parse(hamiltonian, modes);
    std::vector<NCPoly> js;
    for (const auto& s : jumps) js.push_back(NCPoly::parse(s, modes));
    ModelSpec spec{name, {}, LindbladModel::make(std::move(h), std::move(js), mode_weights, name)};
    spec.d_H = spec.model.hamiltonian_degree();
    spec.d_j = spec.model.jump_degree();
    spec.d = spec.model.order();
    return spec;
}

}  // namespace lindgal
