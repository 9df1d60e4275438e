#pragma once

#include <map>
#include <optional>
#include <string>

#include "lindgal/lindblad.hpp"

namespace lindgal {

struct ModelSpec {
    std::string name;
    std::map<std::string, double> parameters;
    LindbladModel model;
    int d_H = 0;
    int d_j = 0;
    int d = 0;  // max(d_H, 2 d_j)

    // Exponent of the predicted trace-norm rate N^{-(k-d)/2}.
    double predicted_exponent(double k) const { return -(k - d) / 2.0; }
};

// Quantum Ornstein-Uhlenbeck: jumps {lambda a, mu a†}, H = 0.
ModelSpec qou_model(double lambda, double mu);

// Dissipative cat qubit: jump sqrt(kappa2)(a^2 - alpha^2), optional single
// photon loss sqrt(kappa1) a and gain sqrt(kappa1p) a†. A quadratic
// Hamiltonian may be supplied through `quadratic_h`; none is default.
ModelSpec cat_model(double kappa2, double alpha, double kappa1 = 0, double kappa1p = 0,
                    const std::optional<NCPoly>& quadratic_h = std::nullopt);

// Two-mode cat qubit with buffer: H = (a^2-alpha^2) b† + (a†^2-alpha^2) b,
// jump sqrt(kappa_b) b, mode weights [1/2, 1].
ModelSpec cat_buffer_model(double alpha, double kappa_b);

// Single-mode pure decay, jump = a. Test workhorse.
ModelSpec decay_model();

// Custom model from the NCPoly text grammar.
ModelSpec custom_model(const std::string& name, const std::string& hamiltonian,
                       const std::vector<std::string>& jumps,
                       const std::vector<Rational>& mode_weights);

}  // namespace lindgal
