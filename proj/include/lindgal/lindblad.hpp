#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "lindgal/fock.hpp"
#include "lindgal/nc_poly.hpp"

namespace lindgal {

// Hamiltonian + jump polynomials defining a Lindbladian on a weighted
// multi-mode Fock space. Coefficients (rates) are folded into the jump
// polynomials as amplitudes.
struct LindbladModel {
    NCPoly hamiltonian;
    std::vector<NCPoly> jumps;
    std::vector<Rational> mode_weights;
    std::string name;

    // Validates formal self-adjointness of H numerically at a desk
    // truncation (||H_c - H_c†||_inf <= 1e-10).
    static LindbladModel make(NCPoly hamiltonian, std::vector<NCPoly> jumps,
                              std::vector<Rational> mode_weights, std::string name,
                              int check_level = 12);

    int modes() const { return static_cast<int>(mode_weights.size()); }
    int hamiltonian_degree() const { return hamiltonian.degree(); }
    int jump_degree() const;                 // max over jumps, 0 if none
    int order() const;                       // d = max(d_H, 2 d_j)
};

// Which truncation of the generator to apply.
//   reference: every operator in the generator is an exact compression
//     (enlarged-space evaluation), including L†L as a polynomial. Used to
//     approximate the untruncated L on edge-distant states.
//   galerkin: the Lindbladian built from H_N = P_N H P_N and
//     L_N = P_N L P_N, with L_N† L_N as a matrix product. This is the
//     generator actually propagated; it is CPTP on the finite space.
enum class GeneratorKind { reference, galerkin };

// Precomputed matrices of one generator on one space.
class Generator {
public:
    Generator(const LindbladModel& model, const TruncationScheme& space, GeneratorKind kind);

    const TruncationScheme& space() const { return space_; }
    GeneratorKind kind() const { return kind_; }
    std::size_t dim() const { return space_.dim(); }

    // L(rho) = -i[H, rho] + sum_j (L rho L† - 1/2 {L†L, rho})
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;

    // Trace-dual adjoint: L*(X) = i[H, X] + sum_j (L† X L - 1/2 {L†L, X})
    Eigen::MatrixXcd adjoint_apply(const Eigen::MatrixXcd& x) const;

    // Column-stacking vectorization: unstack(S vec(rho)) == apply(rho).
    Eigen::MatrixXcd superoperator() const;

    const Eigen::MatrixXcd& hamiltonian_matrix() const { return h_; }
    const std::vector<Eigen::MatrixXcd>& jump_matrices() const { return l_; }
    const std::vector<Eigen::MatrixXcd>& jump_gram_matrices() const { return ldl_; }

private:
    TruncationScheme space_;
    GeneratorKind kind_;
    Eigen::MatrixXcd h_;
    std::vector<Eigen::MatrixXcd> l_;
    std::vector<Eigen::MatrixXcd> ldl_;
    std::vector<Eigen::MatrixXcd> ld_;  // adjoints, cached
};

Eigen::MatrixXcd apply_lindbladian(const LindbladModel& model, const TruncationScheme& space,
                                   const Eigen::MatrixXcd& rho,
                                   GeneratorKind kind = GeneratorKind::galerkin);

Eigen::MatrixXcd adjoint_apply(const LindbladModel& model, const TruncationScheme& space,
                               const Eigen::MatrixXcd& x,
                               GeneratorKind kind = GeneratorKind::reference);

Eigen::MatrixXcd build_superoperator(const LindbladModel& model, const TruncationScheme& space,
                                     bool truncated = true);

// Binary dump: 8-byte magic "LGSUPOP1", uint32 D, 16-byte convention tag
// "colstack-rowmaj.", then D^2 x D^2 complex128 entries in row-major order.
void write_superoperator(const std::string& path, const Eigen::MatrixXcd& s);
Eigen::MatrixXcd read_superoperator(const std::string& path);

}  // namespace lindgal
