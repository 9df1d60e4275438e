#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "lindgal/nc_poly.hpp"
#include "lindgal/rational.hpp"

namespace lindgal {

// Galerkin space span{|n1,...,nM> : 1 + sum_m w_m n_m <= N}.
// The reference operator Lambda = Id + sum_m w_m N_m always includes the
// identity shift, so every basis level is >= 1 and negative powers are safe.
// Basis ordering: by Lambda-eigenvalue, ties broken lexicographically.
class TruncationScheme {
public:
    TruncationScheme(std::vector<Rational> mode_weights, int level);

    // Single mode, weight 1.
    explicit TruncationScheme(int level)
        : TruncationScheme(std::vector<Rational>{Rational(1)}, level) {}

    int level() const { return level_; }
    int modes() const { return static_cast<int>(weights_.size()); }
    const std::vector<Rational>& mode_weights() const { return weights_; }
    std::size_t dim() const { return basis_.size(); }

    const std::vector<std::vector<int>>& basis() const { return basis_; }
    const std::vector<int>& multi_index(std::size_t i) const { return basis_[i]; }

    // Lambda-eigenvalue 1 + sum w_m n_m of a multi-index.
    Rational state_level(const std::vector<int>& n) const;
    double level_value(std::size_t i) const { return levels_[i]; }

    // Index lookup; returns -1 if the multi-index is outside the space.
    long long index_of(const std::vector<int>& n) const;

    // Same weights at a different cutoff. Because ordering is by level then
    // lex, the basis of the smaller space is a prefix of the larger one.
    TruncationScheme with_level(int new_level) const {
        return TruncationScheme(weights_, new_level);
    }

    bool same_weights(const TruncationScheme& o) const { return weights_ == o.weights_; }

    friend bool operator==(const TruncationScheme& a, const TruncationScheme& b) {
        return a.weights_ == b.weights_ && a.level_ == b.level_;
    }

private:
    std::vector<Rational> weights_;
    int level_;
    std::vector<std::vector<int>> basis_;
    std::vector<double> levels_;  // Lambda-eigenvalue per basis state
    std::map<std::vector<int>, std::size_t> index_;
};

// Complex matrix on a truncated space, tagged with that space.
struct FockOperator {
    Eigen::MatrixXcd mat;
    TruncationScheme space;

    FockOperator(Eigen::MatrixXcd m, TruncationScheme s);
};

FockOperator build_annihilation(const TruncationScheme& space, int mode);
FockOperator build_creation(const TruncationScheme& space, int mode);

// Exact compression P_N P(a,a†) P_N, computed by evaluating each word on an
// enlarged space and then keeping the leading block. Products of already
// truncated factors would corrupt the top levels (e.g. a a† vs a† a).
FockOperator build_poly_operator(const TruncationScheme& space, const NCPoly& p);

// Diagonal of Lambda^k as a vector (entries level^k); k may be fractional.
Eigen::VectorXd lambda_diagonal(const TruncationScheme& space, double k);

// Lambda^k as a FockOperator.
FockOperator lambda_operator(const TruncationScheme& space, double k);

// Spectral projector of Lambda onto [0, cutoff] inside an ambient space;
// complement = true gives P^⊥ = Id - P.
FockOperator spectral_projector(const TruncationScheme& space_big, int cutoff,
                                bool complement = false);

// ||Lambda^{s_out/2} m Lambda^{-s_in/2}||_inf: truncated estimate of the
// H^{s_in} -> H^{s_out} operator norm.
double operator_sobolev_norm(const FockOperator& m, double s_in, double s_out);

}  // namespace lindgal
