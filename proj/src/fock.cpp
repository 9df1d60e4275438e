#include "lindgal/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lindgal {

TruncationScheme::TruncationScheme(std::vector<Rational> mode_weights, int level)
    : weights_(std::move(mode_weights)), level_(level) {
    if (weights_.empty()) throw std::invalid_argument("TruncationScheme: no modes");
    for (const auto& w : weights_)
        if (w.num <= 0) throw std::invalid_argument("TruncationScheme: weights must be positive");
    if (level_ < 0) throw std::invalid_argument("TruncationScheme: negative level");

    // Enumerate multi-indices with 1 + sum w_m n_m <= N.
    std::vector<std::pair<Rational, std::vector<int>>> states;
    std::vector<int> idx(weights_.size(), 0);
    const Rational bound(level_);
    auto recurse = [&](auto&& self, std::size_t m, Rational acc) -> void {
        if (m == weights_.size()) {
            states.emplace_back(acc, idx);
            return;
        }
        Rational lvl = acc;
        for (int n = 0;; ++n) {
            if (!(lvl <= bound)) break;
            idx[m] = n;
            self(self, m + 1, lvl);
            lvl = lvl + weights_[m];
        }
        idx[m] = 0;
    };
    recurse(recurse, 0, Rational(1));

    std::stable_sort(states.begin(), states.end(),
                     [](const auto& a, const auto& b) {
                         if (a.first < b.first) return true;
                         if (b.first < a.first) return false;
                         return a.second < b.second;
                     });

    basis_.reserve(states.size());
    levels_.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        basis_.push_back(states[i].second);
        levels_.push_back(states[i].first.value());
        index_[states[i].second] = i;
    }
}

Rational TruncationScheme::state_level(const std::vector<int>& n) const {
    Rational lvl(1);
    for (std::size_t m = 0; m < weights_.size(); ++m) lvl = lvl + weights_[m] * n[m];
    return lvl;
}

long long TruncationScheme::index_of(const std::vector<int>& n) const {
    auto it = index_.find(n);
    return it == index_.end() ? -1 : static_cast<long long>(it->second);
}

FockOperator::FockOperator(Eigen::MatrixXcd m, TruncationScheme s)
    : mat(std::move(m)), space(std::move(s)) {
    if (mat.rows() != static_cast<Eigen::Index>(space.dim()) ||
        mat.cols() != static_cast<Eigen::Index>(space.dim()))
        throw std::invalid_argument("FockOperator: matrix dimension does not match space");
}

FockOperator build_annihilation(const TruncationScheme& space, int mode) {
    if (mode < 0 || mode >= space.modes())
        throw std::out_of_range("build_annihilation: mode out of range");
    const std::size_t dim = space.dim();
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<int> n = space.multi_index(j);
        if (n[mode] == 0) continue;
        n[mode] -= 1;
        long long i = space.index_of(n);
        // level decreases, so the target is always inside the space
        a(i, j) = std::sqrt(static_cast<double>(n[mode] + 1));
    }
    return {std::move(a), space};
}

FockOperator build_creation(const TruncationScheme& space, int mode) {
    FockOperator a = build_annihilation(space, mode);
    return {a.mat.adjoint(), space};
}

FockOperator build_poly_operator(const TruncationScheme& space, const NCPoly& p) {
    if (p.modes() != space.modes())
        throw std::invalid_argument("build_poly_operator: mode count mismatch");
    double wmax = 0;
    for (const auto& w : space.mode_weights()) wmax = std::max(wmax, w.value());
    const int pad = static_cast<int>(std::ceil(p.degree() * wmax));
    const TruncationScheme big = space.with_level(space.level() + pad);
    const std::size_t dim_big = big.dim();

    std::vector<Eigen::MatrixXcd> ann(space.modes()), cre(space.modes());
    for (int m = 0; m < space.modes(); ++m) {
        ann[m] = build_annihilation(big, m).mat;
        cre[m] = ann[m].adjoint();
    }

    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim_big, dim_big);
    for (const auto& term : p.terms()) {
        Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(dim_big, dim_big);
        for (const Letter& l : term.word) w = w * (l.dagger ? cre[l.mode] : ann[l.mode]);
        acc += term.coeff * w;
    }
    // Smaller space is a basis prefix of the enlarged one.
    const std::size_t dim = space.dim();
    return {acc.topLeftCorner(dim, dim), space};
}

Eigen::VectorXd lambda_diagonal(const TruncationScheme& space, double k) {
    Eigen::VectorXd d(space.dim());
    for (std::size_t i = 0; i < space.dim(); ++i) d(i) = std::pow(space.level_value(i), k);
    return d;
}

FockOperator lambda_operator(const TruncationScheme& space, double k) {
    return {lambda_diagonal(space, k).cast<std::complex<double>>().asDiagonal(), space};
}

FockOperator spectral_projector(const TruncationScheme& space_big, int cutoff, bool complement) {
    if (cutoff > space_big.level())
        throw std::invalid_argument("spectral_projector: cutoff exceeds ambient level");
    Eigen::VectorXcd d(space_big.dim());
    for (std::size_t i = 0; i < space_big.dim(); ++i) {
        bool inside = space_big.level_value(i) <= static_cast<double>(cutoff) + 1e-12;
        d(i) = (inside != complement) ? 1.0 : 0.0;
    }
    return {Eigen::MatrixXcd(d.asDiagonal()), space_big};
}

double operator_sobolev_norm(const FockOperator& m, double s_in, double s_out) {
    if (s_in < 0 || s_out < 0)
        throw std::invalid_argument("operator_sobolev_norm: negative Sobolev index");
    Eigen::VectorXd wout = lambda_diagonal(m.space, s_out / 2.0);
    Eigen::VectorXd win = lambda_diagonal(m.space, -s_in / 2.0);
    Eigen::MatrixXcd scaled = wout.asDiagonal() * m.mat * win.asDiagonal();
    return scaled.jacobiSvd().singularValues()(0);
}

}  // namespace lindgal
