#include "lindgal/lindblad.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace lindgal {

LindbladModel LindbladModel::make(NCPoly hamiltonian, std::vector<NCPoly> jumps,
                                  std::vector<Rational> mode_weights, std::string name,
                                  int check_level) {
    LindbladModel m{std::move(hamiltonian), std::move(jumps), std::move(mode_weights),
                    std::move(name)};
    for (const auto& j : m.jumps)
        if (j.modes() != m.modes())
            throw std::invalid_argument("LindbladModel: jump mode count mismatch");
    if (m.hamiltonian.modes() != m.modes())
        throw std::invalid_argument("LindbladModel: hamiltonian mode count mismatch");
    if (!m.hamiltonian.is_zero()) {
        TruncationScheme desk(m.mode_weights, check_level);
        Eigen::MatrixXcd hc = build_poly_operator(desk, m.hamiltonian).mat;
        double dev = (hc - hc.adjoint().eval()).cwiseAbs().maxCoeff();
        if (dev > 1e-10)
            throw std::invalid_argument("LindbladModel '" + m.name +
                                        "': hamiltonian is not self-adjoint (deviation " +
                                        std::to_string(dev) + ")");
    }
    return m;
}

int LindbladModel::jump_degree() const {
    int d = 0;
    for (const auto& j : jumps) d = std::max(d, j.degree());
    return d;
}

int LindbladModel::order() const {
    return std::max(hamiltonian_degree(), 2 * jump_degree());
}

Generator::Generator(const LindbladModel& model, const TruncationScheme& space,
                     GeneratorKind kind)
    : space_(space), kind_(kind) {
    if (model.modes() != space.modes())
        throw std::invalid_argument("Generator: model/space mode count mismatch");
    h_ = model.hamiltonian.is_zero()
             ? Eigen::MatrixXcd::Zero(space.dim(), space.dim()).eval()
             : build_poly_operator(space, model.hamiltonian).mat;
    for (const auto& j : model.jumps) {
        Eigen::MatrixXcd lj = build_poly_operator(space, j).mat;
        Eigen::MatrixXcd gram = (kind == GeneratorKind::galerkin)
                                    ? (lj.adjoint() * lj).eval()
                                    : build_poly_operator(space, j.adjoint() * j).mat;
        l_.push_back(lj);
        ld_.push_back(lj.adjoint());
        ldl_.push_back(std::move(gram));
    }
}

Eigen::MatrixXcd Generator::apply(const Eigen::MatrixXcd& rho) const {
    const Eigen::Index d = static_cast<Eigen::Index>(space_.dim());
    if (rho.rows() != d || rho.cols() != d)
        throw std::invalid_argument("Generator::apply: dimension mismatch");
    const std::complex<double> mi(0.0, -1.0);
    Eigen::MatrixXcd out = mi * (h_ * rho - rho * h_);
    for (std::size_t j = 0; j < l_.size(); ++j) {
        out.noalias() += l_[j] * rho * ld_[j];
        out.noalias() -= 0.5 * (ldl_[j] * rho + rho * ldl_[j]);
    }
    return out;
}

Eigen::MatrixXcd Generator::adjoint_apply(const Eigen::MatrixXcd& x) const {
    const Eigen::Index d = static_cast<Eigen::Index>(space_.dim());
    if (x.rows() != d || x.cols() != d)
        throw std::invalid_argument("Generator::adjoint_apply: dimension mismatch");
    const std::complex<double> pi(0.0, 1.0);
    Eigen::MatrixXcd out = pi * (h_ * x - x * h_);
    for (std::size_t j = 0; j < l_.size(); ++j) {
        out.noalias() += ld_[j] * x * l_[j];
        out.noalias() -= 0.5 * (ldl_[j] * x + x * ldl_[j]);
    }
    return out;
}

Eigen::MatrixXcd Generator::superoperator() const {
    const Eigen::Index d = static_cast<Eigen::Index>(space_.dim());
    auto kron = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
        Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < a.cols(); ++j)
                out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        return out;
    };
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    const std::complex<double> mi(0.0, -1.0);
    // vec(A X B) = (B^T ⊗ A) vec(X) for column stacking
    Eigen::MatrixXcd s = mi * (kron(id, h_) - kron(h_.transpose(), id));
    for (std::size_t j = 0; j < l_.size(); ++j) {
        s += kron(l_[j].conjugate(), l_[j]);
        s -= 0.5 * (kron(id, ldl_[j]) + kron(ldl_[j].transpose(), id));
    }
    return s;
}

Eigen::MatrixXcd apply_lindbladian(const LindbladModel& model, const TruncationScheme& space,
                                   const Eigen::MatrixXcd& rho, GeneratorKind kind) {
    return Generator(model, space, kind).apply(rho);
}

Eigen::MatrixXcd adjoint_apply(const LindbladModel& model, const TruncationScheme& space,
                               const Eigen::MatrixXcd& x, GeneratorKind kind) {
    return Generator(model, space, kind).adjoint_apply(x);
}

Eigen::MatrixXcd build_superoperator(const LindbladModel& model, const TruncationScheme& space,
                                     bool truncated) {
    return Generator(model, space,
                     truncated ? GeneratorKind::galerkin : GeneratorKind::reference)
        .superoperator();
}

namespace {
constexpr char kMagic[8] = {'L', 'G', 'S', 'U', 'P', 'O', 'P', '1'};
constexpr char kTag[16] = {'c', 'o', 'l', 's', 't', 'a', 'c', 'k',
                           '-', 'r', 'o', 'w', 'm', 'a', 'j', '.'};
}  // namespace

void write_superoperator(const std::string& path, const Eigen::MatrixXcd& s) {
    if (s.rows() != s.cols()) throw std::invalid_argument("write_superoperator: not square");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_superoperator: cannot open " + path);
    f.write(kMagic, sizeof(kMagic));
    std::uint32_t n = static_cast<std::uint32_t>(s.rows());
    f.write(reinterpret_cast<const char*>(&n), sizeof(n));
    f.write(kTag, sizeof(kTag));
    for (Eigen::Index i = 0; i < s.rows(); ++i)
        for (Eigen::Index j = 0; j < s.cols(); ++j) {
            double re = s(i, j).real(), im = s(i, j).imag();
            f.write(reinterpret_cast<const char*>(&re), sizeof(re));
            f.write(reinterpret_cast<const char*>(&im), sizeof(im));
        }
}

Eigen::MatrixXcd read_superoperator(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("read_superoperator: cannot open " + path);
    char magic[8], tag[16];
    std::uint32_t n = 0;
    f.read(magic, sizeof(magic));
    f.read(reinterpret_cast<char*>(&n), sizeof(n));
    f.read(tag, sizeof(tag));
    if (std::memcmp(magic, kMagic, sizeof(magic)) != 0 || std::memcmp(tag, kTag, sizeof(tag)) != 0)
        throw std::runtime_error("read_superoperator: bad header in " + path);
    Eigen::MatrixXcd s(n, n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            double re, im;
            f.read(reinterpret_cast<char*>(&re), sizeof(re));
            f.read(reinterpret_cast<char*>(&im), sizeof(im));
            s(i, j) = {re, im};
        }
    if (!f) throw std::runtime_error("read_superoperator: truncated file " + path);
    return s;
}

}  // namespace lindgal
