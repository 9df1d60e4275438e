#include "lindgal/linalg.hpp"

#include <complex>
#include <stdexcept>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace lindgal {

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a, Eigen::MatrixXcd* v) {
    if (a.rows() != a.cols()) throw std::invalid_argument("singular_values: not square");
    const lapack_int n = static_cast<lapack_int>(a.rows());
    Eigen::MatrixXcd work = a;  // destroyed by zgesdd
    Eigen::VectorXd s(n);
    Eigen::MatrixXcd u, vt;
    char jobz = v ? 'S' : 'N';
    if (v) {
        u.resize(n, n);
        vt.resize(n, n);
    } else {
        u.resize(1, 1);
        vt.resize(1, 1);
    }
    lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, jobz, n, n, work.data(), n, s.data(),
                                     u.data(), n, vt.data(), n);
    if (info != 0) throw std::runtime_error("zgesdd failed with info " + std::to_string(info));
    if (v) *v = vt.adjoint();
    return s;
}

}  // namespace lindgal
