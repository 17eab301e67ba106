#ifndef TFDIFF_FEM1D_HPP
#define TFDIFF_FEM1D_HPP

#include <functional>
#include <span>
#include <vector>

namespace tfdiff {

/// Coefficients at the interior mesh nodes; boundary values are
/// implicitly zero (homogeneous Dirichlet).
using NodalVector = std::vector<double>;

/// 1D mesh on [0, 1]: strictly increasing nodes x_0 = 0 < ... < x_N = 1.
struct Mesh1D {
    std::vector<double> nodes;

    explicit Mesh1D(std::vector<double> coords);
    static Mesh1D uniform(int num_elements);

    int num_elements() const { return static_cast<int>(nodes.size()) - 1; }
    int interior_count() const { return static_cast<int>(nodes.size()) - 2; }
    double h_max() const;
};

/// Symmetric tridiagonal matrix over the interior nodes (sub = super).
struct SymTriMatrix {
    std::vector<double> diag;  ///< length n
    std::vector<double> off;   ///< length n-1

    int n() const { return static_cast<int>(diag.size()); }
    NodalVector multiply(std::span<const double> v) const;
};

/// P1 mass matrix (phi_i, phi_j) on interior nodes. Uniform mesh:
/// diag 2h/3, off h/6.
SymTriMatrix assemble_mass(const Mesh1D& mesh);

/// P1 stiffness matrix (phi_i', phi_j') on interior nodes. Uniform mesh:
/// diag 2/h, off -1/h.
SymTriMatrix assemble_stiffness(const Mesh1D& mesh);

/// Nodal samples f(x_i, t) at the interior nodes. The marching scheme
/// multiplies this by the mass matrix, i.e. the forcing enters through
/// its nodal interpolant rather than element quadrature.
NodalVector assemble_load(const Mesh1D& mesh,
                          const std::function<double(double, double)>& f_at,
                          double t);

/// Mass-weighted discrete L2 norm sqrt(v' M v).
double l2_norm(std::span<const double> v, const SymTriMatrix& M);

struct ErrorPair {
    double max_error;
    double l2_error;
};

/// Pointwise error against an exact solution at time t: max-abs over the
/// interior nodes and the mass-weighted L2 norm of the error vector.
ErrorPair nodal_errors(const NodalVector& u_num,
                       const std::function<double(double, double)>& exact,
                       const Mesh1D& mesh, double t);

}  // namespace tfdiff

#endif
