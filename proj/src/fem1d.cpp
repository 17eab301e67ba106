#include "tfdiff/fem1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace tfdiff {

Mesh1D::Mesh1D(std::vector<double> coords) : nodes(std::move(coords)) {
    if (nodes.size() < 3) {
        throw std::domain_error("Mesh1D needs at least one interior node");
    }
    if (nodes.front() != 0.0 || nodes.back() != 1.0) {
        throw std::domain_error("Mesh1D endpoints must be exactly 0 and 1");
    }
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (!(nodes[i] < nodes[i + 1])) {
            throw std::domain_error("Mesh1D nodes must be strictly increasing");
        }
    }
}

Mesh1D Mesh1D::uniform(int num_elements) {
    if (num_elements < 2) {
        throw std::domain_error("uniform mesh needs at least 2 elements, got " +
                                std::to_string(num_elements));
    }
    std::vector<double> coords(num_elements + 1);
    for (int i = 0; i <= num_elements; ++i) {
        coords[i] = static_cast<double>(i) / num_elements;
    }
    coords.front() = 0.0;
    coords.back() = 1.0;
    return Mesh1D(std::move(coords));
}

double Mesh1D::h_max() const {
    double h = 0.0;
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
        h = std::max(h, nodes[i + 1] - nodes[i]);
    }
    return h;
}

NodalVector SymTriMatrix::multiply(std::span<const double> v) const {
    if (v.size() != diag.size()) {
        throw std::invalid_argument("SymTriMatrix::multiply: dimension mismatch");
    }
    const int m = n();
    NodalVector r(m);
    for (int i = 0; i < m; ++i) {
        double s = diag[i] * v[i];
        if (i > 0) s += off[i - 1] * v[i - 1];
        if (i + 1 < m) s += off[i] * v[i + 1];
        r[i] = s;
    }
    return r;
}

// Element [x_i, x_{i+1}] of length h contributes h/3 to each endpoint's
// diagonal and h/6 to their coupling; the gradient terms contribute 1/h
// and -1/h. Boundary rows/columns are dropped (interior unknowns only).

SymTriMatrix assemble_mass(const Mesh1D& mesh) {
    const int n = mesh.interior_count();
    SymTriMatrix M;
    M.diag.assign(n, 0.0);
    M.off.assign(n - 1, 0.0);
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const double h = mesh.nodes[e + 1] - mesh.nodes[e];
        const int left = e - 1;   // interior index of node e
        const int right = e;      // interior index of node e+1
        if (left >= 0) M.diag[left] += h / 3.0;
        if (right < n) M.diag[right] += h / 3.0;
        if (left >= 0 && right < n) M.off[left] += h / 6.0;
    }
    return M;
}

SymTriMatrix assemble_stiffness(const Mesh1D& mesh) {
    const int n = mesh.interior_count();
    SymTriMatrix S;
    S.diag.assign(n, 0.0);
    S.off.assign(n - 1, 0.0);
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const double h = mesh.nodes[e + 1] - mesh.nodes[e];
        const int left = e - 1;
        const int right = e;
        if (left >= 0) S.diag[left] += 1.0 / h;
        if (right < n) S.diag[right] += 1.0 / h;
        if (left >= 0 && right < n) S.off[left] += -1.0 / h;
    }
    return S;
}

NodalVector assemble_load(const Mesh1D& mesh,
                          const std::function<double(double, double)>& f_at,
                          double t) {
    const int n = mesh.interior_count();
    NodalVector load(n);
    for (int i = 0; i < n; ++i) {
        load[i] = f_at(mesh.nodes[i + 1], t);
    }
    return load;
}

double l2_norm(std::span<const double> v, const SymTriMatrix& M) {
    const NodalVector Mv = M.multiply(v);
    double q = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        q += v[i] * Mv[i];
    }
    return std::sqrt(std::max(q, 0.0));
}

ErrorPair nodal_errors(const NodalVector& u_num,
                       const std::function<double(double, double)>& exact,
                       const Mesh1D& mesh, double t) {
    const int n = mesh.interior_count();
    if (static_cast<int>(u_num.size()) != n) {
        throw std::invalid_argument("nodal_errors: state size does not match mesh");
    }
    NodalVector err(n);
    double max_err = 0.0;
    for (int i = 0; i < n; ++i) {
        err[i] = u_num[i] - exact(mesh.nodes[i + 1], t);
        max_err = std::max(max_err, std::abs(err[i]));
    }
    return {max_err, l2_norm(err, assemble_mass(mesh))};
}

}  // namespace tfdiff
