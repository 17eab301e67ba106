#ifndef TFDIFF_ERRORS_HPP
#define TFDIFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tfdiff {

/// Thrown when an iterative or direct solve cannot reach its target:
/// CG hitting the iteration cap, a zero pivot in the tridiagonal
/// factorization, or a non-converging singular quadrature.
class solver_error : public std::runtime_error {
  public:
    explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tfdiff

#endif
