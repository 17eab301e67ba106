#ifndef TFDIFF_SPECIAL_FUNCTIONS_HPP
#define TFDIFF_SPECIAL_FUNCTIONS_HPP

namespace tfdiff {

/// Gamma function on (0, 4], the argument range the solver actually
/// visits (2-a, 1-a, 3-a, p+1-a with a in (0,1) and power-law exponents
/// p <= 4). Lanczos approximation, relative error below 1e-12 on the
/// whole range. Throws std::domain_error outside (0, 4].
double gamma(double x);

}  // namespace tfdiff

#endif
