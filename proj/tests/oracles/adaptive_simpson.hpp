#pragma once

#include <complex>
#include <functional>

namespace oracle {

/// Adaptive Simpson quadrature of a complex integrand on [a, b] to absolute
/// tolerance `tol`. The interval is first cut into `panels` equal pieces so
/// that oscillatory integrands are not declared converged by accident.
std::complex<double> adaptive_simpson(const std::function<std::complex<double>(double)>& f,
                                      double a, double b, double tol, int panels = 64);

}  // namespace oracle
