#include "steinhaus/scalar.hpp"

namespace steinhaus {

namespace {
double g_tau = 1e-9;
}

double float_tolerance() { return g_tau; }

void set_float_tolerance(double tau) {
    if (!(tau > 0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
    g_tau = tau;
}

} // namespace steinhaus
