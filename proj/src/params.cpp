#include "eitmotion/params.hpp"

#include <cmath>

#include "eitmotion/errors.hpp"

namespace eitmotion {

namespace {

void require_finite(double x, const char* field) {
    if (!std::isfinite(x)) throw ValidationError(std::string(field) + " must be finite");
}

} // namespace

void MediumParams::validate() const {
    require_finite(v_th, "medium.v_th");
    require_finite(gamma, "medium.gamma");
    require_finite(Gamma_d, "medium.Gamma_d");
    require_finite(Gamma_21, "medium.Gamma_21");
    require_finite(omega_21, "medium.omega_21");
    require_finite(coupling, "medium.coupling");
    if (v_th <= 0.0) throw ValidationError("medium.v_th must be > 0");
    if (gamma < 0.0) throw ValidationError("medium.gamma must be >= 0");
    if (Gamma_d <= 0.0) throw ValidationError("medium.Gamma_d must be > 0");
    if (Gamma_21 < 0.0) throw ValidationError("medium.Gamma_21 must be >= 0");
    if (coupling < 0.0) throw ValidationError("medium.coupling must be >= 0");
}

void BeamParams::validate() const {
    require_finite(q1, "beam.q1");
    require_finite(Delta_1, "beam.Delta_1");
    require_finite(Delta, "beam.Delta");
    require_finite(Omega_2.real(), "beam.Omega_2.re");
    require_finite(Omega_2.imag(), "beam.Omega_2.im");
    for (int i = 0; i < 3; ++i) require_finite(delta_q[i], "beam.delta_q");
    if (q1 <= 0.0) throw ValidationError("beam.q1 must be > 0");
}

} // namespace eitmotion
