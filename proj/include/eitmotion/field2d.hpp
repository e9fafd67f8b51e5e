#pragma once
#include <cmath>
#include <vector>

#include "eitmotion/errors.hpp"
#include "eitmotion/params.hpp"

namespace eitmotion {

// Row-major transverse complex field: values[iy * nx + ix]. The x grid runs
// along rows with spacing dx. Real-space coordinates are periodic; index j
// maps to the spatial frequency 2*pi*f/(n*d) with f = j for j < n/2 and
// f = j - n otherwise.
struct ComplexField2D {
    int nx = 0, ny = 0;
    double dx = 0.0, dy = 0.0;
    std::vector<Complex> values;

    Complex& at(int ix, int iy) { return values[size_t(iy) * nx + ix]; }
    const Complex& at(int ix, int iy) const { return values[size_t(iy) * nx + ix]; }

    double energy() const {
        double e = 0.0;
        for (const Complex& v : values) e += std::norm(v);
        return e * dx * dy;
    }

    void validate() const {
        auto pow2 = [](int n) { return n >= 32 && (n & (n - 1)) == 0; };
        if (!pow2(nx) || !pow2(ny))
            throw ValidationError("field dimensions must be powers of two >= 32");
        if (!(dx > 0.0) || !(dy > 0.0)) throw ValidationError("field spacing must be > 0");
        if (values.size() != size_t(nx) * size_t(ny))
            throw ValidationError("field value count does not match nx*ny");
        for (const Complex& v : values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw ValidationError("field values must be finite");
    }
};

} // namespace eitmotion
