#include "eitmotion/fft.hpp"

#include <cmath>
#include <numbers>

#include "eitmotion/errors.hpp"

namespace eitmotion {

namespace {

bool is_pow2(size_t n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

void fft_inplace(std::vector<Complex>& a, bool inverse) {
    const size_t n = a.size();
    if (!is_pow2(n)) throw ValidationError("fft size must be a power of two");
    if (n == 1) return;

    // Bit-reversal permutation.
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / double(len);
        const Complex wl = std::polar(1.0, ang);
        for (size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (size_t k = 0; k < len / 2; ++k) {
                const Complex u = a[i + k];
                const Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / double(n);
        for (Complex& x : a) x *= inv;
    }
}

void fft_2d_inplace(std::vector<Complex>& a, int nx, int ny, bool inverse) {
    if (nx <= 0 || ny <= 0 || a.size() != size_t(nx) * size_t(ny))
        throw ValidationError("fft_2d: array size does not match nx*ny");
    if (!is_pow2(size_t(nx)) || !is_pow2(size_t(ny)))
        throw ValidationError("fft_2d: dimensions must be powers of two");

    std::vector<Complex> row(static_cast<size_t>(nx));
    for (int iy = 0; iy < ny; ++iy) {
        Complex* base = a.data() + size_t(iy) * nx;
        row.assign(base, base + nx);
        fft_inplace(row, inverse);
        std::copy(row.begin(), row.end(), base);
    }
    std::vector<Complex> col(static_cast<size_t>(ny));
    for (int ix = 0; ix < nx; ++ix) {
        for (int iy = 0; iy < ny; ++iy) col[size_t(iy)] = a[size_t(iy) * nx + ix];
        fft_inplace(col, inverse);
        for (int iy = 0; iy < ny; ++iy) a[size_t(iy) * nx + ix] = col[size_t(iy)];
    }
}

double fft_wavenumber(int j, int n, double d) {
    if (n <= 0 || !(d > 0.0)) throw ValidationError("fft_wavenumber: need n > 0 and d > 0");
    const int f = (j < n / 2) ? j : j - n;
    return 2.0 * std::numbers::pi * double(f) / (double(n) * d);
}

} // namespace eitmotion
