#pragma once
#include <vector>

#include "eitmotion/params.hpp"

namespace eitmotion {

// In-place radix-2 complex FFT. Forward uses the e^{-i 2 pi n k / N} kernel;
// the inverse applies the conjugate kernel and the 1/N scale, so
// ifft(fft(x)) == x to roundoff. Size must be a power of two (>= 1).
void fft_inplace(std::vector<Complex>& a, bool inverse);

// 2D transform of a row-major nx-by-ny array (index iy*nx + ix): rows first,
// then columns. Both dimensions must be powers of two.
void fft_2d_inplace(std::vector<Complex>& a, int nx, int ny, bool inverse);

// Spatial frequency of DFT bin j on an n-point grid with spacing d:
// 2*pi*f/(n*d), f = j for j < n/2 else j - n.
double fft_wavenumber(int j, int n, double d);

} // namespace eitmotion
