#pragma once

#include <complex>

namespace cusp::fft {

/// In-place complex DFT on an n0 x n1 row-major array (n1 == 1 gives the 1-d
/// transform). sign = -1 forward, +1 backward. Unnormalized, FFTW convention;
/// callers divide by n0*n1 after a backward pass. Thread safe: planning is
/// serialized internally, execution is concurrent.
void dft(int n0, int n1, std::complex<double>* data, int sign);

}  // namespace cusp::fft
