#pragma once

// Thin FFTW wrappers shared by the field and riesz translation units.
// Plans are created per call with FFTW_ESTIMATE: deterministic across runs
// and cheap next to the transforms themselves. Planning is serialized by a
// global mutex (FFTW planning is not thread-safe, execution is).

#include <complex>
#include <cstddef>

namespace ghartree::fft {

void dft_nd(int rank, const int* dims, std::complex<double>* data, int sign);

// Out-of-place nd real <-> half-spectrum transforms (FFTW r2c layout).
void r2c_nd(int rank, const int* dims, double* in, std::complex<double>* out);
void c2r_nd(int rank, const int* dims, std::complex<double>* in, double* out);

void set_threads(int n);
int threads() noexcept;

} // namespace ghartree::fft
