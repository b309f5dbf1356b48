#pragma once

#include <cstddef>

// Data-parallel inner-loop kernels. Scalar reference implementations are
// always available; an AVX2 variant is selected once at startup when the
// CPU supports it. The two must agree to within reassociation error, which
// the test suite checks.
namespace fho::simd {

double dot(const double* a, const double* b, std::size_t n);
void axpy(double* y, const double* x, double a, std::size_t n);
void scale(double* y, double a, std::size_t n);

double dot_scalar(const double* a, const double* b, std::size_t n);
void axpy_scalar(double* y, const double* x, double a, std::size_t n);
void scale_scalar(double* y, double a, std::size_t n);

// Name of the active backend: "scalar" or "avx2".
const char* active_backend();

}  // namespace fho::simd
