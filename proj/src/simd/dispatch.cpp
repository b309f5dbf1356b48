#include "fho/simd.hpp"

namespace fho::simd {

#if defined(FHO_BUILD_AVX2)
double dot_avx2(const double*, const double*, std::size_t);
void axpy_avx2(double*, const double*, double, std::size_t);
void scale_avx2(double*, double, std::size_t);
#endif

namespace {

using DotFn = double (*)(const double*, const double*, std::size_t);
using AxpyFn = void (*)(double*, const double*, double, std::size_t);
using ScaleFn = void (*)(double*, double, std::size_t);

struct Backend {
  DotFn dot;
  AxpyFn axpy;
  ScaleFn scale;
  const char* name;
};

Backend pick_backend() {
#if defined(FHO_BUILD_AVX2) && defined(__x86_64__)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return {dot_avx2, axpy_avx2, scale_avx2, "avx2"};
  }
#endif
  return {dot_scalar, axpy_scalar, scale_scalar, "scalar"};
}

const Backend& backend() {
  static const Backend b = pick_backend();
  return b;
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  return backend().dot(a, b, n);
}
void axpy(double* y, const double* x, double a, std::size_t n) {
  backend().axpy(y, x, a, n);
}
void scale(double* y, double a, std::size_t n) { backend().scale(y, a, n); }
const char* active_backend() { return backend().name; }

}  // namespace fho::simd
