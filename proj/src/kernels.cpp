#include "satprov/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace satprov::kern {

namespace scalar {

double sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void matvec(const double* w, const double* x, double* y, std::size_t rows,
            std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(w + r * cols, x, cols);
}

void matvec_t_acc(const double* w, const double* g, double* xg,
                  std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) axpy(g[r], w + r * cols, xg, cols);
}

void ger_acc(double* w, const double* g, const double* x, std::size_t rows,
             std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) axpy(g[r], x, w + r * cols, cols);
}

}  // namespace scalar

namespace {

struct Backend {
  double (*sum)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*matvec)(const double*, const double*, double*, std::size_t,
                 std::size_t);
  void (*matvec_t_acc)(const double*, const double*, double*, std::size_t,
                       std::size_t);
  void (*ger_acc)(double*, const double*, const double*, std::size_t,
                  std::size_t);
  const char* name;
};

constexpr Backend kScalar = {scalar::sum,    scalar::dot,
                             scalar::axpy,   scalar::matvec,
                             scalar::matvec_t_acc, scalar::ger_acc,
                             "scalar"};

#if defined(SATPROV_HAVE_AVX2)
constexpr Backend kAvx2 = {avx2::sum,    avx2::dot,
                           avx2::axpy,   avx2::matvec,
                           avx2::matvec_t_acc, avx2::ger_acc,
                           "avx2"};
#endif

Backend pick_backend() {
#if defined(SATPROV_HAVE_AVX2)
  const char* env = std::getenv("SATPROV_SIMD");
  bool want_scalar = env != nullptr && std::strcmp(env, "scalar") == 0;
  if (!want_scalar && cpu_has_avx2()) return kAvx2;
#endif
  return kScalar;
}

Backend g_backend = pick_backend();

}  // namespace

double sum(const double* x, std::size_t n) { return g_backend.sum(x, n); }

double dot(const double* a, const double* b, std::size_t n) {
  return g_backend.dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  g_backend.axpy(alpha, x, y, n);
}

void matvec(const double* w, const double* x, double* y, std::size_t rows,
            std::size_t cols) {
  g_backend.matvec(w, x, y, rows, cols);
}

void matvec_t_acc(const double* w, const double* g, double* xg,
                  std::size_t rows, std::size_t cols) {
  g_backend.matvec_t_acc(w, g, xg, rows, cols);
}

void ger_acc(double* w, const double* g, const double* x, std::size_t rows,
             std::size_t cols) {
  g_backend.ger_acc(w, g, x, rows, cols);
}

const char* active_isa() { return g_backend.name; }

void force_scalar(bool on) {
  if (on) {
    g_backend = kScalar;
  } else {
    g_backend = pick_backend();
  }
}

}  // namespace satprov::kern
