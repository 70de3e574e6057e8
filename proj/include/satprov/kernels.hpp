#ifndef SATPROV_KERNELS_HPP_
#define SATPROV_KERNELS_HPP_

#include <cstddef>

// Dense double-precision kernels behind the network evaluator and the
// neural nets. Scalar reference implementations always exist; on x86 an
// AVX2+FMA variant is selected at runtime when the CPU supports it.
// Matrices are row-major.

namespace satprov::kern {

namespace scalar {
double sum(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);
// y = W x,  W: rows x cols
void matvec(const double* w, const double* x, double* y, std::size_t rows,
            std::size_t cols);
// xg += W^T g
void matvec_t_acc(const double* w, const double* g, double* xg,
                  std::size_t rows, std::size_t cols);
// W += g x^T
void ger_acc(double* w, const double* g, const double* x, std::size_t rows,
             std::size_t cols);
}  // namespace scalar

#if defined(SATPROV_HAVE_AVX2)
namespace avx2 {
double sum(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void matvec(const double* w, const double* x, double* y, std::size_t rows,
            std::size_t cols);
void matvec_t_acc(const double* w, const double* g, double* xg,
                  std::size_t rows, std::size_t cols);
void ger_acc(double* w, const double* g, const double* x, std::size_t rows,
             std::size_t cols);
}  // namespace avx2
bool cpu_has_avx2();
#endif

// Dispatched entry points. The backend is chosen once (CPU probe, overridable
// with SATPROV_SIMD=scalar in the environment or force_scalar()).
double sum(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void matvec(const double* w, const double* x, double* y, std::size_t rows,
            std::size_t cols);
void matvec_t_acc(const double* w, const double* g, double* xg,
                  std::size_t rows, std::size_t cols);
void ger_acc(double* w, const double* g, const double* x, std::size_t rows,
             std::size_t cols);

const char* active_isa();
void force_scalar(bool on);

}  // namespace satprov::kern

#endif  // SATPROV_KERNELS_HPP_
