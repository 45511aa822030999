#pragma once

namespace travnet::nn {

// Row-major GEMM: C = alpha * op(A) * op(B) + beta * C.
// Thin wrappers over the system BLAS so that templated layer code does not
// pull BLAS headers into every translation unit.
void gemm(bool trans_a, bool trans_b, int m, int n, int k, float alpha,
          const float* a, int lda, const float* b, int ldb, float beta,
          float* c, int ldc);
void gemm(bool trans_a, bool trans_b, int m, int n, int k, double alpha,
          const double* a, int lda, const double* b, int ldb, double beta,
          double* c, int ldc);

// Caps the BLAS thread pool (0 = library default). Single-thread execution
// gives bitwise-stable reductions for determinism-sensitive tests.
void set_blas_threads(int n);

}  // namespace travnet::nn
