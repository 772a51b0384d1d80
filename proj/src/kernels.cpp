#include "modhecke/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace modhecke {

ExactMatrix matmul_serial(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Rat& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        const Rat& bkj = b.at(k, j);
        if (bkj != 0) r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

ExactMatrix matmul_parallel(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix r(a.rows(), b.cols());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Rat& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        const Rat& bkj = b.at(k, j);
        if (bkj != 0) r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

std::vector<int> meet_table_serial(const std::vector<Bitset>& xs,
                                   const std::function<int(const Bitset&)>& classify) {
  int n = int(xs.size());
  std::vector<int> t(size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[size_t(i) * n + j] = classify(xs[i] & xs[j]);
  return t;
}

std::vector<int> meet_table_parallel(const std::vector<Bitset>& xs,
                                     const std::function<int(const Bitset&)>& classify) {
  int n = int(xs.size());
  std::vector<int> t(size_t(n) * n);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[size_t(i) * n + j] = classify(xs[i] & xs[j]);
  return t;
}

std::vector<int> meet_table_serial(const std::vector<Bitset>& xs, const std::vector<Bitset>& ys,
                                   const std::function<int(const Bitset&, const Bitset&)>& classify) {
  int n = int(xs.size()), m = int(ys.size());
  std::vector<int> t(size_t(n) * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) t[size_t(i) * m + j] = classify(xs[i] & ys[j], ys[j]);
  return t;
}

std::vector<int> meet_table_parallel(const std::vector<Bitset>& xs, const std::vector<Bitset>& ys,
                                     const std::function<int(const Bitset&, const Bitset&)>& classify) {
  int n = int(xs.size()), m = int(ys.size());
  std::vector<int> t(size_t(n) * m);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) t[size_t(i) * m + j] = classify(xs[i] & ys[j], ys[j]);
  return t;
}

}  // namespace modhecke
