// Times the parallel kernels against their serial references and checks that
// the outputs are identical.

#include <chrono>
#include <cstdio>
#include <random>

#include "modhecke/kernels.hpp"

using namespace modhecke;
using Clock = std::chrono::steady_clock;

static double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 160;
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> num(-9, 9);

  ExactMatrix a(n, n), b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a.at(i, j) = Rat(num(rng), 1 + (num(rng) & 3));
      b.at(i, j) = Rat(num(rng), 1 + (num(rng) & 3));
    }

  auto t0 = Clock::now();
  ExactMatrix cs = matmul_serial(a, b);
  double serial_ms = ms_since(t0);
  t0 = Clock::now();
  ExactMatrix cp = matmul_parallel(a, b);
  double parallel_ms = ms_since(t0);
  std::printf("matmul %dx%d: serial %.1f ms, parallel %.1f ms, equal %s\n", n, n, serial_ms,
              parallel_ms, cs == cp ? "yes" : "NO");

  int m = 4 * n;
  std::vector<Bitset> xs;
  for (int i = 0; i < m; ++i) {
    Bitset s(256);
    for (int j = 0; j < 256; ++j)
      if (rng() & 1) s.set(j);
    xs.push_back(s);
  }
  auto classify = [](const Bitset& s) { return s.count() & 7; };
  t0 = Clock::now();
  std::vector<int> ts = meet_table_serial(xs, classify);
  serial_ms = ms_since(t0);
  t0 = Clock::now();
  std::vector<int> tp = meet_table_parallel(xs, classify);
  parallel_ms = ms_since(t0);
  std::printf("meet table %d^2: serial %.1f ms, parallel %.1f ms, equal %s\n", m, serial_ms,
              parallel_ms, ts == tp ? "yes" : "NO");
  return (cs == cp && ts == tp) ? 0 : 1;
}
