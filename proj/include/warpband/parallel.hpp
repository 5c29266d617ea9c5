// Grid reduction and quadrature kernels.
//
// Every kernel comes in two flavours: an OpenMP-parallel entry point (the
// default used throughout the library) and a *_serial reference used by the
// test suite to pin down the parallel results. tools/bench_kernels.cpp times
// one against the other.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace warpband::par {

inline bool parallel_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

inline int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// max_{0<=i<count} |f(i)|
template <class F>
double max_abs_serial(std::int64_t count, F&& f) {
    double m = 0.0;
    for (std::int64_t i = 0; i < count; ++i) m = std::max(m, std::abs(f(i)));
    return m;
}

template <class F>
double max_abs(std::int64_t count, F&& f) {
#ifdef _OPENMP
    double m = 0.0;
#pragma omp parallel for reduction(max : m)
    for (std::int64_t i = 0; i < count; ++i) m = std::max(m, std::abs(f(i)));
    return m;
#else
    return max_abs_serial(count, f);
#endif
}

// out[i] = f(i); used to materialize per-grid-point diagnostics
template <class F>
void fill_serial(std::vector<double>& out, F&& f) {
    const std::int64_t n = static_cast<std::int64_t>(out.size());
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(i);
}

template <class F>
void fill(std::vector<double>& out, F&& f) {
#ifdef _OPENMP
    const std::int64_t n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(i);
#else
    fill_serial(out, f);
#endif
}

namespace detail {
inline int odd_node_count(int nodes) {
    if (nodes < 3) throw std::invalid_argument("quadrature needs at least 3 nodes");
    return (nodes % 2 == 0) ? nodes + 1 : nodes;
}
}  // namespace detail

// Composite Simpson rule on [a, b] with the given node count (forced odd).
template <class F>
double simpson_serial(F&& f, double a, double b, int nodes) {
    const int n = detail::odd_node_count(nodes);
    const double h = (b - a) / (n - 1);
    double s = f(a) + f(b);
    for (int i = 1; i < n - 1; ++i) s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return s * h / 3.0;
}

template <class F>
double simpson(F&& f, double a, double b, int nodes) {
#ifdef _OPENMP
    const int n = detail::odd_node_count(nodes);
    const double h = (b - a) / (n - 1);
    double s = f(a) + f(b);
#pragma omp parallel for reduction(+ : s)
    for (int i = 1; i < n - 1; ++i) s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return s * h / 3.0;
#else
    return simpson_serial(f, a, b, nodes);
#endif
}

}  // namespace warpband::par
