#include "qbus/sweep.hpp"

#include "qbus/types.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qbus {

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 2) throw Error("linspace needs at least 2 points");
    std::vector<double> g(count);
    const double step = (hi - lo) / double(count - 1);
    for (int i = 0; i < count; ++i) g[i] = lo + step * double(i);
    g.back() = hi;
    return g;
}

std::vector<double> sweep_serial(const std::vector<double>& grid, const PointFn& fn) {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = fn(grid[i]);
    return out;
}

std::vector<double> sweep_parallel(const std::vector<double>& grid, const PointFn& fn) {
    std::vector<double> out(grid.size());
    const long n = long(grid.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) out[std::size_t(i)] = fn(grid[std::size_t(i)]);
    return out;
}

std::vector<double> sweep_values(const std::vector<double>& grid, const PointFn& fn,
                                 SweepMode mode) {
    if (mode == SweepMode::Serial) return sweep_serial(grid, fn);
    if (mode == SweepMode::Parallel) return sweep_parallel(grid, fn);
    return openmp_enabled() ? sweep_parallel(grid, fn) : sweep_serial(grid, fn);
}

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

int openmp_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace qbus
