#pragma once

// Grid evaluation of pure per-point functions. The parallel path writes each
// slot independently, so serial and OpenMP results are bitwise identical;
// the serial path is kept as the reference for tests and benchmarking.

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace qbus {

enum class SweepMode { Serial, Parallel, Auto };

std::vector<double> linspace(double lo, double hi, int count);

using PointFn = std::function<double(double)>;

std::vector<double> sweep_serial(const std::vector<double>& grid, const PointFn& fn);
std::vector<double> sweep_parallel(const std::vector<double>& grid, const PointFn& fn);
std::vector<double> sweep_values(const std::vector<double>& grid, const PointFn& fn,
                                 SweepMode mode = SweepMode::Auto);

bool openmp_enabled();
int openmp_threads();

struct MetricCurve {
    std::vector<double> abscissa;
    std::vector<std::string> names;                 // one per series
    std::vector<std::vector<double>> series;        // series[k][i] over abscissa[i]
    std::map<std::string, std::string> meta;        // effective configuration echo
};

}  // namespace qbus
