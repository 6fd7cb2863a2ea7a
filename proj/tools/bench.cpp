// Serial vs OpenMP timing of the grid-sweep kernels, with a bitwise
// equality check between the two paths.

#include "qbus/scenario.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>

using namespace qbus;

namespace {

template <typename Fn>
double timed(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct Workload {
    const char* name;
    PointFn fn;
};

}  // namespace

int main(int argc, char** argv) {
    int steps = 2001;
    int repeat = 1;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--t-steps") && i + 1 < argc) steps = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--repeat") && i + 1 < argc) repeat = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--help")) {
            std::printf("usage: qbus-bench [--t-steps N] [--repeat K]\n");
            return 0;
        }
    }

    const ModelParams base;
    const EffectiveForm form = EffectiveForm::rwa();
    const auto prep_wide = CavityPrep::coherent(3.0);
    const ModelParams p_wide = base.with_cutoff(min_cutoff(prep_wide));
    const auto prep_mid = CavityPrep::coherent(std::sqrt(0.7));
    const ModelParams p_mid = base.with_cutoff(min_cutoff(prep_mid));

    std::vector<Workload> work;
    work.push_back({"concurrence alpha=3", [&](double t) {
                        return concurrence_coherent(3.0, t, p_wide, form,
                                                    ConcurrenceMode::Wootters);
                    }});
    work.push_back({"fidelity m=0.7", [&](double t) {
                        return fidelity_vs_target(0, prep_mid, Eigen::Vector4cd::Unit(0), t, p_mid,
                                                  form);
                    }});
    work.push_back({"bell overlap m=20", [&](double t) {
                        return bell_overlap_fock(20, t, base, form);
                    }});

    const auto grid = linspace(0.0, 200.0, steps);
    std::printf("grid: %d points, OpenMP %s (%d threads), repeat %d\n", steps,
                openmp_enabled() ? "on" : "off", openmp_threads(), repeat);
    std::printf("%-22s %12s %12s %9s %s\n", "workload", "serial [s]", "parallel [s]", "speedup",
                "bitwise");

    bool all_equal = true;
    for (const auto& w : work) {
        std::vector<double> serial_vals, parallel_vals;
        double ts = 0.0, tp = 0.0;
        for (int r = 0; r < repeat; ++r) {
            ts += timed([&] { serial_vals = sweep_serial(grid, w.fn); });
            tp += timed([&] { parallel_vals = sweep_parallel(grid, w.fn); });
        }
        const bool same = bitwise_equal(serial_vals, parallel_vals);
        all_equal = all_equal && same;
        std::printf("%-22s %12.3f %12.3f %8.2fx %s\n", w.name, ts / repeat, tp / repeat,
                    tp > 0 ? ts / tp : 0.0, same ? "equal" : "DIFFER");
    }
    if (!all_equal) {
        std::printf("serial and parallel results differ\n");
        return 1;
    }
    return 0;
}
