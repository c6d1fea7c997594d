// Times every battery test on the OpenMP kernels and on the serial
// direct-definition build over the same input. Usage:
//   bench_suite [n_bits] [seed]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "qaudit/annealer_sim.hpp"
#include "qaudit/suite.hpp"

#include "reference_suite.hpp"

using namespace qaudit;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_once(F&& f) {
    const auto t0 = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    const std::uint64_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 10'000'000;
    const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
    std::printf("input: %llu crypto-quality bits, %d threads\n",
                static_cast<unsigned long long>(n), omp_get_max_threads());

    const auto bits = reference_generator(ReferenceKind::crypto_quality, seed, n);
    SuiteConfig cfg;

    std::printf("%-26s %12s %12s %9s\n", "test", "parallel_ms", "serial_ms", "speedup");
    double total_par = 0, total_ser = 0;
    for (const auto& name : suite_test_names()) {
        TestResult mine;
        const double par = time_once([&] { mine = run_test(name, bits, cfg); });
        if (!mine.applicable) {
            std::printf("%-26s %12.1f %12s %9s (not applicable at this n)\n", name.c_str(),
                        par * 1e3, "-", "-");
            continue;
        }
        ref::RefResult theirs;
        const double ser = time_once([&] { theirs = ref::run_test(name, bits, cfg); });
        double max_diff = 0;
        for (std::size_t i = 0; i < mine.p_values.size(); ++i)
            max_diff = std::max(max_diff,
                                std::abs(mine.p_values[i].value - theirs.p_values[i].second));
        total_par += par;
        total_ser += ser;
        std::printf("%-26s %12.1f %12.1f %8.1fx  (max |dp| %.2g)\n", name.c_str(), par * 1e3,
                    ser * 1e3, ser / par, max_diff);
    }
    std::printf("%-26s %12.1f %12.1f %8.1fx\n", "total (applicable)", total_par * 1e3,
                total_ser * 1e3, total_ser / total_par);
    return 0;
}
