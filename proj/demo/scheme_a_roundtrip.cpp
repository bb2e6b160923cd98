// Simulate the depth-2 correlation tree, add counting noise, and recover the
// moments step by step.
#include <cstdio>

#include "ncl/ncl.hpp"

int main()
{
    using namespace ncl;
    const auto psi = apply_squeeze(make_coherent(0.5, 64), 0.3);
    const MomentTable truth = moment_table(psi, 4);
    const LOConfig lo; // alpha = 5, |T0|^2 = 0.96, |R0| = 0.2, depth 2

    for (std::uint64_t samples : {0ULL, 10000ULL, 1000000ULL, 100000000ULL}) {
        DetectionRecord rec = scheme_a_simulate(truth, lo, 4);
        if (samples > 0)
            rec = add_shot_noise(rec, samples, 7);
        const MomentTable got = scheme_a_invert(scheme_a_fourier_record(rec), lo, 4);
        std::printf("samples %-10llu |d<a^2>| = %.3e  |d s3| = %.3e\n", static_cast<unsigned long long>(samples),
                    std::abs(got(0, 2) - truth(0, 2)), std::abs(s3(got) - s3(truth)));
    }
    return 0;
}
