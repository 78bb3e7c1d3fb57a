#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace cdmm {

// 64-bit mix of (master seed, stream index). Trial t of an experiment draws from
// Rng(derive_seed(master, t)), so results never depend on execution order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    Rng split(std::uint64_t index) const { return Rng(derive_seed(seed_of_engine(), index)); }

    // Uniform on [0, 1) with 53 random bits; bit-identical across standard libraries.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Unit-rate exponential by inversion.
    double exponential();

    // Uniform index in [0, n).
    std::size_t index(std::size_t n);

private:
    std::uint64_t seed_of_engine() const;

    std::mt19937_64 engine_;
};

// Delay law a + b * X with X ~ Exp(straggling_rate).
struct DelayModel {
    double straggling_rate = 1.0;  // lambda
    double shift = 1.0;            // a
    double scale = 1.0;            // b

    // Sub-task of scale alpha: shift 1/alpha and exponential rate alpha * lambda.
    static DelayModel for_subtask(double lambda, double alpha) { return {lambda, 1.0 / alpha, 1.0 / alpha}; }

    void validate() const;
};

// H_n = sum_{i=1}^n 1/i, H_0 = 0.
double harmonic(int n);

// E[Y_(k)] of n i.i.d. draws: a + (b/lambda)(H_n - H_{n-k}). Throws std::domain_error unless 1 <= k <= n.
double expected_kth_order_statistic(const DelayModel& model, int n, int k);

double sample_delay(const DelayModel& model, Rng& rng);

// One draw of a + (b/lambda) * sum_{i=1}^k E_i / (n - i + 1): the k-th order
// statistic built from independent exponentials instead of sorting n draws.
double sample_kth_order_statistic_renyi(const DelayModel& model, int n, int k, Rng& rng);

}  // namespace cdmm
