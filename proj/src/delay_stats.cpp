#include "cdmm/delay_stats.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cdmm {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 finalizer over a Weyl step per index.
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::exponential() { return -std::log1p(-uniform()); }

std::size_t Rng::index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Rng::index: empty range");
    const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
}

std::uint64_t Rng::seed_of_engine() const {
    auto copy = engine_;
    return copy();
}

void DelayModel::validate() const {
    if (!(straggling_rate > 0.0) || !std::isfinite(straggling_rate)) {
        throw std::domain_error("DelayModel: straggling rate must be positive and finite");
    }
    if (!(shift >= 0.0) || !std::isfinite(shift)) throw std::domain_error("DelayModel: shift must be >= 0");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw std::domain_error("DelayModel: scale must be positive");
}

double harmonic(int n) {
    if (n < 0) throw std::domain_error("harmonic: n must be non-negative");
    double h = 0.0;
    // Smallest terms first.
    for (int i = n; i >= 1; --i) h += 1.0 / i;
    return h;
}

double expected_kth_order_statistic(const DelayModel& model, int n, int k) {
    model.validate();
    if (k < 1 || k > n) {
        throw std::domain_error("expected_kth_order_statistic: need 1 <= k <= n, got k=" + std::to_string(k) +
                                ", n=" + std::to_string(n));
    }
    double tail = 0.0;  // H_n - H_{n-k}
    for (int i = n; i > n - k; --i) tail += 1.0 / i;
    return model.shift + model.scale / model.straggling_rate * tail;
}

double sample_delay(const DelayModel& model, Rng& rng) {
    return model.shift + model.scale * rng.exponential() / model.straggling_rate;
}

double sample_kth_order_statistic_renyi(const DelayModel& model, int n, int k, Rng& rng) {
    if (k < 1 || k > n) throw std::domain_error("sample_kth_order_statistic_renyi: need 1 <= k <= n");
    double sum = 0.0;
    for (int i = 1; i <= k; ++i) sum += rng.exponential() / (n - i + 1);
    return model.shift + model.scale * sum / model.straggling_rate;
}

}  // namespace cdmm
