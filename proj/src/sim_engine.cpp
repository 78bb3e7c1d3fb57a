#include "cdmm/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include <omp.h>

#include "cdmm/analytic_models.hpp"
#include "cdmm/matrix_codes.hpp"

namespace cdmm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_inputs(const CodeChoice& choice, int workers, double lambda, double phi) {
    if (auto why = infeasibility_reason(choice, workers)) {
        throw InfeasibleError(describe(choice) + " at N=" + std::to_string(workers) + ": " + *why);
    }
    if (!(lambda > 0.0)) throw std::domain_error("simulate: lambda must be positive");
    if (!(phi >= 0.0 && phi <= 1.0)) throw std::domain_error("simulate: phi must lie in [0, 1]");
}

// Neumaier-compensated sum, in the given order.
double compensated_sum(const std::vector<double>& values) {
    double sum = 0.0;
    double carry = 0.0;
    for (double v : values) {
        const double t = sum + v;
        carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    return sum + carry;
}

}  // namespace

RoundOutcome resolve_round(const CodeChoice& choice, int workers, std::vector<WorkerDelay> per_worker) {
    const int k = recovery_threshold(choice, workers);
    RoundOutcome out;
    out.per_worker = std::move(per_worker);
    out.completed_at_decode = CompletionPattern(static_cast<std::size_t>(workers));

    std::vector<std::pair<double, int>> returned;
    for (int w = 0; w < workers; ++w) {
        const auto& d = out.per_worker[static_cast<std::size_t>(w)];
        if (d.status == WorkerStatus::Returned) returned.emplace_back(d.delay, w);
    }
    std::sort(returned.begin(), returned.end());

    double t = kInf;
    switch (choice.scheme) {
        case Scheme::MDS:
        case Scheme::Polynomial:
        case Scheme::MatDot:
            if (static_cast<int>(returned.size()) >= k) t = returned[static_cast<std::size_t>(k - 1)].first;
            break;
        case Scheme::Repetition: {
            const int per_block = workers / choice.partitions;
            std::vector<double> fastest(static_cast<std::size_t>(choice.partitions), kInf);
            for (const auto& [delay, w] : returned) {
                auto& f = fastest[static_cast<std::size_t>(w / per_block)];
                f = std::min(f, delay);
            }
            t = *std::max_element(fastest.begin(), fastest.end());
            break;
        }
        case Scheme::Product: {
            ProductPeeler peeler(product_grid_side(workers), choice.partitions);
            for (const auto& [delay, w] : returned) {
                if (peeler.receive(w)) {
                    t = delay;
                    break;
                }
            }
            break;
        }
    }

    out.decodable = std::isfinite(t);
    out.completion_time = t;
    for (const auto& [delay, w] : returned) {
        if (!out.decodable || delay <= t) out.completed_at_decode.insert(static_cast<std::size_t>(w));
    }
    return out;
}

RoundOutcome simulate_round(const CodeChoice& choice, int workers, double lambda, double phi, Rng& rng) {
    check_inputs(choice, workers, lambda, phi);
    const int used = workers_used(choice, workers);
    const auto model = DelayModel::for_subtask(lambda, scale_parameter(choice));
    std::vector<WorkerDelay> per_worker(static_cast<std::size_t>(workers), {WorkerStatus::Idle, kInf});
    for (int w = 0; w < used; ++w) {
        const bool survives = rng.uniform() < phi;
        const double delay = sample_delay(model, rng);
        per_worker[static_cast<std::size_t>(w)] =
            survives ? WorkerDelay{WorkerStatus::Returned, delay} : WorkerDelay{WorkerStatus::Failed, kInf};
    }
    return resolve_round(choice, workers, std::move(per_worker));
}

ExperimentStats summarize(const std::vector<double>& completion_times) {
    ExperimentStats s;
    s.trials = static_cast<int>(completion_times.size());
    std::vector<double> finite;
    finite.reserve(completion_times.size());
    for (double t : completion_times)
        if (std::isfinite(t)) finite.push_back(t);
    s.decodable_trials = static_cast<int>(finite.size());
    s.undecodable_fraction = s.trials > 0 ? static_cast<double>(s.trials - s.decodable_trials) / s.trials : 0.0;
    if (finite.empty()) {
        s.mean_completion = s.std_error = s.p50 = s.p95 = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    const double n = static_cast<double>(finite.size());
    s.mean_completion = compensated_sum(finite) / n;
    if (finite.size() > 1) {
        std::vector<double> sq(finite.size());
        std::transform(finite.begin(), finite.end(), sq.begin(),
                       [&](double t) { return (t - s.mean_completion) * (t - s.mean_completion); });
        s.std_error = std::sqrt(compensated_sum(sq) / (n - 1.0) / n);
    }
    std::sort(finite.begin(), finite.end());
    const auto rank = [&](double q) {
        const auto idx = static_cast<std::size_t>(std::ceil(q * n));
        return finite[std::clamp<std::size_t>(idx, 1, finite.size()) - 1];
    };
    s.p50 = rank(0.50);
    s.p95 = rank(0.95);
    return s;
}

ExperimentStats run_experiment(const CodeChoice& choice, int workers, double lambda, double phi, int trials,
                               std::uint64_t master_seed, int threads) {
    check_inputs(choice, workers, lambda, phi);
    if (trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
    std::vector<double> times(static_cast<std::size_t>(trials));
    const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(team)
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(master_seed, static_cast<std::uint64_t>(t)));
        times[static_cast<std::size_t>(t)] = simulate_round(choice, workers, lambda, phi, rng).completion_time;
    }
    return summarize(times);
}

ExperimentStats run_experiment_serial(const CodeChoice& choice, int workers, double lambda, double phi, int trials,
                                      std::uint64_t master_seed) {
    check_inputs(choice, workers, lambda, phi);
    if (trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
    std::vector<double> times(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(master_seed, static_cast<std::uint64_t>(t)));
        times[static_cast<std::size_t>(t)] = simulate_round(choice, workers, lambda, phi, rng).completion_time;
    }
    return summarize(times);
}

double expected_time(const CodeChoice& choice, int workers, double lambda, int trials, std::uint64_t master_seed) {
    if (auto exact = exact_expected_time(choice, workers, lambda)) return *exact;
    return run_experiment(choice, workers, lambda, 1.0, trials, master_seed).mean_completion;
}

EmpiricalComparison empirical_vs_analytic(const CodeChoice& choice, int workers, double lambda, int trials,
                                          std::uint64_t master_seed, int threads) {
    EmpiricalComparison c;
    const auto stats = run_experiment(choice, workers, lambda, 1.0, trials, master_seed, threads);
    c.simulated_mean = stats.mean_completion;
    c.simulated_std_error = stats.std_error;
    if (auto exact = exact_expected_time(choice, workers, lambda)) {
        c.exact = *exact;
    } else {
        // Independent stream so the reference is not the simulated mean itself.
        c.exact_is_closed_form = false;
        c.exact = run_experiment(choice, workers, lambda, 1.0, trials, derive_seed(master_seed, 0xE7AC7ULL), threads)
                      .mean_completion;
    }
    c.log_approx = computing_time(choice, workers, lambda);
    c.gap_simulated_exact = std::abs(c.simulated_mean - c.exact) / c.exact;
    c.gap_exact_log = std::abs(c.exact - c.log_approx) / c.exact;
    c.gap_simulated_log = std::abs(c.simulated_mean - c.log_approx) / c.log_approx;
    return c;
}

}  // namespace cdmm
