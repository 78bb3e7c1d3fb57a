#include "cdmm/acm2_selector.hpp"

#include <cmath>
#include <sstream>

#include "cdmm/delay_stats.hpp"
#include "cdmm/sim_engine.hpp"

namespace cdmm {

void SelectionConstraints::validate() const {
    if (workers < 2) throw std::invalid_argument("constraints: N must be >= 2");
    if (!(K > 0.0) || !(L > 0.0)) throw std::invalid_argument("constraints: K and L must be positive");
    if (!(survival_probability >= 0.0 && survival_probability <= 1.0)) {
        throw std::invalid_argument("constraints: phi must lie in [0, 1]");
    }
    if (!(success_min >= 0.0 && success_min <= 1.0)) throw std::invalid_argument("constraints: rho_thr must lie in [0, 1]");
    if (!(storage_master_max > 0.0) || !(storage_worker_max > 0.0)) {
        throw std::invalid_argument("constraints: storage thresholds must be positive");
    }
}

namespace {

int scheme_rank(Scheme s) {
    switch (s) {
        case Scheme::MDS: return 0;
        case Scheme::Polynomial: return 1;
        case Scheme::MatDot: return 2;
        case Scheme::Product: return 3;
        case Scheme::Repetition: return 4;
    }
    return 5;
}

std::string format_excess(const char* what, double value, const char* op, double bound) {
    std::ostringstream os;
    os << what << ' ' << value << ' ' << op << ' ' << bound;
    return os.str();
}

}  // namespace

CandidateSet enumerate_candidates(const SelectionConstraints& c, double lambda) {
    c.validate();
    CandidateSet out;
    for (Scheme s : kAllSchemes) {
        for (int p = 2; p <= c.workers; ++p) {
            const CodeChoice choice{s, p};
            if (auto why = infeasibility_reason(choice, c.workers)) {
                out.excluded.push_back({choice, *why});
                continue;
            }
            AnalysisRow row = analyze(choice, c.workers, c.K, c.L, c.survival_probability, lambda);
            if (row.storage_worker > c.storage_worker_max) {
                out.excluded.push_back({choice, format_excess("worker storage", row.storage_worker, ">",
                                                              c.storage_worker_max)});
            } else if (row.storage_master > c.storage_master_max) {
                out.excluded.push_back({choice, format_excess("master storage", row.storage_master, ">",
                                                              c.storage_master_max)});
            } else if (row.success_probability < c.success_min) {
                out.excluded.push_back({choice, format_excess("success probability", row.success_probability, "<",
                                                              c.success_min)});
            } else {
                out.admissible.push_back(row);
            }
        }
    }
    return out;
}

bool preferred(const AnalysisRow& a, const AnalysisRow& b) {
    if (a.expected_time != b.expected_time) return a.expected_time < b.expected_time;
    if (a.storage_worker != b.storage_worker) return a.storage_worker < b.storage_worker;
    if (a.k != b.k) return a.k < b.k;
    if (a.choice.scheme != b.choice.scheme) return scheme_rank(a.choice.scheme) < scheme_rank(b.choice.scheme);
    return a.choice.partitions < b.choice.partitions;
}

SelectionResult select(const SelectionConstraints& constraints, double lambda) {
    auto candidates = enumerate_candidates(constraints, lambda);
    if (candidates.admissible.empty()) {
        throw NoFeasibleCodeError("no code satisfies the constraints at N=" + std::to_string(constraints.workers),
                                  std::move(candidates.excluded));
    }
    const AnalysisRow* best = &candidates.admissible.front();
    for (const auto& row : candidates.admissible)
        if (preferred(row, *best)) best = &row;
    return {best->choice, best->expected_time, *best, static_cast<int>(candidates.admissible.size())};
}

std::optional<AnalysisRow> best_for_scheme(const SelectionConstraints& constraints, Scheme scheme, double lambda) {
    std::optional<AnalysisRow> best;
    for (const auto& row : enumerate_candidates(constraints, lambda).admissible) {
        if (row.choice.scheme == scheme && (!best || preferred(row, *best))) best = row;
    }
    return best;
}

std::vector<IterationTrace> run_iterations(const SelectionConstraints& constraints,
                                           std::span<const double> lambda_support, int rounds,
                                           std::uint64_t master_seed, bool simulate) {
    if (lambda_support.empty()) throw std::invalid_argument("run_iterations: empty lambda support");
    if (rounds < 1) throw std::invalid_argument("run_iterations: rounds must be >= 1");
    for (double l : lambda_support)
        if (!(l > 0.0)) throw std::invalid_argument("run_iterations: lambda values must be positive");

    std::vector<IterationTrace> traces;
    traces.reserve(static_cast<std::size_t>(rounds));
    for (int r = 0; r < rounds; ++r) {
        Rng rng(derive_seed(master_seed, static_cast<std::uint64_t>(r)));
        IterationTrace trace;
        trace.iteration = r;
        trace.lambda = lambda_support[rng.index(lambda_support.size())];
        try {
            trace.selection = select(constraints, trace.lambda);
        } catch (const NoFeasibleCodeError& e) {
            trace.error = e.what();
        }
        if (simulate && trace.selection) {
            const auto outcome = simulate_round(trace.selection->choice, constraints.workers, trace.lambda,
                                                constraints.survival_probability, rng);
            trace.simulated = true;
            if (outcome.decodable) trace.simulated_time = outcome.completion_time;
        }
        traces.push_back(std::move(trace));
    }
    return traces;
}

}  // namespace cdmm
