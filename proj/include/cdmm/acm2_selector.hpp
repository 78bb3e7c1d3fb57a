#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdmm/analytic_models.hpp"
#include "cdmm/codes.hpp"

namespace cdmm {

struct SelectionConstraints {
    int workers = 2;
    double K = 1.0;
    double L = 1.0;
    double survival_probability = 1.0;  // phi
    double storage_master_max = std::numeric_limits<double>::infinity();
    double storage_worker_max = std::numeric_limits<double>::infinity();
    double success_min = 0.0;  // rho_thr

    void validate() const;
};

struct Exclusion {
    CodeChoice choice;
    std::string reason;
};

struct CandidateSet {
    std::vector<AnalysisRow> admissible;
    std::vector<Exclusion> excluded;
};

// Every (scheme, p), p = 2..N, split into admissible rows (at this lambda) and
// exclusions with the first violated constraint.
CandidateSet enumerate_candidates(const SelectionConstraints& constraints, double lambda);

// Strict ordering used to pick among admissible rows: lower expected time, then lower
// worker storage, lower k, scheme order mds < poly < matdot < pro < rep, lower p.
bool preferred(const AnalysisRow& a, const AnalysisRow& b);

struct SelectionResult {
    CodeChoice choice;
    double objective_time = 0.0;
    AnalysisRow row;
    int feasible_set_size = 0;
};

class NoFeasibleCodeError : public std::runtime_error {
public:
    NoFeasibleCodeError(const std::string& what, std::vector<Exclusion> exclusions)
        : std::runtime_error(what), exclusions_(std::move(exclusions)) {}
    const std::vector<Exclusion>& exclusions() const { return exclusions_; }

private:
    std::vector<Exclusion> exclusions_;
};

// Solves min T over admissible (scheme, p). Throws NoFeasibleCodeError.
SelectionResult select(const SelectionConstraints& constraints, double lambda);

// Best admissible row of one scheme, or nullopt when none is admissible.
std::optional<AnalysisRow> best_for_scheme(const SelectionConstraints& constraints, Scheme scheme, double lambda);

struct IterationTrace {
    int iteration = 0;
    double lambda = 0.0;
    std::optional<SelectionResult> selection;
    std::string error;  // set when no code was admissible this round
    std::optional<double> simulated_time;  // completion time of one simulated round, if decodable
    bool simulated = false;
};

// One selection per round with lambda drawn uniformly from the support. Round r uses
// the random stream derive_seed(master_seed, r) for both the draw and the simulation.
std::vector<IterationTrace> run_iterations(const SelectionConstraints& constraints,
                                           std::span<const double> lambda_support, int rounds,
                                           std::uint64_t master_seed, bool simulate);

}  // namespace cdmm
