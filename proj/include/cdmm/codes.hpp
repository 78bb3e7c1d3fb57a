#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdmm {

enum class Scheme { Repetition, MDS, Polynomial, MatDot, Product };

inline constexpr std::array<Scheme, 5> kAllSchemes = {
    Scheme::Repetition, Scheme::MDS, Scheme::Polynomial, Scheme::MatDot, Scheme::Product};

std::string_view to_string(Scheme s);

// Accepts the short names used on the command line and in CSV files
// ("rep", "mds", "poly", "matdot", "pro") as well as the full names.
std::optional<Scheme> parse_scheme(std::string_view name);

struct CodeChoice {
    Scheme scheme = Scheme::MDS;
    int partitions = 2;

    bool operator==(const CodeChoice&) const = default;
};

std::string describe(const CodeChoice& choice);

class InfeasibleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotEnoughResultsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IllConditionedError : public std::runtime_error {
public:
    IllConditionedError(const std::string& what, double condition)
        : std::runtime_error(what), condition_(condition) {}
    double condition() const { return condition_; }

private:
    double condition_;
};

int isqrt(int n);
bool is_perfect_square(int n);

// Side of the product-code grid: floor(sqrt(N)).
int product_grid_side(int workers);

// Workers that actually receive a task. Product codes idle everything past floor(sqrt N)^2.
int workers_used(const CodeChoice& choice, int workers);

// Returns the violated constraint, or nullopt when (choice, N) is feasible.
std::optional<std::string> infeasibility_reason(const CodeChoice& choice, int workers);

bool feasible(const CodeChoice& choice, int workers);

// Minimum number of results that guarantees decoding in the worst case.
int recovery_threshold(const CodeChoice& choice, int workers);

// Sub-task scale alpha: p for rep/MDS/MatDot, p^2 for polynomial/product.
double scale_parameter(const CodeChoice& choice);

// Set of workers (0-based) whose results have arrived.
class CompletionPattern {
public:
    explicit CompletionPattern(std::size_t workers) : done_(workers, false) {}
    CompletionPattern(std::size_t workers, std::initializer_list<std::size_t> completed);
    CompletionPattern(std::size_t workers, const std::vector<std::size_t>& completed);

    // Bit i of mask set <=> worker i completed. workers <= 64.
    static CompletionPattern from_mask(std::size_t workers, unsigned long long mask);

    std::size_t workers() const { return done_.size(); }
    bool contains(std::size_t worker) const { return done_.at(worker); }
    void insert(std::size_t worker) { done_.at(worker) = true; }
    void erase(std::size_t worker) { done_.at(worker) = false; }
    std::size_t count() const;
    std::vector<std::size_t> indices() const;

    bool operator==(const CompletionPattern&) const = default;

private:
    std::vector<bool> done_;
};

}  // namespace cdmm
