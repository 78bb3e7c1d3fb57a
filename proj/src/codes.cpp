#include "cdmm/codes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace cdmm {

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::Repetition: return "rep";
        case Scheme::MDS: return "mds";
        case Scheme::Polynomial: return "poly";
        case Scheme::MatDot: return "matdot";
        case Scheme::Product: return "pro";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "rep" || lower == "repetition") return Scheme::Repetition;
    if (lower == "mds") return Scheme::MDS;
    if (lower == "poly" || lower == "polynomial") return Scheme::Polynomial;
    if (lower == "matdot") return Scheme::MatDot;
    if (lower == "pro" || lower == "product") return Scheme::Product;
    return std::nullopt;
}

std::string describe(const CodeChoice& choice) {
    return std::string(to_string(choice.scheme)) + "(p=" + std::to_string(choice.partitions) + ")";
}

int isqrt(int n) {
    if (n <= 0) return 0;
    int r = static_cast<int>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_perfect_square(int n) {
    const int r = isqrt(n);
    return r * r == n;
}

int product_grid_side(int workers) { return isqrt(workers); }

int workers_used(const CodeChoice& choice, int workers) {
    if (choice.scheme == Scheme::Product) {
        const int side = product_grid_side(workers);
        return side * side;
    }
    return workers;
}

namespace {

int threshold_unchecked(const CodeChoice& c, int n) {
    const int p = c.partitions;
    switch (c.scheme) {
        case Scheme::Repetition: return n - n / p + 1;
        case Scheme::MDS: return p;
        case Scheme::Polynomial: return p * p;
        case Scheme::MatDot: return 2 * p - 1;
        case Scheme::Product: {
            const int side = product_grid_side(n);
            return 2 * (p - 1) * side - (p - 1) * (p - 1) + 1;
        }
    }
    return n + 1;
}

}  // namespace

std::optional<std::string> infeasibility_reason(const CodeChoice& c, int n) {
    const int p = c.partitions;
    if (n < 1) return "worker count must be positive";
    if (p < 2) return "partitions p must be >= 2";
    switch (c.scheme) {
        case Scheme::Repetition:
            if (n % p != 0) return "repetition requires p | N";
            break;
        case Scheme::MDS:
            if (p > n) return "MDS requires p <= N";
            break;
        case Scheme::Polynomial:
            if (p * p > n) return "polynomial requires p^2 <= N";
            break;
        case Scheme::MatDot:
            if (2 * p - 1 > n) return "MatDot requires 2p-1 <= N";
            break;
        case Scheme::Product:
            if (p > product_grid_side(n)) return "product requires p <= floor(sqrt(N))";
            break;
    }
    if (threshold_unchecked(c, n) > workers_used(c, n)) return "recovery threshold k exceeds N";
    return std::nullopt;
}

bool feasible(const CodeChoice& choice, int workers) { return !infeasibility_reason(choice, workers); }

int recovery_threshold(const CodeChoice& choice, int workers) {
    if (auto why = infeasibility_reason(choice, workers)) {
        throw InfeasibleError(describe(choice) + " at N=" + std::to_string(workers) + ": " + *why);
    }
    return threshold_unchecked(choice, workers);
}

double scale_parameter(const CodeChoice& choice) {
    const double p = choice.partitions;
    switch (choice.scheme) {
        case Scheme::Polynomial:
        case Scheme::Product: return p * p;
        default: return p;
    }
}

CompletionPattern::CompletionPattern(std::size_t workers, std::initializer_list<std::size_t> completed)
    : done_(workers, false) {
    for (auto i : completed) insert(i);
}

CompletionPattern::CompletionPattern(std::size_t workers, const std::vector<std::size_t>& completed)
    : done_(workers, false) {
    for (auto i : completed) insert(i);
}

CompletionPattern CompletionPattern::from_mask(std::size_t workers, unsigned long long mask) {
    CompletionPattern out(workers);
    for (std::size_t i = 0; i < workers && i < 64; ++i) {
        if (mask >> i & 1ULL) out.insert(i);
    }
    return out;
}

std::size_t CompletionPattern::count() const {
    return static_cast<std::size_t>(std::count(done_.begin(), done_.end(), true));
}

std::vector<std::size_t> CompletionPattern::indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < done_.size(); ++i)
        if (done_[i]) out.push_back(i);
    return out;
}

}  // namespace cdmm
