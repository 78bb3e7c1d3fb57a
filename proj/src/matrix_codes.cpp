#include "cdmm/matrix_codes.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "cdmm/delay_stats.hpp"
#include "small_solve.hpp"

namespace cdmm {

std::vector<DenseMatrix> partition_columnwise(const DenseMatrix& m, int p) {
    if (p < 1 || m.cols() % static_cast<std::size_t>(p) != 0) {
        throw InfeasibleError("infeasible partition: " + std::to_string(p) + " does not divide " +
                              std::to_string(m.cols()) + " columns");
    }
    const std::size_t w = m.cols() / static_cast<std::size_t>(p);
    std::vector<DenseMatrix> out;
    out.reserve(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) out.push_back(block(m, 0, static_cast<std::size_t>(j) * w, m.rows(), w));
    return out;
}

std::vector<DenseMatrix> partition_rowwise(const DenseMatrix& m, int p) {
    if (p < 1 || m.rows() % static_cast<std::size_t>(p) != 0) {
        throw InfeasibleError("infeasible partition: " + std::to_string(p) + " does not divide " +
                              std::to_string(m.rows()) + " rows");
    }
    const std::size_t h = m.rows() / static_cast<std::size_t>(p);
    std::vector<DenseMatrix> out;
    out.reserve(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) out.push_back(block(m, static_cast<std::size_t>(j) * h, 0, h, m.cols()));
    return out;
}

std::vector<double> evaluation_points(int workers) {
    std::vector<double> x(static_cast<std::size_t>(workers));
    for (int n = 1; n <= workers; ++n) x[static_cast<std::size_t>(n - 1)] = 2.0 * n / (workers + 1) - 1.0;
    return x;
}

std::vector<double> parity_nodes(int length, int dimension) {
    const int m = length - dimension;
    std::vector<double> y;
    for (int r = 1; r <= m; ++r) y.push_back(2.0 * r / (m + 1));
    return y;
}

DenseMatrix systematic_generator(int length, int dimension) {
    if (dimension < 1 || length < dimension) throw std::invalid_argument("systematic_generator: need 1 <= p <= n");
    DenseMatrix g(static_cast<std::size_t>(length), static_cast<std::size_t>(dimension));
    for (int i = 0; i < dimension; ++i) g(i, i) = 1.0;
    const auto nodes = parity_nodes(length, dimension);
    for (std::size_t r = 0; r < nodes.size(); ++r) {
        double power = 1.0;
        for (int j = 0; j < dimension; ++j) {
            g(static_cast<std::size_t>(dimension) + r, static_cast<std::size_t>(j)) = power;
            power *= nodes[r];
        }
    }
    return g;
}

int CodedTaskSet::replica_block(std::size_t worker) const {
    const int per_block = workers / choice.partitions;
    return static_cast<int>(worker) / per_block;
}

namespace {

std::vector<double> powers(double x, int count, int stride = 1) {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) out[static_cast<std::size_t>(j)] = std::pow(x, j * stride);
    return out;
}

}  // namespace

CodedTaskSet encode(const DenseMatrix& a, const DenseMatrix& b, const CodeChoice& choice, int workers) {
    if (auto why = infeasibility_reason(choice, workers)) {
        throw InfeasibleError(describe(choice) + " at N=" + std::to_string(workers) + ": " + *why);
    }
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("encode: A and B must both be L x K");
    }
    const int p = choice.partitions;
    CodedTaskSet t;
    t.choice = choice;
    t.workers = workers;
    t.K = a.cols();
    t.L = a.rows();

    switch (choice.scheme) {
        case Scheme::Repetition: {
            const auto blocks = partition_columnwise(a, p);
            for (int n = 0; n < workers; ++n) {
                t.payloads.push_back({blocks[static_cast<std::size_t>(t.replica_block(n))], b});
            }
            break;
        }
        case Scheme::MDS: {
            const auto blocks = partition_columnwise(a, p);
            t.generator = systematic_generator(workers, p);
            t.eval_points = parity_nodes(workers, p);
            for (int n = 0; n < workers; ++n) {
                t.payloads.push_back({linear_combination(blocks, t.generator.row(n)), b});
            }
            break;
        }
        case Scheme::Polynomial: {
            const auto ab = partition_columnwise(a, p);
            const auto bb = partition_columnwise(b, p);
            t.eval_points = evaluation_points(workers);
            for (double x : t.eval_points) {
                t.payloads.push_back({linear_combination(ab, powers(x, p)), linear_combination(bb, powers(x, p, p))});
            }
            break;
        }
        case Scheme::MatDot: {
            const auto ab = partition_rowwise(a, p);
            const auto bb = partition_rowwise(b, p);
            t.eval_points = evaluation_points(workers);
            for (double x : t.eval_points) {
                auto wb = powers(x, p);
                std::reverse(wb.begin(), wb.end());  // B_j x^(p-1-j)
                t.payloads.push_back({linear_combination(ab, powers(x, p)), linear_combination(bb, wb)});
            }
            break;
        }
        case Scheme::Product: {
            const auto ab = partition_columnwise(a, p);
            const auto bb = partition_columnwise(b, p);
            const int side = product_grid_side(workers);
            t.generator = systematic_generator(side, p);
            t.eval_points = parity_nodes(side, p);
            std::vector<DenseMatrix> coded_a, coded_b;
            for (int i = 0; i < side; ++i) {
                coded_a.push_back(linear_combination(ab, t.generator.row(i)));
                coded_b.push_back(linear_combination(bb, t.generator.row(i)));
            }
            for (int i = 0; i < side; ++i) {
                for (int j = 0; j < side; ++j) {
                    t.payloads.push_back({coded_a[static_cast<std::size_t>(i)], coded_b[static_cast<std::size_t>(j)]});
                    t.grid.push_back({i, j});
                }
            }
            break;
        }
    }
    return t;
}

ProductPeeler::ProductPeeler(int side, int partitions)
    : side_(side), partitions_(partitions), recovered_(static_cast<std::size_t>(side * side), 0) {}

bool ProductPeeler::receive(int cell) {
    auto& slot = recovered_.at(static_cast<std::size_t>(cell));
    if (!slot) {
        slot = 1;
        ++recovered_count_;
        peel();
    }
    return decoded();
}

void ProductPeeler::peel() {
    bool changed = true;
    while (changed && !decoded()) {
        changed = false;
        for (int i = 0; i < side_; ++i) {
            int known = 0;
            for (int j = 0; j < side_; ++j) known += recovered_[static_cast<std::size_t>(i * side_ + j)];
            if (known >= partitions_ && known < side_) {
                for (int j = 0; j < side_; ++j) recovered_[static_cast<std::size_t>(i * side_ + j)] = 1;
                recovered_count_ += side_ - known;
                changed = true;
            }
        }
        for (int j = 0; j < side_; ++j) {
            int known = 0;
            for (int i = 0; i < side_; ++i) known += recovered_[static_cast<std::size_t>(i * side_ + j)];
            if (known >= partitions_ && known < side_) {
                for (int i = 0; i < side_; ++i) recovered_[static_cast<std::size_t>(i * side_ + j)] = 1;
                recovered_count_ += side_ - known;
                changed = true;
            }
        }
    }
}

bool decodable(const CodeChoice& choice, int workers, const CompletionPattern& pattern) {
    if (pattern.workers() != static_cast<std::size_t>(workers)) {
        throw std::invalid_argument("decodable: pattern size must equal N");
    }
    const int k = recovery_threshold(choice, workers);
    const int p = choice.partitions;
    switch (choice.scheme) {
        case Scheme::Repetition: {
            const int per_block = workers / p;
            std::vector<char> covered(static_cast<std::size_t>(p), 0);
            for (auto w : pattern.indices()) covered[w / static_cast<std::size_t>(per_block)] = 1;
            for (char c : covered)
                if (!c) return false;
            return true;
        }
        case Scheme::MDS:
        case Scheme::Polynomial:
        case Scheme::MatDot: return static_cast<int>(pattern.count()) >= k;
        case Scheme::Product: {
            const int side = product_grid_side(workers);
            ProductPeeler peeler(side, p);
            for (auto w : pattern.indices()) {
                if (static_cast<int>(w) < side * side && peeler.receive(static_cast<int>(w))) return true;
            }
            return peeler.decoded();
        }
    }
    return false;
}

CompletionPattern random_minimal_pattern(const CodeChoice& choice, int workers, Rng& rng) {
    const int k = recovery_threshold(choice, workers);
    const int used = workers_used(choice, workers);
    std::vector<std::size_t> order(static_cast<std::size_t>(used));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    // Fisher-Yates with the project stream so patterns are reproducible.
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);

    CompletionPattern pattern(static_cast<std::size_t>(workers));
    switch (choice.scheme) {
        case Scheme::MDS:
        case Scheme::Polynomial:
        case Scheme::MatDot:
            for (int i = 0; i < k; ++i) pattern.insert(order[static_cast<std::size_t>(i)]);
            return pattern;
        case Scheme::Repetition: {
            const std::size_t per_block = static_cast<std::size_t>(workers / choice.partitions);
            for (int b = 0; b < choice.partitions; ++b) {
                pattern.insert(static_cast<std::size_t>(b) * per_block + rng.index(per_block));
            }
            return pattern;
        }
        case Scheme::Product: {
            for (auto w : order) {
                pattern.insert(w);
                if (decodable(choice, workers, pattern)) break;
            }
            for (auto w : pattern.indices()) {
                pattern.erase(w);
                if (!decodable(choice, workers, pattern)) pattern.insert(w);
            }
            return pattern;
        }
    }
    return pattern;
}

CompletionPattern product_worst_case_pattern(int workers, int partitions) {
    const int side = product_grid_side(workers);
    const int hole = side - partitions + 1;
    if (partitions < 2 || hole < 2) throw std::invalid_argument("product_worst_case_pattern: need 2 <= p < side");
    CompletionPattern pattern(static_cast<std::size_t>(workers));
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j)
            if (i >= hole || j >= hole) pattern.insert(static_cast<std::size_t>(i * side + j));
    pattern.insert(0);
    return pattern;
}

namespace {

struct ExpectedShape {
    std::size_t rows;
    std::size_t cols;
};

ExpectedShape result_shape(const CodedTaskSet& t) {
    const std::size_t p = static_cast<std::size_t>(t.choice.partitions);
    switch (t.choice.scheme) {
        case Scheme::Repetition:
        case Scheme::MDS: return {t.K / p, t.K};
        case Scheme::Polynomial:
        case Scheme::Product: return {t.K / p, t.K / p};
        case Scheme::MatDot: return {t.K, t.K};
    }
    return {0, 0};
}

// Recovers the p message blocks behind k results of an evaluation/generator code.
// rows[r] holds the code coefficients of result r.
detail::SmallInverse invert_rows(const std::vector<std::vector<double>>& rows, const char* what) {
    const int k = static_cast<int>(rows.size());
    std::vector<double> system;
    system.reserve(static_cast<std::size_t>(k) * k);
    for (const auto& r : rows) system.insert(system.end(), r.begin(), r.end());
    return detail::invert_checked(system, k, what);
}

DenseMatrix assemble_grid(const std::vector<DenseMatrix>& blocks, int p) {
    std::vector<DenseMatrix> rows;
    for (int i = 0; i < p; ++i) {
        std::span<const DenseMatrix> row(blocks.data() + static_cast<std::size_t>(i) * p, static_cast<std::size_t>(p));
        rows.push_back(hconcat(row));
    }
    return vconcat(rows);
}

DenseMatrix decode_product(const CodedTaskSet& t, std::vector<std::optional<DenseMatrix>> cells) {
    const int p = t.choice.partitions;
    const int side = product_grid_side(t.workers);
    const auto at = [&](int i, int j) -> std::optional<DenseMatrix>& {
        return cells[static_cast<std::size_t>(i * side + j)];
    };

    // One peeling step on a line: `line(m)` is the m-th cell, `coeff(m)` its generator row.
    const auto recover_line = [&](auto&& line) -> bool {
        std::vector<int> known;
        for (int m = 0; m < side; ++m)
            if (line(m).has_value()) known.push_back(m);
        if (static_cast<int>(known.size()) < p || static_cast<int>(known.size()) == side) return false;
        std::vector<std::vector<double>> coeffs;
        std::vector<DenseMatrix> rhs;
        for (int r = 0; r < p; ++r) {
            const auto g = t.generator.row(static_cast<std::size_t>(known[static_cast<std::size_t>(r)]));
            coeffs.emplace_back(g.begin(), g.end());
            rhs.push_back(*line(known[static_cast<std::size_t>(r)]));
        }
        const auto inv = invert_rows(coeffs, "product peeling step");
        std::vector<DenseMatrix> message;
        for (int b = 0; b < p; ++b) message.push_back(detail::apply_row(inv, b, rhs));
        for (int m = 0; m < side; ++m) {
            if (!line(m)) line(m) = linear_combination(message, t.generator.row(static_cast<std::size_t>(m)));
        }
        return true;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < side; ++i) changed |= recover_line([&](int m) -> auto& { return at(i, m); });
        for (int j = 0; j < side; ++j) changed |= recover_line([&](int m) -> auto& { return at(m, j); });
    }

    std::vector<DenseMatrix> data;
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            if (!at(i, j)) throw NotEnoughResultsError("product decode: peeling stalled");
            data.push_back(*at(i, j));
        }
    }
    return assemble_grid(data, p);
}

}  // namespace

DenseMatrix decode(const CodedTaskSet& t, const std::vector<WorkerResult>& results) {
    const int used = static_cast<int>(t.payloads.size());
    const auto shape = result_shape(t);

    // First result per worker wins; order of arrival is preserved.
    std::vector<const WorkerResult*> ordered;
    std::vector<char> seen(static_cast<std::size_t>(used), 0);
    CompletionPattern pattern(static_cast<std::size_t>(t.workers));
    for (const auto& r : results) {
        if (r.worker >= static_cast<std::size_t>(used)) {
            throw std::invalid_argument("decode: result from worker " + std::to_string(r.worker) +
                                        " which holds no task");
        }
        if (r.value.rows() != shape.rows || r.value.cols() != shape.cols) {
            throw std::invalid_argument("decode: result from worker " + std::to_string(r.worker) +
                                        " has the wrong shape");
        }
        if (seen[r.worker]) continue;
        seen[r.worker] = 1;
        ordered.push_back(&r);
        pattern.insert(r.worker);
    }
    if (!decodable(t.choice, t.workers, pattern)) {
        throw NotEnoughResultsError(describe(t.choice) + ": " + std::to_string(ordered.size()) +
                                    " results are not decodable");
    }

    const int p = t.choice.partitions;
    const int k = recovery_threshold(t.choice, t.workers);
    switch (t.choice.scheme) {
        case Scheme::Repetition: {
            std::vector<const DenseMatrix*> found(static_cast<std::size_t>(p), nullptr);
            for (const auto* r : ordered) {
                auto& slot = found[static_cast<std::size_t>(t.replica_block(r->worker))];
                if (!slot) slot = &r->value;
            }
            std::vector<DenseMatrix> parts;
            for (const auto* f : found) parts.push_back(*f);
            return vconcat(parts);
        }
        case Scheme::MDS: {
            std::vector<std::vector<double>> coeffs;
            std::vector<DenseMatrix> rhs;
            for (int r = 0; r < k; ++r) {
                const auto g = t.generator.row(ordered[static_cast<std::size_t>(r)]->worker);
                coeffs.emplace_back(g.begin(), g.end());
                rhs.push_back(ordered[static_cast<std::size_t>(r)]->value);
            }
            const auto inv = invert_rows(coeffs, "MDS decode");
            std::vector<DenseMatrix> parts;
            for (int j = 0; j < p; ++j) parts.push_back(detail::apply_row(inv, j, rhs));
            return vconcat(parts);
        }
        case Scheme::Polynomial:
        case Scheme::MatDot: {
            std::vector<std::vector<double>> vander;
            std::vector<DenseMatrix> rhs;
            for (int r = 0; r < k; ++r) {
                const auto* res = ordered[static_cast<std::size_t>(r)];
                vander.push_back(powers(t.eval_points[res->worker], k));
                rhs.push_back(res->value);
            }
            const auto inv = invert_rows(vander, "polynomial interpolation");
            if (t.choice.scheme == Scheme::MatDot) return detail::apply_row(inv, p - 1, rhs);
            // Coefficient j + l*p is A_j^T B_l, block (j, l) of C.
            std::vector<DenseMatrix> blocks(static_cast<std::size_t>(k));
            for (int j = 0; j < p; ++j)
                for (int l = 0; l < p; ++l)
                    blocks[static_cast<std::size_t>(j * p + l)] = detail::apply_row(inv, j + l * p, rhs);
            return assemble_grid(blocks, p);
        }
        case Scheme::Product: {
            std::vector<std::optional<DenseMatrix>> cells(static_cast<std::size_t>(used));
            for (const auto* r : ordered) cells[r->worker] = r->value;
            return decode_product(t, std::move(cells));
        }
    }
    throw std::logic_error("decode: unknown scheme");
}

}  // namespace cdmm
