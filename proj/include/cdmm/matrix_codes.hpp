#pragma once

#include <cstddef>
#include <vector>

#include "cdmm/codes.hpp"
#include "cdmm/dense_matrix.hpp"

namespace cdmm {

// Interpolation/decoding systems with a 1-norm condition number above this are rejected.
inline constexpr double kMaxConditionNumber = 1e12;

// p blocks of shape rows x cols/p, left to right. Throws InfeasibleError unless p | cols.
std::vector<DenseMatrix> partition_columnwise(const DenseMatrix& m, int p);

// p blocks of shape rows/p x cols, top to bottom. Throws InfeasibleError unless p | rows.
std::vector<DenseMatrix> partition_rowwise(const DenseMatrix& m, int p);

// Evaluation points for polynomial and MatDot codes: 2n/(N+1) - 1, n = 1..N.
std::vector<double> evaluation_points(int workers);

// Parity nodes of the systematic (n, p) code: 2r/(M+1), r = 1..M, M = n - p.
std::vector<double> parity_nodes(int length, int dimension);

// Generator of the systematic real (n, p) MDS code used by MDS and product codes:
// the identity on top, Vandermonde rows [1, y, ..., y^(p-1)] at the parity nodes below.
// Every p x p row-submatrix is nonsingular (the parity block is totally positive).
DenseMatrix systematic_generator(int length, int dimension);

// Worker n computes left^T * right.
struct WorkerTask {
    DenseMatrix left;
    DenseMatrix right;
};

struct GridCell {
    int row = 0;
    int col = 0;
};

struct CodedTaskSet {
    CodeChoice choice;
    int workers = 0;  // N as requested; product codes use only payloads.size() of them
    std::vector<WorkerTask> payloads;
    // Polynomial/MatDot: per-worker evaluation point. MDS/product: parity nodes.
    std::vector<double> eval_points;
    // MDS: N x p. Product: side x p. Empty otherwise.
    DenseMatrix generator;
    // Product only: grid position of each payload (row-major).
    std::vector<GridCell> grid;
    std::size_t K = 0;  // C is K x K
    std::size_t L = 0;

    // Data block held by a repetition worker.
    int replica_block(std::size_t worker) const;
};

// Encodes A, B (both L x K) so that the workers' results decode to C = A^T B.
CodedTaskSet encode(const DenseMatrix& a, const DenseMatrix& b, const CodeChoice& choice, int workers);

inline DenseMatrix compute_worker(const WorkerTask& task) { return multiply_transposed(task.left, task.right); }

// Incremental row/column peeling on the product-code grid. A row or column with
// at least p recovered cells recovers the rest; rows are swept before columns.
class ProductPeeler {
public:
    ProductPeeler(int side, int partitions);

    // Marks a grid cell (row-major index) received and peels to fixpoint.
    // Returns true once every cell is recovered.
    bool receive(int cell);

    bool decoded() const { return recovered_count_ == side_ * side_; }
    bool recovered(int cell) const { return recovered_[static_cast<std::size_t>(cell)] != 0; }
    int recovered_count() const { return recovered_count_; }

private:
    void peel();

    int side_;
    int partitions_;
    std::vector<char> recovered_;
    int recovered_count_ = 0;
};

bool decodable(const CodeChoice& choice, int workers, const CompletionPattern& pattern);

struct WorkerResult {
    std::size_t worker = 0;
    DenseMatrix value;
};

class Rng;

// A decodable pattern from which no single worker can be dropped, drawn at random:
// a random k-subset for threshold schemes, one random replica per block for
// repetition, random arrival order pruned back to minimal for product codes.
CompletionPattern random_minimal_pattern(const CodeChoice& choice, int workers, Rng& rng);

// Product worst case: every cell except an (s-p+1) x (s-p+1) sub-array, plus one cell
// of that sub-array back. k_pro cells and decodable, but dropping the extra cell leaves an
// undecodable hole. Requires p < s.
CompletionPattern product_worst_case_pattern(int workers, int partitions);

// Recovers C = A^T B from worker results. Throws NotEnoughResultsError when the
// result set is not decodable, IllConditionedError when a solve is too ill-conditioned.
DenseMatrix decode(const CodedTaskSet& tasks, const std::vector<WorkerResult>& results);

}  // namespace cdmm
