#ifndef TODA_MATRIX_HPP
#define TODA_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "toda/tolerances.hpp"

namespace toda {

// Dense square real matrix, column-major. The only matrix type in the
// library; everything here is n <= 20 so direct O(n^3) methods are used
// throughout.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

    static SquareMatrix identity(std::size_t n);
    static SquareMatrix diagonal(const std::vector<double>& d);

    std::size_t size() const { return n_; }

    double& operator()(std::size_t i, std::size_t j) { return entries_[j * n_ + i]; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[j * n_ + i]; }

    const std::vector<double>& entries() const { return entries_; }

private:
    std::size_t n_ = 0;
    std::vector<double> entries_;
};

SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix operator*(double s, const SquareMatrix& a);
bool operator==(const SquareMatrix& a, const SquareMatrix& b);

SquareMatrix transpose(const SquareMatrix& a);

// Largest entry magnitude; 0 for the empty matrix.
double max_abs(const SquareMatrix& a);

struct QrFactors {
    SquareMatrix q; // orthogonal
    SquareMatrix r; // upper triangular, strictly positive diagonal
};

// Householder QR normalized so that diag(R) > 0, which makes the
// factorization unique. Throws SingularMatrix when some |R_ii| falls
// below singular_threshold relative to the largest column norm of A.
QrFactors qr_positive(const SquareMatrix& a, const ToleranceConfig& tol = {});

struct EigenDecomposition {
    std::vector<double> values; // strictly descending
    SquareMatrix vectors;       // orthogonal, eigenvector i in column i
};

// Cyclic Jacobi eigensolver for symmetric matrices. Eigenvalues are
// returned strictly descending; each eigenvector is normalized so its
// first component is nonnegative. Throws NotSymmetric on asymmetric
// input and DegenerateSpectrum when two eigenvalues agree within
// degeneracy_gap.
EigenDecomposition sym_eigen_desc(const SquareMatrix& a, const ToleranceConfig& tol = {});

// Leading principal minors m_1..m_n, each by LU with partial pivoting
// on the corresponding top-left block (a single pivoted LU of the full
// matrix would not preserve the blocks).
std::vector<double> leading_minors(const SquareMatrix& a);

struct MatrixParts {
    SquareMatrix strictly_lower;
    SquareMatrix diag;
    SquareMatrix strictly_upper;
    SquareMatrix antisym; // (X - X^T)/2
    SquareMatrix sym;     // (X + X^T)/2
};

MatrixParts parts(const SquareMatrix& x);

// Dense inverse via qr_positive; propagates SingularMatrix.
SquareMatrix inverse(const SquareMatrix& a, const ToleranceConfig& tol = {});

// Solve A x = b via qr_positive.
std::vector<double> solve(const SquareMatrix& a, const std::vector<double>& b,
                          const ToleranceConfig& tol = {});

} // namespace toda

#endif
