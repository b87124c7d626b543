#include "toda/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>

#include "internal_util.hpp"
#include "toda/errors.hpp"

namespace toda {

namespace {

void require_same_size(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.size() != b.size())
        throw InvalidState("matrix size mismatch: " + std::to_string(a.size()) + " vs " +
                           std::to_string(b.size()));
}

void require_finite(const SquareMatrix& a) {
    const std::size_t n = a.size();
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (!std::isfinite(a(i, j))) throw InvalidState("non-finite matrix entry");
}

} // namespace

SquareMatrix SquareMatrix::identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

SquareMatrix SquareMatrix::diagonal(const std::vector<double>& d) {
    SquareMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
    require_same_size(a, b);
    const std::size_t n = a.size();
    SquareMatrix c(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) c(i, j) = a(i, j) + b(i, j);
    return c;
}

SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
    require_same_size(a, b);
    const std::size_t n = a.size();
    SquareMatrix c(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) c(i, j) = a(i, j) - b(i, j);
    return c;
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    require_same_size(a, b);
    const std::size_t n = a.size();
    SquareMatrix c(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const double bkj = b(k, j);
            if (bkj == 0.0) continue;
            for (std::size_t i = 0; i < n; ++i) c(i, j) += a(i, k) * bkj;
        }
    return c;
}

SquareMatrix operator*(double s, const SquareMatrix& a) {
    const std::size_t n = a.size();
    SquareMatrix c(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) c(i, j) = s * a(i, j);
    return c;
}

bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
    return a.size() == b.size() && a.entries() == b.entries();
}

SquareMatrix transpose(const SquareMatrix& a) {
    const std::size_t n = a.size();
    SquareMatrix t(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) t(j, i) = a(i, j);
    return t;
}

double max_abs(const SquareMatrix& a) {
    double m = 0.0;
    for (double v : a.entries()) m = std::max(m, std::abs(v));
    return m;
}

QrFactors qr_positive(const SquareMatrix& a, const ToleranceConfig& tol) {
    require_finite(a);
    const std::size_t n = a.size();
    if (n == 0) throw InvalidState("empty matrix");

    double max_col_norm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += a(i, j) * a(i, j);
        max_col_norm = std::max(max_col_norm, std::sqrt(s));
    }

    SquareMatrix r = a;
    SquareMatrix q = SquareMatrix::identity(n);

    // Householder reflections, accumulated into Q on the right.
    std::vector<double> v(n);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double norm_x = 0.0;
        for (std::size_t i = k; i < n; ++i) norm_x = std::hypot(norm_x, r(i, k));
        if (norm_x == 0.0) continue;

        const double alpha = r(k, k) >= 0.0 ? -norm_x : norm_x;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            v[i] = r(i, k) - (i == k ? alpha : 0.0);
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;

        for (std::size_t j = k; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += v[i] * r(i, j);
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < n; ++i) r(i, j) -= f * v[i];
        }
        for (std::size_t j = 0; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += v[i] * q(j, i);
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < n; ++i) q(j, i) -= f * v[i];
        }
    }

    // Flip signs so diag(R) > 0; this pins the unique factorization.
    for (std::size_t i = 0; i < n; ++i) {
        if (r(i, i) < 0.0) {
            for (std::size_t j = i; j < n; ++j) r(i, j) = -r(i, j);
            for (std::size_t j = 0; j < n; ++j) q(j, i) = -q(j, i);
        }
        for (std::size_t j = 0; j < i; ++j) r(i, j) = 0.0; // exact zeros below the diagonal
    }

    for (std::size_t i = 0; i < n; ++i)
        if (!(r(i, i) > tol.singular_threshold * max_col_norm))
            throw SingularMatrix("QR diagonal entry " + std::to_string(i) + " below threshold");

    return {std::move(q), std::move(r)};
}

EigenDecomposition sym_eigen_desc(const SquareMatrix& a, const ToleranceConfig& tol) {
    require_finite(a);
    const std::size_t n = a.size();
    if (n == 0) throw InvalidState("empty matrix");

    const double scale = max_abs(a);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (std::abs(a(i, j) - a(j, i)) > tol.symmetry_tol * std::max(scale, 1e-300))
                throw NotSymmetric("matrix is not symmetric within tolerance");

    SquareMatrix w = a;
    SquareMatrix vecs = SquareMatrix::identity(n);

    // Cyclic Jacobi sweeps; quadratic convergence makes ~15 sweeps ample
    // for n <= 20.
    const double tiny = 1e-18 * std::max(scale, 1e-300);
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < j; ++i) off = std::max(off, std::abs(w(i, j)));
        if (off <= tiny) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = w(p, q);
                if (std::abs(apq) <= tiny) {
                    w(p, q) = w(q, p) = 0.0;
                    continue;
                }
                const double theta = 0.5 * (w(q, q) - w(p, p)) / apq;
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::size_t i = 0; i < n; ++i) {
                    const double wip = w(i, p);
                    const double wiq = w(i, q);
                    w(i, p) = c * wip - s * wiq;
                    w(i, q) = s * wip + c * wiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double wpi = w(p, i);
                    const double wqi = w(q, i);
                    w(p, i) = c * wpi - s * wqi;
                    w(q, i) = s * wpi + c * wqi;
                }
                w(p, q) = w(q, p) = 0.0; // annihilated by construction
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = vecs(i, p);
                    const double viq = vecs(i, q);
                    vecs(i, p) = c * vip - s * viq;
                    vecs(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = w(i, i);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&vals](std::size_t i, std::size_t j) { return vals[i] > vals[j]; });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = SquareMatrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = vals[order[j]];
        const double sign = vecs(0, order[j]) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = sign * vecs(i, order[j]);
    }

    for (std::size_t j = 0; j + 1 < n; ++j)
        if (out.values[j] - out.values[j + 1] < tol.degeneracy_gap)
            throw DegenerateSpectrum("eigenvalue gap " +
                                     detail::fmt_sci(out.values[j] - out.values[j + 1]) +
                                     " below tolerance");

    // Residual gate on A V = V D.
    double residual = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            double av = 0.0;
            for (std::size_t k = 0; k < n; ++k) av += a(i, k) * out.vectors(k, j);
            residual = std::max(residual, std::abs(av - out.values[j] * out.vectors(i, j)));
        }
    if (residual > tol.eigen_residual * std::max(scale, 1e-300))
        throw ResidualTooLarge("eigen reconstruction residual " + detail::fmt_sci(residual));

    return out;
}

std::vector<double> leading_minors(const SquareMatrix& a) {
    require_finite(a);
    const std::size_t n = a.size();
    std::vector<double> minors(n);

    std::vector<double> lu;
    for (std::size_t k = 1; k <= n; ++k) {
        lu.assign(k * k, 0.0);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < k; ++i) lu[j * k + i] = a(i, j);

        double det = 1.0;
        for (std::size_t col = 0; col < k; ++col) {
            std::size_t piv = col;
            for (std::size_t i = col + 1; i < k; ++i)
                if (std::abs(lu[col * k + i]) > std::abs(lu[col * k + piv])) piv = i;
            if (lu[col * k + piv] == 0.0) {
                det = 0.0;
                break;
            }
            if (piv != col) {
                for (std::size_t j = 0; j < k; ++j) std::swap(lu[j * k + col], lu[j * k + piv]);
                det = -det;
            }
            const double pivot = lu[col * k + col];
            det *= pivot;
            for (std::size_t i = col + 1; i < k; ++i) {
                const double f = lu[col * k + i] / pivot;
                if (f == 0.0) continue;
                for (std::size_t j = col + 1; j < k; ++j) lu[j * k + i] -= f * lu[j * k + col];
            }
        }
        minors[k - 1] = det;
    }
    return minors;
}

MatrixParts parts(const SquareMatrix& x) {
    const std::size_t n = x.size();
    MatrixParts p{SquareMatrix(n), SquareMatrix(n), SquareMatrix(n), SquareMatrix(n),
                  SquareMatrix(n)};
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const double v = x(i, j);
            if (i > j)
                p.strictly_lower(i, j) = v;
            else if (i == j)
                p.diag(i, j) = v;
            else
                p.strictly_upper(i, j) = v;
            p.antisym(i, j) = 0.5 * v - 0.5 * x(j, i);
            p.sym(i, j) = 0.5 * v + 0.5 * x(j, i);
        }
    return p;
}

SquareMatrix inverse(const SquareMatrix& a, const ToleranceConfig& tol) {
    const auto [q, r] = qr_positive(a, tol);
    const std::size_t n = a.size();

    // A^{-1} = R^{-1} Q^T by back substitution against each column of Q^T.
    SquareMatrix inv(n);
    std::vector<double> x(n);
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t i = 0; i < n; ++i) x[i] = q(col, i); // (Q^T)_{i,col}
        for (std::size_t ii = n; ii-- > 0;) {
            double s = x[ii];
            for (std::size_t j = ii + 1; j < n; ++j) s -= r(ii, j) * x[j];
            x[ii] = s / r(ii, ii);
        }
        for (std::size_t i = 0; i < n; ++i) inv(i, col) = x[i];
    }
    return inv;
}

std::vector<double> solve(const SquareMatrix& a, const std::vector<double>& b,
                          const ToleranceConfig& tol) {
    if (b.size() != a.size()) throw InvalidState("solve: dimension mismatch");
    const auto [q, r] = qr_positive(a, tol);
    const std::size_t n = a.size();

    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += q(k, i) * b[k];
        x[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= r(ii, j) * x[j];
        x[ii] = s / r(ii, ii);
    }
    return x;
}

} // namespace toda
