#include "toda/gauge.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "internal_util.hpp"
#include "toda/errors.hpp"
#include "toda/lattice.hpp"

namespace toda {

using detail::guarded_exp;

SquareMatrix lower_shift(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) m(i + 1, i) = 1.0;
    return m;
}

SquareMatrix gamma_matrix(const MoserState& m, const ToleranceConfig& tol) {
    validate(m, tol);
    const std::size_t n = m.size();
    SquareMatrix g(n);
    for (std::size_t i = 0; i < n; ++i) g(i, 0) = m.w[i];
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) g(i, j) = m.phat[i] * g(i, j - 1);
    return g;
}

IwasawaFactors iwasawa_of_gamma_inverse(const MoserState& m, const ToleranceConfig& tol) {
    const SquareMatrix g = gamma_matrix(m, tol);
    const std::size_t n = g.size();
    const auto [q, r] = qr_positive(g, tol);

    // Gamma = Q R  =>  Gamma^{-1} = (R^{-1} diag(R_ii)) diag(1/R_ii) Q^T.
    IwasawaFactors f;
    f.eta_k = transpose(q);
    f.rho.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.rho[i] = 1.0 / r(i, i);

    SquareMatrix rinv(n);
    for (std::size_t col = 0; col < n; ++col) {
        rinv(col, col) = 1.0 / r(col, col);
        for (std::size_t i = col; i-- > 0;) {
            double s = 0.0;
            for (std::size_t k = i + 1; k <= col; ++k) s += r(i, k) * rinv(k, col);
            rinv(i, col) = -s / r(i, i);
        }
    }
    f.eta_plus = SquareMatrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) f.eta_plus(i, j) = rinv(i, j) * r(j, j);
        f.eta_plus(j, j) = 1.0;
    }

    const SquareMatrix residual =
        (f.eta_plus * SquareMatrix::diagonal(f.rho)) * (f.eta_k * g) - SquareMatrix::identity(n);
    // The residual of a backward-stable factorization grows with cond(Gamma)
    // = cond(R); past that point the fixed bound would flag sound results,
    // so the gate widens with an inf-norm condition estimate.
    double r_norm = 0.0, rinv_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row_r = 0.0, row_rinv = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            row_r += std::abs(r(i, j));
            row_rinv += std::abs(rinv(i, j));
        }
        r_norm = std::max(r_norm, row_r);
        rinv_norm = std::max(rinv_norm, row_rinv);
    }
    const double allowed =
        std::max(tol.iwasawa_residual, 50.0 * 2.22e-16 * r_norm * rinv_norm);
    if (max_abs(residual) > allowed)
        throw ResidualTooLarge("Iwasawa residual " + detail::fmt_sci(max_abs(residual)) +
                               " exceeds " + detail::fmt_sci(allowed));
    return f;
}

TodaState moser_to_toda(const MoserState& m, const ToleranceConfig& tol) {
    const IwasawaFactors f = iwasawa_of_gamma_inverse(m, tol);
    const std::size_t n = m.size();

    const SquareMatrix conj =
        (f.eta_k * SquareMatrix::diagonal(m.phat)) * transpose(f.eta_k);

    TodaState s;
    s.q.resize(n);
    s.p.resize(n);
    // rho_i = e^{-q_{n+1-i}/2} and conj_ii = -p_{n+1-i} (slot i holds
    // particle n+1-i, matching lax_matrix).
    for (std::size_t i = 0; i < n; ++i) s.q[n - 1 - i] = -2.0 * std::log(f.rho[i]);
    for (std::size_t i = 0; i < n; ++i) s.p[n - 1 - i] = -conj(i, i);

    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t band = i > j ? i - j : j - i;
            if (band >= 2 && std::abs(conj(i, j)) > tol.tridiagonal_tol)
                throw GaugeMismatch("conjugated matrix is not tridiagonal: |entry| = " +
                                    detail::fmt_sci(std::abs(conj(i, j))));
        }
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(conj(i + 1, i) > 0.0))
            throw GaugeMismatch("conjugated matrix has a non-positive off-diagonal");

    const SquareMatrix recon = lax_matrix(s, tol);
    if (max_abs(conj - recon) > tol.gauge_match_tol)
        throw GaugeMismatch("conjugated matrix does not match the Lax matrix of the readout");
    return s;
}

MoserState toda_to_moser(const TodaState& s, const ToleranceConfig& tol) {
    const SquareMatrix l = lax_matrix(s, tol);
    const EigenDecomposition eig = sym_eigen_desc(l, tol);
    const std::size_t n = s.size();

    const double qn = s.q[n - 1];
    const double scale = guarded_exp(0.5 * qn, tol);

    MoserState m;
    m.phat = eig.values;
    m.w.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double first = eig.vectors(0, i);
        if (!(first > 0.0))
            throw GaugeMismatch("spectral readout produced a nonpositive first component");
        m.w[i] = scale * first;
    }

    double norm = 0.0;
    for (double wi : m.w) norm += wi * wi;
    const double target = guarded_exp(qn, tol);
    if (std::abs(norm - target) > tol.norming_tol * target)
        throw ResidualTooLarge("norming constants violate sum w_i^2 = e^{q_n}");
    return m;
}

double resolvent(const TodaState& s, double z, const ToleranceConfig& tol) {
    const SquareMatrix l = lax_matrix(s, tol);
    const std::size_t n = s.size();

    const EigenDecomposition eig = sym_eigen_desc(l, tol);
    for (double ev : eig.values)
        if (std::abs(z - ev) < tol.near_pole_tol)
            throw NearPole("z within tolerance of an eigenvalue");

    SquareMatrix shifted(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) shifted(i, j) = (i == j ? z : 0.0) - l(i, j);
    std::vector<double> e1(n, 0.0);
    e1[0] = 1.0;
    const std::vector<double> x = solve(shifted, e1, tol);
    return guarded_exp(s.q[n - 1], tol) * x[0];
}

SquareMatrix hankel(const MoserState& m, const ToleranceConfig& tol) {
    const SquareMatrix g = gamma_matrix(m, tol);
    const std::size_t n = m.size();

    // Moment route: Y_{ij} = sum_k phat_k^{i+j-2} w_k^2, exactly Hankel by
    // construction.
    std::vector<double> moments(2 * n - 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double pw = m.w[k] * m.w[k];
        for (std::size_t mo = 0; mo < moments.size(); ++mo) {
            moments[mo] += pw;
            pw *= m.phat[k];
        }
    }
    SquareMatrix y(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) y(i, j) = moments[i + j];

    // Cross-check against the Gram product.
    const SquareMatrix product = transpose(g) * g;
    const double dev = max_abs(y - product);
    if (dev > tol.hankel_structure_tol * std::max(1.0, max_abs(y)))
        throw ResidualTooLarge("Hankel structure deviates from Gram product by " +
                               detail::fmt_sci(dev));
    return y;
}

std::vector<double> minors_cauchy_binet(const MoserState& m, const ToleranceConfig& tol) {
    validate(m, tol);
    const std::size_t n = m.size();
    if (n > 20) throw DimensionTooLarge("subset enumeration capped at n = 20");

    std::vector<double> log_w2(n), log_gap(n * n, 0.0);
    double max_abs_logw2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        log_w2[i] = 2.0 * std::log(m.w[i]);
        max_abs_logw2 = std::max(max_abs_logw2, std::abs(log_w2[i]));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            log_gap[i * n + j] = std::log(m.phat[i] - m.phat[j]);

    const double spread = m.phat.front() - m.phat.back();
    const bool log_space = max_abs_logw2 > tol.log_space_threshold ||
                           spread > tol.log_space_threshold;

    std::vector<std::size_t> members;
    members.reserve(n);

    auto enumerate_log = [&](std::vector<detail::LogSumAccumulator>& acc) {
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            members.clear();
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) members.push_back(i);
            double lt = 0.0;
            for (std::size_t a : members) lt += log_w2[a];
            for (std::size_t ai = 0; ai < members.size(); ++ai)
                for (std::size_t bi = ai + 1; bi < members.size(); ++bi)
                    lt += 2.0 * log_gap[members[ai] * n + members[bi]];
            acc[members.size() - 1].add(lt);
        }
    };

    std::vector<double> minors(n, 0.0);
    if (!log_space) {
        bool finite = true;
        for (std::uint32_t mask = 1; mask < (1u << n) && finite; ++mask) {
            members.clear();
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) members.push_back(i);
            double t = 1.0;
            for (std::size_t a : members) t *= m.w[a] * m.w[a];
            for (std::size_t ai = 0; ai < members.size(); ++ai)
                for (std::size_t bi = ai + 1; bi < members.size(); ++bi) {
                    const double gap = m.phat[members[ai]] - m.phat[members[bi]];
                    t *= gap * gap;
                }
            minors[members.size() - 1] += t;
            finite = std::isfinite(minors[members.size() - 1]);
        }
        if (finite) return minors;
        // Direct accumulation overflowed inside the allowed envelope;
        // redo the sum in log space.
    }

    std::vector<detail::LogSumAccumulator> acc(n);
    enumerate_log(acc);
    for (std::size_t k = 0; k < n; ++k) minors[k] = acc[k].value(tol);
    return minors;
}

MomentImage moment_map(const BigPhasePoint& pt, const ToleranceConfig& tol) {
    if (pt.g.size() != pt.j.size()) throw InvalidState("g and J differ in size");
    const SquareMatrix conj = (pt.g * pt.j) * inverse(pt.g, tol);
    const MatrixParts conj_parts = parts(conj);
    const MatrixParts j_parts = parts(pt.j);
    return {conj_parts.strictly_lower, -1.0 * j_parts.antisym};
}

std::vector<double> invariant_hamiltonians(const BigPhasePoint& pt, const ToleranceConfig& tol) {
    return leading_minors(inverse(pt.g * transpose(pt.g), tol));
}

BigPhasePoint toda_slice_point(const TodaState& s, const ToleranceConfig& tol) {
    validate(s);
    const std::size_t n = s.size();
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = guarded_exp(-0.5 * s.q[n - 1 - i], tol);
    return {SquareMatrix::diagonal(diag), lax_matrix(s, tol)};
}

BigPhasePoint moser_slice_point(const MoserState& m, const ToleranceConfig& tol) {
    return {inverse(gamma_matrix(m, tol), tol), SquareMatrix::diagonal(m.phat)};
}

} // namespace toda
