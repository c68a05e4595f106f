// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

// The race formulas exactly as written (including the cancellation-prone
// forms), evaluated with 50 significant digits, plus brute-force Markov
// computations that use no closed form at all.

#ifndef DSRISK_TEST_RACE_ORACLE_HPP
#define DSRISK_TEST_RACE_ORACLE_HPP

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cstdint>
#include <vector>

namespace ref {

using Real = boost::multiprecision::cpp_dec_float_50;

inline Real binom(std::int64_t n, std::int64_t k)
{
    Real r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * Real(n - k + i) / Real(i);
    return r;
}

/// (1 - (p/q)^i) / (1 - (p/q)^N); i/N when p = q.
inline Real gambler(std::int64_t i, std::int64_t n, const Real& q)
{
    const Real p = 1 - q;
    if (q == 0) return i == n ? Real(1) : Real(0);
    if (p == q) return Real(i) / Real(n);
    const Real r = p / q;
    return (1 - pow(r, i)) / (1 - pow(r, n));
}

/// Same quantity by solving P_i = q P_{i+1} + p P_{i-1}, P_0 = 0, P_N = 1
/// with the Thomas algorithm.
inline Real gambler_linear_solve(std::int64_t i, std::int64_t n, const Real& q)
{
    if (n == 1) return Real(i);
    const Real p = 1 - q;
    // Unknowns P_1..P_{N-1}: -p P_{k-1} + P_k - q P_{k+1} = 0.
    const std::size_t m = static_cast<std::size_t>(n - 1);
    std::vector<Real> c(m), d(m);
    for (std::size_t k = 0; k < m; ++k) {
        const Real rhs = k + 1 == m ? q : Real(0);
        const Real denom = k == 0 ? Real(1) : Real(1) - (-p) * c[k - 1];
        c[k] = -q / denom;
        d[k] = (rhs - (k == 0 ? Real(0) : Real(-p) * d[k - 1])) / denom;
    }
    std::vector<Real> x(m);
    for (std::size_t k = m; k-- > 0;) x[k] = d[k] - (k + 1 < m ? c[k] * x[k + 1] : Real(0));
    if (i == 0) return 0;
    if (i == n) return 1;
    return x[static_cast<std::size_t>(i - 1)];
}

inline Real catch_up(std::int64_t z, const Real& q)
{
    const Real p = 1 - q;
    if (z < 0 || q >= p) return 1;
    return pow(q / p, z + 1);
}

/// 1 - sum_{k=0}^{z+1} Pois(k; lambda) (1 - (q/p)^{z-k+1}).
inline Real poisson(std::int64_t z, const Real& q)
{
    const Real p = 1 - q;
    if (q >= p) return 1;
    const Real lambda = Real(z + 1) * q / p;
    Real sum = 0;
    Real term = exp(-lambda);
    for (std::int64_t k = 0; k <= z + 1; ++k) {
        if (k > 0) term = term * lambda / Real(k);
        sum += term * (1 - pow(q / p, z - k + 1));
    }
    return 1 - sum;
}

/// 1 - sum_{m=0}^{n-1} C(m+n-1, m) (p^n q^m - p^m q^n).
inline Real negbin(std::int64_t n, const Real& q)
{
    const Real p = 1 - q;
    if (n == 0 || q >= p) return 1;
    Real sum = 0;
    for (std::int64_t m = 0; m < n; ++m) sum += binom(m + n - 1, m) * (pow(p, n) * pow(q, m) - pow(p, m) * pow(q, n));
    return 1 - sum;
}

/// Plays the block race on an (honest, attacker) lattice until the honest
/// side has n blocks, then adds the catch-up probability from whatever gap
/// remains with a one-block head start. Attacker counts beyond `m_max` are
/// lumped together as certain success, so the result is an upper bound that
/// is tight once the tail is negligible.
inline Real negbin_by_lattice(std::int64_t n, const Real& q, std::int64_t m_max = 400)
{
    const Real p = 1 - q;
    if (n == 0) return 1;
    // prob[m] = P(attacker has m blocks while honest has h, race not over).
    std::vector<Real> prob(static_cast<std::size_t>(m_max + 2), Real(0));
    prob[0] = 1;
    Real success = 0;
    for (std::int64_t h = 0; h < n; ++h) {
        // Attacker extends while honest sits at h; next honest block moves to h+1.
        std::vector<Real> next(prob.size(), Real(0));
        Real carry = 0;
        for (std::size_t m = 0; m < prob.size(); ++m) {
            carry = carry * q + prob[m];
            if (m + 1 == prob.size()) {
                success += carry * q; // everything beyond the lattice
            }
            next[m] = carry * p;
        }
        prob = std::move(next);
    }
    for (std::size_t m = 0; m < prob.size(); ++m) {
        const std::int64_t gap = n - static_cast<std::int64_t>(m) - 1;
        success += prob[m] * catch_up(gap, q);
    }
    return success;
}

} // namespace ref

#endif // DSRISK_TEST_RACE_ORACLE_HPP
