#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace canthresh {

// minimize c.x subject to A x <= b, x >= 0, with b >= 0 so the origin is feasible.
struct LinearProgram {
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    std::vector<Rational> c;
};

struct LpSolution {
    bool bounded = true;
    Rational value;
    std::vector<Rational> x;
};

// Dense tableau simplex with Bland's rule. Exact, so it cannot cycle or drift.
// Returns nullopt if the arithmetic overflows.
inline std::optional<LpSolution> minimize(const LinearProgram& lp) {
    const std::size_t m = lp.A.size(), nv = lp.c.size();
    if (lp.b.size() != m) throw std::invalid_argument("lp: row count mismatch");
    for (auto& row : lp.A)
        if (row.size() != nv) throw std::invalid_argument("lp: column count mismatch");
    for (auto& v : lp.b)
        if (v.sign() < 0) throw std::invalid_argument("lp: origin must be feasible");

    const std::size_t cols = nv + m;
    try {
        std::vector<std::vector<Rational>> T(m, std::vector<Rational>(cols + 1));
        std::vector<std::size_t> basis(m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < nv; ++j) T[i][j] = lp.A[i][j];
            T[i][nv + i] = 1;
            T[i][cols] = lp.b[i];
            basis[i] = nv + i;
        }
        // reduced costs, objective value kept as -z in the last slot
        std::vector<Rational> red(cols + 1);
        for (std::size_t j = 0; j < nv; ++j) red[j] = lp.c[j];

        for (;;) {
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols; ++j)
                if (red[j].sign() < 0) {
                    enter = j;
                    break;
                }
            if (enter == cols) break;

            std::size_t leave = m;
            Rational best;
            for (std::size_t i = 0; i < m; ++i) {
                if (T[i][enter].sign() <= 0) continue;
                Rational ratio = T[i][cols] / T[i][enter];
                if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m) return LpSolution{false, Rational(0), {}};

            Rational piv = T[leave][enter];
            for (auto& v : T[leave]) v /= piv;
            for (std::size_t i = 0; i < m; ++i) {
                if (i == leave || T[i][enter].is_zero()) continue;
                Rational f = T[i][enter];
                for (std::size_t j = 0; j <= cols; ++j)
                    if (!T[leave][j].is_zero()) T[i][j] -= f * T[leave][j];
            }
            if (!red[enter].is_zero()) {
                Rational f = red[enter];
                for (std::size_t j = 0; j <= cols; ++j)
                    if (!T[leave][j].is_zero()) red[j] -= f * T[leave][j];
            }
            basis[leave] = enter;
        }

        LpSolution sol;
        sol.x.assign(nv, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < nv) sol.x[basis[i]] = T[i][cols];
        sol.value = -red[cols];
        return sol;
    } catch (const std::overflow_error&) {
        return std::nullopt;
    }
}

}  // namespace canthresh
