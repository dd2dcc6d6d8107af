#pragma once

#include <random>
#include <vector>

#include <canthresh/windows.hpp>

namespace testing_support {

using namespace canthresh;

// Independent reference: full box scan in Rational arithmetic, admissibility by
// direct residue search, no pruning and no compiled evaluation.
struct NaiveResult {
    Rational value;
    std::vector<std::int64_t> k;
    bool found = false;
};

inline NaiveResult naive_ct(const Presentation& p, const SeriesSupport& f, std::int64_t cap) {
    auto q = ambient_quotient(p);
    auto eqs = equations(p);
    const std::size_t D = q.dim();
    const std::int64_t n = q.n;
    NaiveResult best;
    std::vector<std::int64_t> k(D, 1);
    auto weight = [&](const Monomial& m) {
        Rational s(0);
        for (std::size_t i = 0; i < D; ++i) s = s + Rational(m[i] * k[i], n);
        return s;
    };
    auto min_weight = [&](const SeriesSupport& g) {
        Rational b = weight(g.terms().front());
        for (auto& t : g.terms()) b = std::min(b, weight(t));
        return b;
    };
    for (;;) {
        bool adm = false;
        for (std::int64_t s = 0; s < n && !adm; ++s) {
            bool ok = true;
            for (std::size_t i = 0; i < D; ++i) ok = ok && (((k[i] - s * q.b[i]) % n) + n) % n == 0;
            adm = ok;
        }
        if (adm) {
            Rational a(-1);
            for (auto v : k) a = a + Rational(v, n);
            for (auto& e : eqs) a = a - min_weight(e);
            if (a.sign() > 0) {
                auto v = a / min_weight(f);
                if (!best.found || v < best.value) best = {v, k, true};
            }
        }
        std::size_t d = D;
        while (d > 0) {
            --d;
            if (++k[d] <= cap) break;
            k[d] = 1;
            if (d == 0) return best;
        }
    }
}

inline SeriesSupport poly(std::size_t dim, std::vector<std::vector<int>> terms) {
    return canthresh::detail::poly(dim, std::move(terms));
}

// Valid presentations with the smallest generic tails, in a fixed order.
inline std::vector<Presentation> valid_grid(Family fam, std::size_t want) {
    std::vector<Presentation> out;
    auto take = [&](Family f, ParamList ps) {
        if (out.size() >= want) return;
        if (auto p = canthresh::detail::candidate_presentation(f, ps)) out.push_back(*p);
    };
    switch (fam) {
        case Family::smooth:
            for (std::int64_t be = 1; be <= 60 && out.size() < want; ++be)
                for (std::int64_t al = 1; al <= be; ++al) take(fam, {{"alpha", al}, {"beta", be}});
            break;
        case Family::quotient:
            for (std::int64_t n = 2; n <= 80 && out.size() < want; ++n)
                for (std::int64_t b = 1; b < n; ++b) take(fam, {{"n", n}, {"b", b}});
            break;
        case Family::cA:
            for (std::int64_t a = 1; a <= 30 && out.size() < want; ++a)
                for (std::int64_t d = 1; d <= 4; ++d)
                    for (std::int64_t r1 = 1; 2 * r1 <= a * d; ++r1)
                        take(fam, {{"r1", r1}, {"r2", a * d - r1}, {"a", a}, {"d", d}});
            break;
        case Family::cAn:
            for (std::int64_t a = 1; a <= 40 && out.size() < want; ++a)
                for (std::int64_t n = 2; n <= 5; ++n)
                    for (std::int64_t b = 1; b < n; ++b)
                        for (std::int64_t d = 1; d <= 2; ++d)
                            for (std::int64_t r1 = 1; r1 < a * d * n; ++r1)
                                take(fam, {{"n", n}, {"b", b}, {"r1", r1}, {"r2", a * d * n - r1}, {"a", a}, {"d", d}});
            break;
        case Family::cD1:
            for (std::int64_t a = 1; a <= 801 && out.size() < want; a += 2)
                for (std::int64_t d = 3; d <= 9; d += 2)
                    if ((a * d - 1) % 2 == 0) take(fam, {{"r", (a * d - 1) / 2}, {"a", a}, {"d", d}});
            break;
        case Family::cD2:
            for (std::int64_t a = 1; a <= 400 && out.size() < want; ++a)
                for (std::int64_t d = 2; d <= 5; ++d) take(fam, {{"r", a * d - 1}, {"a", a}, {"d", d}});
            break;
        case Family::cDh1:
            for (std::int64_t a = 1; a <= 801 && out.size() < want; a += 2)
                for (std::int64_t d = 2; d <= 8; d += 2) take(fam, {{"r", a * d - 1}, {"a", a}, {"d", d}});
            break;
        case Family::cDh2:
            for (std::int64_t a = 1; a <= 400 && out.size() < want; ++a)
                for (std::int64_t d = 1; d <= 4; ++d) take(fam, {{"r", a * (2 * d + 1) - 2}, {"a", a}, {"d", d}});
            break;
    }
    return out;
}

// Random semi-invariant support: monomials of total degree in [1, max_deg] in one residue class.
inline SeriesSupport random_support(std::mt19937_64& rng, const CyclicQuotient& q, int max_deg, int terms) {
    const std::size_t D = q.dim();
    std::uniform_int_distribution<int> coord(0, static_cast<int>(D) - 1), deg(1, max_deg);
    std::optional<std::int64_t> cls;
    std::vector<Monomial> out;
    for (int tries = 0; tries < 200 && static_cast<int>(out.size()) < terms; ++tries) {
        std::vector<int> e(D, 0);
        int dd = deg(rng);
        for (int i = 0; i < dd; ++i) ++e[coord(rng)];
        Monomial m(e);
        auto r = q.residue(m);
        if (cls && *cls != r) continue;
        if (std::find(out.begin(), out.end(), m) != out.end()) continue;
        cls = r;
        out.push_back(m);
    }
    return SeriesSupport(D, out);
}

// Floor/ceiling pattern for one comparison weight w_i with asserted factor c_i
// and discrepancy a_i:  floor((a_i/a) m) >= m_i >= ceil(c_i m).
// The ceiling side needs only domination; the floor side needs the classified
// weight to compute ct, so it is checked only on conforming instances, where the
// classified value a/m is no larger than a_i/m_i.
struct DaggerTally {
    std::size_t instances = 0, conforming = 0, ceiling_checks = 0, floor_checks = 0;
    std::vector<std::string> violations;
};

inline void dagger_check(const Presentation& p, const SeriesSupport& f, const std::vector<std::string>& names,
                         DaggerTally& tally) {
    auto w = classified_weight(p);
    auto a = weighted_discrepancy(p, w);
    auto m = Rational(weighted_multiplicity(f, w).scaled(w.denominator()));
    auto comps = comparison_weights(p, 2);
    struct Side {
        Rational ai, mi, c;
    };
    std::vector<Side> sides;
    bool conforming = true;
    for (auto& name : names) {
        auto cw = find_comparison(comps, name);
        if (!cw || !cw->weight || !cw->factor) return;
        auto ai = weighted_discrepancy(p, *cw->weight);
        if (ai != Rational(cw->discrepancy)) {
            tally.violations.push_back(name + " discrepancy " + ai.str() + " != attached " +
                                       std::to_string(cw->discrepancy) + " on " + f.str());
            return;
        }
        auto mi = Rational(weighted_multiplicity(f, *cw->weight).scaled(cw->weight->denominator()));
        sides.push_back({ai, mi, *cw->factor});
        conforming = conforming && a * mi <= ai * m;
    }
    ++tally.instances;
    if (conforming) ++tally.conforming;
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto cw = find_comparison(comps, names[i]);
        auto r = multiplicity_comparison(f, w, *cw->weight, sides[i].c);
        ++tally.ceiling_checks;
        if (!r.holds || r.m_prime != sides[i].mi)
            tally.violations.push_back(names[i] + " ceiling: m_i=" + sides[i].mi.str() + " < ceil(" +
                                       sides[i].c.str() + "*" + m.str() + ") on " + f.str());
        if (!conforming) continue;
        ++tally.floor_checks;
        if (Rational((sides[i].ai * m / a).floor()) < sides[i].mi)
            tally.violations.push_back(names[i] + " floor: floor(" + sides[i].ai.str() + "/" + a.str() + "*" + m.str() +
                                       ") < m_i=" + sides[i].mi.str() + " on " + f.str());
    }
}

// Runs dagger_check until `want` conforming instances are collected.
inline DaggerTally dagger_suite(Family fam, const std::vector<std::string>& names, std::size_t want,
                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto grid = valid_grid(fam, 60);
    DaggerTally t;
    std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
    std::uniform_int_distribution<int> nterms(1, 4);
    for (std::size_t tries = 0; t.conforming < want && tries < 200 * want; ++tries) {
        auto& p = grid[pick(rng)];
        if (discrepancy_param(p) < 3) continue;
        auto w = classified_weight(p);
        auto f = random_support(rng, ambient_quotient(p), static_cast<int>(std::min<std::int64_t>(w.max_numerator(), 12)),
                                nterms(rng));
        if (f.empty()) continue;
        dagger_check(p, f, names, t);
    }
    return t;
}

}  // namespace testing_support
