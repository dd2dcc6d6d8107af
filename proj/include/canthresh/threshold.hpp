#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lp.hpp"
#include "parallel.hpp"
#include "presentation.hpp"

namespace canthresh {

struct ThresholdResult {
    Rational value;
    WeightVector weight;
    Monomial witness;
    bool certified = false;
    std::int64_t cap = 0;
    std::string closure;  // which argument certified (or why not)
};

inline void require_semi_invariant(const SeriesSupport& f, const CyclicQuotient& q) {
    if (f.dim() != q.dim()) throw structural_error("series dimension does not match the ambient space");
    if (f.empty()) throw std::invalid_argument("f is empty (f = 0 defines no divisor)");
    const Monomial& first = f.terms().front();
    auto r0 = q.residue(first);
    for (auto& t : f.terms()) {
        auto r = q.residue(t);
        if (r != r0)
            throw std::invalid_argument("f is not semi-invariant: " + first.str() + " has residue " + std::to_string(r0) +
                                        " but " + t.str() + " has residue " + std::to_string(r));
    }
    for (auto& t : f.terms())
        if (t.degree() == 0) throw std::invalid_argument("f is a unit at the origin (constant term present)");
}

inline Rational threshold_upper_bound(const Presentation& p, const SeriesSupport& f, const WeightVector& w) {
    auto q = ambient_quotient(p);
    require_semi_invariant(f, q);
    auto a = weighted_discrepancy(p, w);
    auto mu = weighted_multiplicity(f, w);
    if (!mu.certified) throw std::invalid_argument("multiplicity of f under " + w.str() + " is not certified");
    return a / Rational(mu.scaled(w.denominator()));
}

inline std::pair<std::int64_t, std::int64_t> representation_qp(const Rational& ct, std::int64_t k) {
    if (k < 2 || !(ct > Rational(1, k) && ct < Rational(1, k - 1)))
        throw std::invalid_argument(ct.str() + " is not in the window (1/" + std::to_string(k) + ", 1/" +
                                    std::to_string(k - 1) + ")");
    auto d = ct - Rational(1, k);
    return {d.num(), d.den()};
}

// ------------------------------------------------------------ the problem

// (p, f) flattened for fast evaluation of a(w) and m(w) at integer weights.
class CompiledProblem {
public:
    CompiledProblem(const Presentation& p, const SeriesSupport& f) : f_(f) {
        quotient_ = ambient_quotient(p);
        require_semi_invariant(f, quotient_);
        eqs_ = equations(p);
        dim_ = quotient_.dim();
        n_ = quotient_.n;
        for (auto& e : eqs_) add_group(e);
        add_group(f);
        // residue patterns k_i = s*b_i mod n, one per distinct pattern
        for (std::int64_t s = 0; s < n_; ++s) {
            std::vector<std::int64_t> pat(dim_);
            for (std::size_t i = 0; i < dim_; ++i) pat[i] = mod(s * quotient_.b[i], n_);
            if (std::find(patterns_.begin(), patterns_.end(), pat) == patterns_.end()) patterns_.push_back(pat);
        }
    }

    std::size_t dim() const { return dim_; }
    std::int64_t n() const { return n_; }
    const CyclicQuotient& quotient() const { return quotient_; }
    const std::vector<SeriesSupport>& eqs() const { return eqs_; }
    const SeriesSupport& f() const { return f_; }
    const std::vector<std::vector<std::int64_t>>& patterns() const { return patterns_; }
    std::size_t term_count() const { return terms_.size() / dim_; }
    const std::vector<int>& flat_terms() const { return terms_; }
    const std::vector<std::size_t>& group_begin() const { return groups_; }

    // returns (a, m) at the integer weight k (numerators over n)
    std::pair<std::int64_t, std::int64_t> evaluate(const std::vector<std::int64_t>& k) const {
        std::int64_t a = -n_;
        for (auto v : k) a += v;
        std::int64_t m = 0;
        for (std::size_t g = 0; g + 1 < groups_.size(); ++g) {
            std::int64_t best = INT64_MAX;
            for (std::size_t t = groups_[g]; t < groups_[g + 1]; ++t) {
                std::int64_t s = 0;
                for (std::size_t j = 0; j < dim_; ++j) s += terms_[t * dim_ + j] * k[j];
                best = std::min(best, s);
            }
            if (g + 2 < groups_.size())
                a -= best;
            else
                m = best;
        }
        return {a, m};
    }

private:
    void add_group(const SeriesSupport& s) {
        if (groups_.empty()) groups_.push_back(0);
        for (auto& t : s.terms())
            for (std::size_t j = 0; j < s.dim(); ++j) terms_.push_back(t[j]);
        groups_.push_back(terms_.size() / s.dim());
    }

    SeriesSupport f_;
    CyclicQuotient quotient_;
    std::vector<SeriesSupport> eqs_;
    std::size_t dim_ = 0;
    std::int64_t n_ = 1;
    std::vector<int> terms_;
    std::vector<std::size_t> groups_;  // group g covers terms [groups_[g], groups_[g+1]); last group is f
    std::vector<std::vector<std::int64_t>> patterns_;
};

namespace detail {

struct Candidate {
    std::int64_t a = 0, m = 1, sum = INT64_MAX;
    std::vector<std::int64_t> k;
    bool valid = false;

    bool better_than(const Candidate& o) const {
        if (!valid) return false;
        if (!o.valid) return true;
        i128 l = static_cast<i128>(a) * o.m, r = static_cast<i128>(o.a) * m;
        if (l != r) return l < r;
        if (sum != o.sum) return sum < o.sum;
        return k < o.k;
    }
};

// Exhaustive scan of admissible k with 1 <= k_i <= cap and a fixed first coordinate.
inline Candidate scan_slice(const CompiledProblem& P, const std::vector<std::int64_t>& pattern, std::int64_t k0,
                            std::int64_t cap, std::int64_t& skipped) {
    const std::size_t D = P.dim(), T = P.term_count();
    const auto& terms = P.flat_terms();
    const auto& gb = P.group_begin();
    const std::size_t G = gb.size() - 1;
    const std::int64_t n = P.n();

    std::vector<std::int64_t> start(D);
    for (std::size_t i = 0; i < D; ++i) start[i] = pattern[i] == 0 ? n : pattern[i];

    // partial[d*T + t] = sum_{j<d} e_tj k_j
    std::vector<std::int64_t> partial((D + 1) * T, 0);
    std::vector<std::int64_t> k(D, 0);
    std::vector<std::int64_t> ksum(D + 1, 0);
    Candidate best;

    auto push = [&](std::size_t d, std::int64_t v) {
        k[d] = v;
        ksum[d + 1] = ksum[d] + v;
        const std::int64_t* src = &partial[d * T];
        std::int64_t* dst = &partial[(d + 1) * T];
        for (std::size_t t = 0; t < T; ++t) dst[t] = src[t] + terms[t * D + d] * v;
    };

    auto leaf = [&] {
        const std::int64_t* s = &partial[D * T];
        std::int64_t a = ksum[D] - n;
        std::int64_t m = 0;
        for (std::size_t g = 0; g < G; ++g) {
            std::int64_t mn = INT64_MAX;
            for (std::size_t t = gb[g]; t < gb[g + 1]; ++t) mn = std::min(mn, s[t]);
            if (g + 1 < G)
                a -= mn;
            else
                m = mn;
        }
        if (a <= 0) {
            ++skipped;
            return;
        }
        if (best.valid) {
            i128 l = static_cast<i128>(a) * best.m, r = static_cast<i128>(best.a) * m;
            if (l > r) return;
            if (l == r && (ksum[D] > best.sum || (ksum[D] == best.sum && k >= best.k))) return;
        }
        best.valid = true;
        best.a = a;
        best.m = m;
        best.sum = ksum[D];
        best.k = k;
    };

    push(0, k0);
    if (D == 1) {
        leaf();
        return best;
    }
    // iterative odometer over coordinates 1..D-1
    std::size_t d = 1;
    std::vector<std::int64_t> cur(D, 0);
    cur[1] = start[1];
    for (;;) {
        if (cur[d] > cap) {
            if (d == 1) break;
            --d;
            cur[d] += n;
            continue;
        }
        push(d, cur[d]);
        if (d + 1 == D) {
            leaf();
            cur[d] += n;
        } else {
            ++d;
            cur[d] = start[d];
        }
    }
    return best;
}

// min over real k >= base (componentwise) of
//   sum k - n - sum_i min_{mu in phi_i} <mu,k> - rho * min_{e in f} <e,k>
// via the LP in k' = k - base, u_i, v.  Returns nullopt when unbounded or on overflow.
inline std::optional<Rational> envelope_minimum(const CompiledProblem& P, const Rational& rho,
                                                const std::vector<std::int64_t>& base) {
    const std::size_t D = P.dim(), T = P.term_count();
    const auto& terms = P.flat_terms();
    const auto& gb = P.group_begin();
    const std::size_t G = gb.size() - 1;
    const std::size_t nv = D + G;
    LinearProgram lp;
    lp.c.assign(nv, Rational(0));
    for (std::size_t j = 0; j < D; ++j) lp.c[j] = 1;
    for (std::size_t g = 0; g + 1 < G; ++g) lp.c[D + g] = -1;
    lp.c[D + G - 1] = -rho;
    for (std::size_t g = 0; g < G; ++g)
        for (std::size_t t = gb[g]; t < gb[g + 1]; ++t) {
            std::vector<Rational> row(nv, Rational(0));
            std::int64_t rhs = 0;
            for (std::size_t j = 0; j < D; ++j) {
                row[j] = -terms[t * D + j];
                rhs += terms[t * D + j] * base[j];
            }
            row[D + g] = 1;
            lp.A.push_back(std::move(row));
            lp.b.push_back(rhs);
        }
    (void)T;
    auto sol = minimize(lp);
    if (!sol || !sol->bounded) return std::nullopt;
    std::int64_t c = -P.n();
    for (auto v : base) c += v;
    try {
        return sol->value + Rational(c);
    } catch (const std::overflow_error&) {
        return std::nullopt;
    }
}

}  // namespace detail

namespace detail {

// Envelope checks from each base vector; bases.front() is the plain orthant k >= 1.
template <class Envelope>
bool envelope_certified(Envelope env, std::size_t dim, std::int64_t n,
                        const std::vector<std::vector<std::int64_t>>& patterns, std::int64_t cap, std::string* how) {
    std::vector<std::int64_t> ones(dim, 1);
    auto g = env(ones);
    if (g && g->sign() >= 0) {
        if (how) *how = "envelope LP over all weights";
        return true;
    }
    // admissible weights in residue pattern p satisfy k_i >= (p_i ? p_i : n)
    auto starts = [&](const std::vector<std::int64_t>& p) {
        std::vector<std::int64_t> s(dim);
        for (std::size_t i = 0; i < dim; ++i) s[i] = p[i] == 0 ? n : p[i];
        return s;
    };
    if (n > 1) {
        bool all = true;
        for (auto& p : patterns) {
            auto gp = env(starts(p));
            if (!gp || gp->sign() < 0) {
                all = false;
                break;
            }
        }
        if (all) {
            if (how) *how = "envelope LP over all admissible residue patterns";
            return true;
        }
    }
    if (cap <= 0) return false;
    for (auto& p : patterns) {
        auto base0 = starts(p);
        for (std::size_t j = 0; j < dim; ++j) {
            auto base = n > 1 ? base0 : ones;
            base[j] = std::max(base[j], cap + 1);
            auto gj = env(base);
            if (!gj || gj->sign() < 0) {
                if (how) *how = "envelope LP fails beyond the cap in coordinate " + std::to_string(j + 1);
                return false;
            }
        }
    }
    if (how) *how = "envelope LP beyond the cap in each coordinate";
    return true;
}

}  // namespace detail

// True when no admissible real weight outside [1,cap]^r has a(k) - rho*m(k) < 0.
// With cap = 0 the whole orthant is checked.
inline bool tail_certified(const CompiledProblem& P, const Rational& rho, std::int64_t cap, std::string* how = nullptr) {
    return detail::envelope_certified([&](const std::vector<std::int64_t>& base) { return detail::envelope_minimum(P, rho, base); },
                                      P.dim(), P.n(), P.patterns(), cap, how);
}

struct OracleOptions {
    bool certify = true;
};

inline ThresholdResult brute_force_ct(const Presentation& p, const SeriesSupport& f, std::int64_t cap,
                                      const OracleOptions& opt = {}) {
    auto viol = validate(p);
    if (!viol.empty()) throw invalid_presentation(std::move(viol));
    auto cw = *raw_classified_weight(p);
    if (cap < cw.max_numerator())
        throw std::invalid_argument("cap " + std::to_string(cap) + " is below the classified weight's largest numerator " +
                                    std::to_string(cw.max_numerator()));
    CompiledProblem P(p, f);

    struct Task {
        std::size_t pattern;
        std::int64_t k0;
    };
    std::vector<Task> tasks;
    for (std::size_t s = 0; s < P.patterns().size(); ++s) {
        auto r = P.patterns()[s][0];
        for (std::int64_t v = r == 0 ? P.n() : r; v <= cap; v += P.n()) tasks.push_back({s, v});
    }
    std::vector<detail::Candidate> results(tasks.size());
    std::vector<std::int64_t> skipped(tasks.size(), 0);
    parallel_for(tasks.size(), [&](std::size_t i) {
        results[i] = detail::scan_slice(P, P.patterns()[tasks[i].pattern], tasks[i].k0, cap, skipped[i]);
    });
    detail::Candidate best;
    for (auto& c : results)
        if (c.better_than(best)) best = c;
    if (!best.valid) throw std::logic_error("no admissible weight with positive discrepancy in the search box");

    ThresholdResult r;
    r.value = Rational(best.a, best.m);
    r.weight = WeightVector(best.k, P.n());
    auto mu = weighted_multiplicity(f, r.weight);
    r.witness = mu.witness;
    r.cap = cap;

    bool mult_ok = mu.certified;
    for (auto& e : P.eqs()) mult_ok = mult_ok && weighted_multiplicity(e, r.weight).certified;
    if (!mult_ok) {
        r.closure = "multiplicities at the minimizing weight are not certified by the truncation";
    } else if (opt.certify) {
        r.certified = tail_certified(P, r.value, cap, &r.closure);
    } else {
        r.closure = "certification not requested";
    }
    return r;
}

// Repeats the scan with doubled caps until the tail argument certifies or max_cap is reached.
inline ThresholdResult oracle_ct(const Presentation& p, const SeriesSupport& f, std::int64_t cap, std::int64_t max_cap) {
    auto cw = classified_weight(p);
    cap = std::max(cap, cw.max_numerator());
    for (;;) {
        auto r = brute_force_ct(p, f, cap);
        if (r.certified || cap >= max_cap) return r;
        cap = std::min(max_cap, cap * 2);
    }
}

}  // namespace canthresh
