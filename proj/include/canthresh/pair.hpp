#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lp.hpp"
#include "parallel.hpp"
#include "presentation.hpp"
#include "threshold.hpp"

namespace canthresh {

// ------------------------------------------------------------------ DCC data

// Finite stand-in for a DCC coefficient set; only the floor enters the bounds.
struct DccSet {
    std::vector<Rational> elements;
    Rational floor;
};

inline std::vector<std::string> dcc_violations(const DccSet& s, bool unit_interval) {
    std::vector<std::string> v;
    if (s.elements.empty()) v.push_back("DCC set has no elements");
    for (std::size_t i = 0; i < s.elements.size(); ++i) {
        auto& e = s.elements[i];
        if (e.sign() <= 0) v.push_back("element " + e.str() + " is not positive");
        if (unit_interval && e > Rational(1)) v.push_back("element " + e.str() + " exceeds 1");
        if (i > 0 && !(s.elements[i - 1] < e)) v.push_back("elements are not strictly increasing at " + e.str());
    }
    if (!s.elements.empty() && s.floor != s.elements.front())
        v.push_back("floor " + s.floor.str() + " is not the minimal element " + s.elements.front().str());
    return v;
}

inline DccSet make_dcc(std::vector<Rational> elements, bool unit_interval) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    DccSet s{std::move(elements), Rational(0)};
    if (!s.elements.empty()) s.floor = s.elements.front();
    auto v = dcc_violations(s, unit_interval);
    if (!v.empty()) throw std::invalid_argument(v.front());
    return s;
}

// ---------------------------------------------------------------- pair input

struct Component {
    Rational coefficient;
    SeriesSupport support;
};

struct PairInput {
    Presentation presentation;
    std::vector<Component> B;
    std::vector<Component> S;
    std::int64_t q = 1;
};

inline bool contains_center(const SeriesSupport& f) {
    return std::any_of(f.terms().begin(), f.terms().end(), [](auto& t) { return t.degree() > 0; }) &&
           std::none_of(f.terms().begin(), f.terms().end(), [](auto& t) { return t.degree() == 0; });
}

inline std::vector<std::string> pair_input_violations(const PairInput& in) {
    std::vector<std::string> v;
    auto q = ambient_quotient(in.presentation);
    if (in.S.empty()) v.push_back("S has no components");
    if (in.q < 1) v.push_back("q must be a positive integer");
    auto check = [&](const std::vector<Component>& cs, const char* name) {
        for (std::size_t i = 0; i < cs.size(); ++i) {
            std::string tag = std::string(name) + "[" + std::to_string(i) + "]";
            if (cs[i].coefficient.sign() <= 0) v.push_back(tag + " coefficient is not positive");
            if (cs[i].support.dim() != q.dim()) {
                v.push_back(tag + " has the wrong dimension");
                continue;
            }
            if (cs[i].support.empty() || !semi_invariant_class(cs[i].support, q)) v.push_back(tag + " is not semi-invariant");
            if (!contains_center(cs[i].support)) v.push_back(tag + " does not contain the center");
        }
    };
    check(in.B, "B");
    check(in.S, "S");
    return v;
}

inline void require_pair_input(const PairInput& in) {
    auto viol = validate(in.presentation);
    if (!viol.empty()) throw invalid_presentation(std::move(viol));
    auto v = pair_input_violations(in);
    if (!v.empty()) throw std::invalid_argument(v.front());
}

// ------------------------------------------------------------ pair threshold

// (a - sum b_k p_k) / (sum s_k m_k); returned raw even when not positive.
inline Rational pair_threshold(const Rational& a, const std::vector<std::pair<Rational, Rational>>& B,
                               const std::vector<std::pair<Rational, Rational>>& S) {
    if (S.empty()) throw std::invalid_argument("pair threshold needs at least one S component");
    Rational num = a, den(0);
    for (auto& [b, p] : B) num = num - b * p;
    for (auto& [s, m] : S) den = den + s * m;
    if (den.sign() <= 0) throw std::invalid_argument("sum of s_k m_k must be positive");
    return num / den;
}

inline std::optional<std::string> pair_threshold_warning(const Rational& v) {
    if (v.sign() <= 0) return "pair threshold " + v.str() + " is not positive";
    return std::nullopt;
}

struct PairEvaluation {
    Rational a;
    std::vector<Rational> p, m;  // n*w(g_k), n*w(f_k)
    Rational value;
    bool certified = true;       // every multiplicity certified against its truncation
};

inline PairEvaluation pair_value_at(const PairInput& in, const WeightVector& w) {
    PairEvaluation e;
    e.a = weighted_discrepancy(in.presentation, w);
    std::vector<std::pair<Rational, Rational>> B, S;
    for (auto& c : in.B) {
        auto mu = weighted_multiplicity(c.support, w);
        e.certified = e.certified && mu.certified;
        e.p.push_back(Rational(mu.scaled(w.denominator())));
        B.emplace_back(c.coefficient, e.p.back());
    }
    for (auto& c : in.S) {
        auto mu = weighted_multiplicity(c.support, w);
        e.certified = e.certified && mu.certified;
        e.m.push_back(Rational(mu.scaled(w.denominator())));
        S.emplace_back(c.coefficient, e.m.back());
    }
    e.value = pair_threshold(e.a, B, S);
    return e;
}

struct PairResult {
    Rational value;
    WeightVector weight;
    bool certified = false;
    std::int64_t cap = 0;
    std::string closure;
    std::optional<std::string> warning;
};

namespace detail {

// Equations, then B components, then S components, flattened like CompiledProblem.
struct PairProblem {
    std::size_t dim = 0;
    std::int64_t n = 1;
    std::vector<int> terms;
    std::vector<std::size_t> begin{0};
    std::vector<Rational> coef;  // per group: 1 for equations, b_k for B, s_k for S
    std::size_t eq_groups = 0, b_groups = 0;
    std::vector<std::vector<std::int64_t>> patterns;

    explicit PairProblem(const PairInput& in) {
        auto q = ambient_quotient(in.presentation);
        dim = q.dim();
        n = q.n;
        auto eqs = equations(in.presentation);
        for (auto& e : eqs) add(e, Rational(1));
        for (auto& c : in.B) add(c.support, c.coefficient);
        for (auto& c : in.S) add(c.support, c.coefficient);
        eq_groups = eqs.size();
        b_groups = in.B.size();
        for (std::int64_t s = 0; s < n; ++s) {
            std::vector<std::int64_t> pat(dim);
            for (std::size_t i = 0; i < dim; ++i) pat[i] = mod(s * q.b[i], n);
            if (std::find(patterns.begin(), patterns.end(), pat) == patterns.end()) patterns.push_back(pat);
        }
    }

    void add(const SeriesSupport& s, Rational c) {
        for (auto& t : s.terms())
            for (std::size_t j = 0; j < s.dim(); ++j) terms.push_back(t[j]);
        begin.push_back(terms.size() / s.dim());
        coef.push_back(c);
    }

    std::size_t groups() const { return begin.size() - 1; }

    // (a, numerator, denominator) at integer weight k
    std::tuple<std::int64_t, Rational, Rational> evaluate(const std::vector<std::int64_t>& k) const {
        std::int64_t a = -n;
        for (auto v : k) a += v;
        std::vector<std::int64_t> mins(groups());
        for (std::size_t g = 0; g < groups(); ++g) {
            std::int64_t best = INT64_MAX;
            for (std::size_t t = begin[g]; t < begin[g + 1]; ++t) {
                std::int64_t s = 0;
                for (std::size_t j = 0; j < dim; ++j) s += terms[t * dim + j] * k[j];
                best = std::min(best, s);
            }
            mins[g] = best;
        }
        for (std::size_t g = 0; g < eq_groups; ++g) a -= mins[g];
        Rational num(a), den(0);
        for (std::size_t g = eq_groups; g < eq_groups + b_groups; ++g) num = num - coef[g] * Rational(mins[g]);
        for (std::size_t g = eq_groups + b_groups; g < groups(); ++g) den = den + coef[g] * Rational(mins[g]);
        return {a, num, den};
    }

    // min over real k >= base of a(k) - sum b p(k) - rho sum s m(k); nullopt when unbounded or on overflow
    std::optional<Rational> envelope(const Rational& rho, const std::vector<std::int64_t>& base) const {
        const std::size_t G = groups(), nv = dim + G;
        LinearProgram lp;
        lp.c.assign(nv, Rational(0));
        for (std::size_t j = 0; j < dim; ++j) lp.c[j] = 1;
        for (std::size_t g = 0; g < G; ++g) {
            Rational c = coef[g];
            if (g >= eq_groups + b_groups) c = c * rho;
            lp.c[dim + g] = -c;
        }
        for (std::size_t g = 0; g < G; ++g)
            for (std::size_t t = begin[g]; t < begin[g + 1]; ++t) {
                std::vector<Rational> row(nv, Rational(0));
                std::int64_t rhs = 0;
                for (std::size_t j = 0; j < dim; ++j) {
                    row[j] = -terms[t * dim + j];
                    rhs += terms[t * dim + j] * base[j];
                }
                row[dim + g] = 1;
                lp.A.push_back(std::move(row));
                lp.b.push_back(rhs);
            }
        try {
            auto sol = minimize(lp);
            if (!sol || !sol->bounded) return std::nullopt;
            std::int64_t c = -n;
            for (auto v : base) c += v;
            return sol->value + Rational(c);
        } catch (const std::overflow_error&) {
            return std::nullopt;
        }
    }
};

}  // namespace detail

// True when no admissible real weight outside [1,cap]^r has pair value below rho.
// cap = 0 checks the whole orthant.
inline bool pair_tail_certified(const PairInput& in, const Rational& rho, std::int64_t cap, std::string* how = nullptr) {
    detail::PairProblem P(in);
    return detail::envelope_certified([&](const std::vector<std::int64_t>& base) { return P.envelope(rho, base); },
                                      P.dim, P.n, P.patterns, cap, how);
}

// Minimum of the pair value over admissible weights in [1,cap]^r with a > 0;
// ties broken by smallest numerator sum, then lexicographically.
inline PairResult pair_oracle(const PairInput& in, std::int64_t cap) {
    require_pair_input(in);
    if (cap < 1) throw std::invalid_argument("cap must be positive");
    detail::PairProblem P(in);
    struct Best {
        bool valid = false;
        Rational value;
        std::int64_t sum = 0;
        std::vector<std::int64_t> k;
    };
    std::vector<Best> per(P.patterns.size());
    parallel_for(P.patterns.size(), [&](std::size_t pi) {
        auto& pat = P.patterns[pi];
        std::vector<std::int64_t> start(P.dim);
        for (std::size_t i = 0; i < P.dim; ++i) start[i] = pat[i] == 0 ? P.n : pat[i];
        if (std::any_of(start.begin(), start.end(), [&](auto v) { return v > cap; })) return;
        auto k = start;
        auto& best = per[pi];
        for (bool done = false; !done;) {
            auto [a, num, den] = P.evaluate(k);
            if (a > 0) {
                auto v = num / den;
                std::int64_t sum = 0;
                for (auto x : k) sum += x;
                if (!best.valid || v < best.value || (v == best.value && (sum < best.sum || (sum == best.sum && k < best.k))))
                    best = {true, v, sum, k};
            }
            done = true;
            for (std::size_t d = P.dim; d-- > 0;) {
                k[d] += P.n;
                if (k[d] <= cap) {
                    done = false;
                    break;
                }
                k[d] = start[d];
            }
        }
    });
    const Best* b = nullptr;
    for (auto& x : per)
        if (x.valid && (!b || x.value < b->value ||
                        (x.value == b->value && (x.sum < b->sum || (x.sum == b->sum && x.k < b->k)))))
            b = &x;
    if (!b) throw std::invalid_argument("no admissible weight with positive discrepancy up to cap " + std::to_string(cap));
    PairResult r;
    r.value = b->value;
    r.weight = WeightVector(b->k, P.n);
    r.cap = cap;
    r.warning = pair_threshold_warning(r.value);
    bool mult_ok = pair_value_at(in, r.weight).certified;
    for (auto& e : equations(in.presentation)) mult_ok = mult_ok && weighted_multiplicity(e, r.weight).certified;
    std::string how;
    r.certified = mult_ok && pair_tail_certified(in, r.value, cap, &how);
    r.closure = mult_ok ? how : "multiplicities not certified by the truncation";
    return r;
}

// ---------------------------------------------------------- component bounds

inline std::pair<Rational, Rational> component_bounds(const Rational& I_b, const Rational& J_b, std::int64_t q) {
    if (I_b.sign() <= 0 || J_b.sign() <= 0) throw std::invalid_argument("DCC floors must be positive");
    if (q < 1) throw std::invalid_argument("q must be a positive integer");
    return {Rational(2) / I_b, Rational(2 * q) / J_b};
}

// ----------------------------------------------------------- index dichotomy

struct BoundedIndex {
    std::int64_t n = 0;
    Rational bound;
};

struct Representation {
    std::vector<std::int64_t> t, l;
    WeightVector w3;
    Rational sandwich;
    Rational pair_threshold;
};

struct DichotomyInconclusive {
    std::string reason;
};

using DichotomyOutcome = std::variant<BoundedIndex, Representation, DichotomyInconclusive>;

inline Rational index_bound(const PairInput& in) {
    Rational mx(0);
    for (auto& c : in.B) mx = std::max(mx, Rational(1) / c.coefficient);
    for (auto& c : in.S) mx = std::max(mx, Rational(in.q) / c.coefficient);
    return Rational(3) * mx;
}

// w3 = (1/n)(r1', r2', 3, n) with r1'+r2' = 3dn, 3 = b r1' mod n, min > n; closest to balanced.
inline std::optional<WeightVector> dichotomy_weight(const CAn& c) {
    std::optional<std::int64_t> best;
    auto total = 3 * c.d * c.n;
    for (std::int64_t r1 = c.n + 1; total - r1 > c.n; ++r1) {
        if (mod(c.b * r1 - 3, c.n) != 0) continue;
        if (!best || std::abs(total - 2 * r1) < std::abs(total - 2 * *best)) best = r1;
    }
    if (!best) return std::nullopt;
    return WeightVector({*best, total - *best, 3, c.n}, c.n);
}

namespace detail {

// exponent l with z^l in f realizing n*w3(f) = 3l, if any
inline std::optional<std::int64_t> pure_z_realizer(const SeriesSupport& f, const WeightVector& w3) {
    auto m = weighted_multiplicity(f, w3);
    if (!m.certified) return std::nullopt;
    auto target = m.scaled(w3.denominator());
    for (auto& t : f.terms())
        if (t[0] == 0 && t[1] == 0 && t[3] == 0 && 3 * t[2] == target) return t[2];
    return std::nullopt;
}

}  // namespace detail

inline DichotomyOutcome index_dichotomy(const PairInput& in, std::int64_t cap) {
    if (in.presentation.family() != Family::cAn) throw std::invalid_argument("index dichotomy needs a cA/n presentation");
    require_pair_input(in);
    auto& c = in.presentation.as<CAn>();
    auto bound = index_bound(in);
    if (Rational(c.n) <= bound) return BoundedIndex{c.n, bound};

    auto w3 = dichotomy_weight(c);
    if (!w3) return DichotomyInconclusive{"no fill r1'+r2' = 3dn with 3 = b r1' (mod n) and min{r1',r2'} > n"};
    cap = std::max({cap, classified_weight(in.presentation).max_numerator(), w3->max_numerator()});
    auto pt = pair_oracle(in, cap);
    if (!pt.certified) return DichotomyInconclusive{"pair threshold not certified at cap " + std::to_string(pt.cap)};
    if (!(pt.value > Rational(1, in.q)))
        throw std::invalid_argument("pair threshold " + pt.value.str() + " is not above 1/q = 1/" + std::to_string(in.q));

    Representation rep{{}, {}, *w3, Rational(0), pt.value};
    Rational num(1), den(0);
    for (std::size_t i = 0; i < in.B.size(); ++i) {
        auto t = detail::pure_z_realizer(in.B[i].support, *w3);
        if (!t) return DichotomyInconclusive{"B[" + std::to_string(i) + "] has no pure z-power realizing its w3-multiplicity"};
        rep.t.push_back(*t);
        num = num - in.B[i].coefficient * Rational(*t);
    }
    for (std::size_t i = 0; i < in.S.size(); ++i) {
        auto l = detail::pure_z_realizer(in.S[i].support, *w3);
        if (!l) return DichotomyInconclusive{"S[" + std::to_string(i) + "] has no pure z-power realizing its w3-multiplicity"};
        rep.l.push_back(*l);
        den = den + in.S[i].coefficient * Rational(*l);
    }
    rep.sandwich = num / den;
    if (rep.sandwich != pt.value)
        return DichotomyInconclusive{"sandwich " + rep.sandwich.str() + " differs from the pair threshold " + pt.value.str()};
    return rep;
}

// -------------------------------------------------- monotone weight compare

struct PairRecord {
    PairInput input;
    WeightVector weight;                 // the weight computing the record's threshold
    bool exceptional_irreducible = true;  // encoded by parameter constraints, not re-derived
};

struct ChainLink {
    std::string name;
    Rational lhs, rhs;  // the link asserts lhs <= rhs
    bool holds = false;
};

struct ChainVerdict {
    bool hypotheses = false;
    bool holds = false;
    std::vector<ChainLink> links;
    std::optional<std::string> first_failure;
    Rational ct_i, ct_j;
};

namespace detail {

// Is every exponent of `inner` in conv(outer) + R_{>=0}^r?  Checked as
// min over w >= 0, |w| <= 1 of <w,e> - min_t <w,e_t> being >= 0.
inline bool newton_contained(const SeriesSupport& inner, const SeriesSupport& outer) {
    const std::size_t D = outer.dim(), nv = D + 1;
    for (auto& e : inner.terms()) {
        LinearProgram lp;
        lp.c.assign(nv, Rational(0));
        for (std::size_t j = 0; j < D; ++j) lp.c[j] = e[j];
        lp.c[D] = -1;
        for (auto& t : outer.terms()) {
            std::vector<Rational> row(nv, Rational(0));
            for (std::size_t j = 0; j < D; ++j) row[j] = -t[j];
            row[D] = 1;
            lp.A.push_back(std::move(row));
            lp.b.push_back(Rational(0));
        }
        std::vector<Rational> norm(nv, Rational(1));
        norm[D] = 0;
        lp.A.push_back(std::move(norm));
        lp.b.push_back(Rational(1));
        auto sol = minimize(lp);
        if (!sol || !sol->bounded || sol->value.sign() < 0) return false;
    }
    return true;
}

}  // namespace detail

inline ChainVerdict monotone_weight_compare(const PairRecord& ri, const PairRecord& rj, const WeightVector& w_ij,
                                            std::int64_t cap) {
    require_pair_input(ri.input);
    require_pair_input(rj.input);
    auto& Bi = ri.input.B;
    auto& Bj = rj.input.B;
    auto& Si = ri.input.S;
    auto& Sj = rj.input.S;
    if (Bi.size() != Bj.size() || Si.size() != Sj.size())
        throw std::invalid_argument("records must have the same number of B and S components");
    if (ri.weight.dim() != w_ij.dim() || ambient_dim(rj.input.presentation) != w_ij.dim())
        throw std::invalid_argument("weights must share the ambient dimension");

    ChainVerdict v;
    auto link = [&](std::string name, Rational lhs, Rational rhs) {
        bool ok = lhs <= rhs;
        if (!ok && !v.first_failure) v.first_failure = name + ": " + lhs.str() + " > " + rhs.str();
        v.links.push_back({std::move(name), lhs, rhs, ok});
    };
    auto flag = [&](std::string name, bool ok) { link(std::move(name), Rational(ok ? 0 : 1), Rational(0)); };
    auto idx = [](const char* s, std::size_t k) { return std::string(s) + "[" + std::to_string(k) + "]"; };

    // hypotheses
    for (std::size_t k = 0; k < Bi.size(); ++k) link("b_i <= b_j at " + idx("B", k), Bi[k].coefficient, Bj[k].coefficient);
    for (std::size_t k = 0; k < Si.size(); ++k) link("s_i <= s_j at " + idx("S", k), Si[k].coefficient, Sj[k].coefficient);
    for (std::size_t k = 0; k < Bi.size(); ++k)
        flag("Newton polytope non-increasing at " + idx("B", k), detail::newton_contained(Bj[k].support, Bi[k].support));
    for (std::size_t k = 0; k < Si.size(); ++k)
        flag("Newton polytope non-increasing at " + idx("S", k), detail::newton_contained(Sj[k].support, Si[k].support));
    auto n_i = ri.weight.denominator();
    for (std::size_t k = 0; k < Bi.size(); ++k)
        link("n_i w_i(g_ik) <= n_i w_i(g_jk) at " + idx("B", k),
             Rational(weighted_multiplicity(Bi[k].support, ri.weight).scaled(n_i)),
             Rational(weighted_multiplicity(Bj[k].support, ri.weight).scaled(n_i)));
    for (std::size_t c = 0; c < w_ij.dim(); ++c)
        link("n_i w_i <= n_j w^i_j at coordinate " + std::to_string(c + 1), Rational(ri.weight[c]), Rational(w_ij[c]));
    flag("exceptional divisor irreducible (record i)", ri.exceptional_irreducible);
    flag("exceptional divisor irreducible (record j)", rj.exceptional_irreducible);
    flag("w^i_j admissible on X_j", is_admissible(w_ij, ambient_quotient(rj.input.presentation)));
    v.hypotheses = !v.first_failure.has_value();
    if (!v.hypotheses) return v;

    auto ei = pair_value_at(ri.input, ri.weight);
    auto ej = pair_value_at(rj.input, w_ij);
    link("a_j(w^i_j) <= a_i", ej.a, ei.a);
    auto oi = pair_oracle(ri.input, std::max(cap, ri.weight.max_numerator()));
    auto oj = pair_oracle(rj.input, std::max(cap, w_ij.max_numerator()));
    v.ct_i = oi.value;
    v.ct_j = oj.value;
    link("w_i computes ct_i", ei.value, oi.value);
    v.hypotheses = !v.first_failure.has_value();
    if (!v.hypotheses) return v;

    // conclusion chain
    for (std::size_t k = 0; k < Si.size(); ++k) link("m_ik <= n_j w^i_j(f_jk) at " + idx("S", k), ei.m[k], ej.m[k]);
    for (std::size_t k = 0; k < Bi.size(); ++k) link("p_ik <= n_j w^i_j(g_jk) at " + idx("B", k), ei.p[k], ej.p[k]);
    link("ct at w^i_j on X_j <= ct_i", ej.value, ei.value);
    link("ct_j <= ct at w^i_j on X_j", oj.value, ej.value);
    link("ct_j <= ct_i", oj.value, oi.value);
    v.holds = !v.first_failure.has_value();
    return v;
}

// -------------------------------------------------------------- chain check

inline std::optional<std::pair<std::size_t, std::size_t>> detect_increasing_chain(const std::vector<Rational>& values) {
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        if (values[i] < values[i + 1]) return std::make_pair(i, i + 1);
    return std::nullopt;
}

}  // namespace canthresh
