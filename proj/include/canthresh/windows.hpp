#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "certify.hpp"

namespace canthresh {

struct Caps {
    std::int64_t a_max = 200;      // ladder length in the a-direction where no bound closes it
    std::int64_t degree_max = 40;  // total degree of witness monomials
    std::int64_t cap = 15;         // oracle box for witness checks
    std::int64_t budget = 24;      // witness trials per candidate value
    std::int64_t depth = 12;       // keep values v with v - 1/k >= 1/depth on unbounded ladders
};

struct caps_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using ParamList = std::vector<std::pair<std::string, std::int64_t>>;

struct Witness {
    Presentation presentation;
    SeriesSupport f;
    WeightVector weight;
    std::string closure;
};

enum class Realization { not_attempted, realized, unknown };

inline std::string_view realization_name(Realization r) {
    switch (r) {
        case Realization::not_attempted: return "-";
        case Realization::realized: return "realized";
        case Realization::unknown: return "unknown";
    }
    return "?";
}

struct CandidateRecord {
    Family family = Family::smooth;
    ParamList params;                      // the first parameter set producing the value
    std::vector<ParamList> alternatives;   // every parameter set producing it, params first
    Rational value;
    std::optional<std::pair<std::int64_t, std::int64_t>> qp;
    std::optional<Witness> realized;
    Realization status = Realization::not_attempted;
    std::optional<bool> remark_inequality;  // cD/2 Case 1: 2/m1 >= ct on the witness
};

inline std::int64_t param(const ParamList& p, std::string_view name) {
    for (auto& [k, v] : p)
        if (k == name) return v;
    throw std::logic_error("missing parameter " + std::string(name));
}

inline std::string params_str(const ParamList& p) {
    std::string s;
    for (auto& [k, v] : p) {
        if (!s.empty()) s += ",";
        s += k + "=" + std::to_string(v);
    }
    return s;
}

namespace detail {

inline bool in_open_window(const Rational& v, std::int64_t k) { return v > Rational(1, k) && v < Rational(1, k - 1); }

inline bool deep_enough(const Rational& v, std::int64_t k, std::int64_t depth) {
    return v - Rational(1, k) >= Rational(1, depth);
}

// ceil(c*m) <= floor(a'*m/a): the floor/ceiling pattern for a comparison weight with
// discrepancy a' dominating c times the classified weight, when a/m computes ct.
inline bool comparison_allows(const Rational& c, std::int64_t a_prime, std::int64_t a, std::int64_t m) {
    return (c * Rational(m)).ceil() <= (Rational(a_prime * m, a)).floor();
}

class Collector {
public:
    void add(Family f, ParamList p, const Rational& v) {
        by_value_[v].push_back(std::move(p));
        fam_ = f;
    }

    std::vector<CandidateRecord> finish(std::int64_t k) && {
        std::vector<CandidateRecord> out;
        for (auto it = by_value_.rbegin(); it != by_value_.rend(); ++it) {
            CandidateRecord r;
            r.family = fam_;
            auto alts = std::move(it->second);
            std::sort(alts.begin(), alts.end());
            alts.erase(std::unique(alts.begin(), alts.end()), alts.end());
            r.params = alts.front();
            r.alternatives = std::move(alts);
            r.value = it->first;
            if (in_open_window(r.value, k)) r.qp = representation_qp(r.value, k);
            out.push_back(std::move(r));
        }
        return out;
    }

private:
    std::map<Rational, std::vector<ParamList>> by_value_;
    Family fam_ = Family::smooth;
};

inline void window_ms(std::int64_t a, std::int64_t k, std::int64_t lo, std::int64_t hi_excl,
                      const std::function<void(std::int64_t)>& fn) {
    // values a/m in (1/k, 1/(k-1)) means a(k-1) < m < ak
    lo = std::max(lo, a * (k - 1) + 1);
    hi_excl = std::min(hi_excl, a * k);
    for (std::int64_t m = lo; m < hi_excl; ++m) fn(m);
}

inline std::vector<CandidateRecord> enum_smooth(std::int64_t k, const Caps& c) {
    Collector col;
    for (std::int64_t al = 1; al < 2 * k; ++al) {
        // q/p <= alpha/m <= alpha/(beta k) bounds beta on the depth ladder
        std::int64_t bmax = std::max(al, al * c.depth / k);
        for (std::int64_t be = al; be <= bmax; ++be) {
            if (std::gcd(al, be) != 1) continue;
            auto a = al + be;
            auto lo = be >= 2 ? be * k : 1;
            window_ms(a, k, lo, a * k, [&](std::int64_t m) {
                Rational v(a, m);
                if (!deep_enough(v, k, c.depth)) return;
                if (be >= 2 && !comparison_allows(Rational(be - 1, be), a - 1, a, m)) return;
                col.add(Family::smooth, {{"alpha", al}, {"beta", be}, {"m", m}}, v);
            });
        }
    }
    return std::move(col).finish(k);
}

inline std::vector<CandidateRecord> enum_ca(std::int64_t k, const Caps& c) {
    Collector col;
    for (std::int64_t r1 = 1; r1 < 2 * k; ++r1) {
        std::int64_t r2max = std::max(r1, r1 * c.depth / k);
        for (std::int64_t r2 = r1; r2 <= r2max; ++r2)
            for (std::int64_t d = 1; d <= r1 + r2; ++d) {
                if ((r1 + r2) % d != 0) continue;
                auto a = (r1 + r2) / d;
                // r2 k <= d m < (r1 + r2) k
                auto lo = (r2 * k + d - 1) / d;
                window_ms(a, k, lo, a * k, [&](std::int64_t m) {
                    Rational v(a, m);
                    if (!deep_enough(v, k, c.depth)) return;
                    if (a >= 2 && r2 > d && !comparison_allows(Rational(r2 - d, r2), a - 1, a, m)) return;
                    col.add(Family::cA, {{"r1", r1}, {"r2", r2}, {"a", a}, {"d", d}, {"m", m}}, v);
                });
            }
    }
    return std::move(col).finish(k);
}

struct CAnFill {
    std::int64_t n, b, r1, r2, d;
};

inline bool can_params_ok(std::int64_t n, std::int64_t b, std::int64_t r1, std::int64_t r2, std::int64_t a) {
    if (std::gcd(b, n) != 1 || mod(a - b * r1, n) != 0) return false;
    return std::gcd((a - b * r1) / n, r1) == 1 && std::gcd((a + b * r2) / n, r2) == 1;
}

// all fills with r1 <= r2, r1 < 2kn, n <= 3k, and dn < dn_bound
inline std::vector<CAnFill> can_fills(std::int64_t a, std::int64_t k, std::int64_t dn_bound) {
    std::vector<CAnFill> out;
    for (std::int64_t n = 2; n <= 3 * k; ++n)
        for (std::int64_t d = 1; d * n < dn_bound; ++d)
            for (std::int64_t b = 1; b < n; ++b)
                for (std::int64_t r1 = 1; r1 < 2 * k * n && 2 * r1 <= a * d * n; ++r1) {
                    auto r2 = a * d * n - r1;
                    if (can_params_ok(n, b, r1, r2, a)) out.push_back({n, b, r1, r2, d});
                }
    return out;
}

inline std::vector<CandidateRecord> enum_can(std::int64_t k, const Caps& c) {
    if (c.a_max < 6 * k * k - 1)
        throw caps_error("a_max = " + std::to_string(c.a_max) + " does not contain the region a < 6k² = " +
                         std::to_string(6 * k * k) + " left open by \"If a ≥ 6k², then dn < 4k\"");
    Collector col;
    for (std::int64_t a = 1; a <= c.a_max; ++a) {
        bool large = a >= 6 * k * k;
        if (!large) {
            // a is fixed, so a/m ranges over finitely many values; any fill witnesses the parameters
            std::optional<CAnFill> fill;
            for (std::int64_t dn_bound = 4 * k; !fill && dn_bound <= 64 * k; dn_bound *= 2) {
                auto fs = can_fills(a, k, dn_bound);
                if (!fs.empty()) fill = fs.front();
            }
            if (!fill) continue;
            window_ms(a, k, 1, a * k, [&](std::int64_t m) {
                Rational v(a, m);
                if (!deep_enough(v, k, c.depth)) return;
                col.add(Family::cAn,
                        {{"n", fill->n}, {"b", fill->b}, {"r1", fill->r1}, {"r2", fill->r2}, {"a", a}, {"d", fill->d},
                         {"m", m}},
                        v);
            });
            continue;
        }
        for (auto& fl : can_fills(a, k, 4 * k)) {
            auto dn = fl.d * fl.n;
            bool squeeze = dn > 1 && Rational(a) > Rational(fl.r1 + dn * fl.n - fl.n, dn - 1);
            window_ms(a, k, 1, a * k, [&](std::int64_t m) {
                Rational v(a, m);
                if (!deep_enough(v, k, c.depth)) return;
                if (squeeze) {
                    bool ok = false;
                    for (std::int64_t l2 = 0; l2 < k && !ok; ++l2)
                        for (std::int64_t l3 = 0; l3 < k && !ok; ++l3) {
                            if (l2 + l3 == 0 || dn * l2 + l3 < k) continue;
                            auto den = (fl.r2 - dn * fl.n) * l2 + (a - fl.n) * l3;
                            ok = v >= Rational(1, dn * l2 + l3) && den > 0 && v <= Rational(a - fl.n, den);
                        }
                    if (!ok) return;
                }
                col.add(Family::cAn,
                        {{"n", fl.n}, {"b", fl.b}, {"r1", fl.r1}, {"r2", fl.r2}, {"a", a}, {"d", fl.d}, {"m", m}}, v);
            });
        }
    }
    return std::move(col).finish(k);
}

inline std::vector<CandidateRecord> enum_cd1(std::int64_t k) {
    Collector col;
    for (std::int64_t d = 3; d <= 2 * k - 1; d += 2)
        for (std::int64_t r = 1; r <= 8 * k * k; ++r) {
            if ((2 * r + 1) % d != 0) continue;
            auto a = (2 * r + 1) / d;
            if (a % 2 == 0) continue;
            window_ms(a, k, 1, 4 * k * r, [&](std::int64_t m) {
                if (a >= 5) {
                    if (!comparison_allows(Rational(d, r + 1), 2, a, m)) return;
                    if (!comparison_allows(Rational(r - d, r), a - 2, a, m)) return;
                }
                col.add(Family::cD1, {{"r", r}, {"a", a}, {"d", d}, {"m", m}}, Rational(a, m));
            });
        }
    return std::move(col).finish(k);
}

inline std::vector<CandidateRecord> enum_cd2(std::int64_t k) {
    Collector col;
    for (std::int64_t d = 2; d <= k - 1; ++d)
        for (std::int64_t r = 1; r <= 8 * k * k - 2; ++r) {
            if ((r + 1) % d != 0) continue;
            auto a = (r + 1) / d;
            window_ms(a, k, 1, 4 * k * r, [&](std::int64_t m) {
                if (a >= 5) {
                    if (!comparison_allows(Rational(d, r + 2), 1, a, m)) return;
                    if (!comparison_allows(Rational(r - d, r), a - 1, a, m)) return;
                }
                col.add(Family::cD2, {{"r", r}, {"a", a}, {"d", d}, {"m", m}}, Rational(a, m));
            });
        }
    return std::move(col).finish(k);
}

inline std::vector<CandidateRecord> enum_cdh1(std::int64_t k, const Caps& c) {
    Collector col;
    // r + 1 = ad with a and r odd forces d even
    for (std::int64_t d = 2; d <= k; d += 2)
        for (std::int64_t a = 1; a <= c.a_max; a += 2) {
            auto r = a * d - 1;
            window_ms(a, k, 1, 4 * k * r, [&](std::int64_t m) {
                Rational v(a, m);
                if (!deep_enough(v, k, c.depth)) return;
                if (a >= 5) {
                    bool ok = false;
                    for (std::int64_t l1 = 0; l1 < k && !ok; ++l1)
                        for (std::int64_t l2 = 0; l1 + l2 < k && !ok; ++l2)
                            for (std::int64_t l3 = 0; l1 + l2 + l3 < k && !ok; ++l3) {
                                if (l1 + l2 + l3 == 0 || d * l1 + d * l2 + l3 < k) continue;
                                auto den = (r - 2 * d + 2) * l1 + (r - 2 * d) * l2 + (a - 2) * l3;
                                ok = v >= Rational(1, d * l1 + d * l2 + l3) && den > 0 && v <= Rational(a - 2, den);
                            }
                    if (!ok) return;
                }
                col.add(Family::cDh1, {{"r", r}, {"a", a}, {"d", d}, {"m", m}}, v);
            });
        }
    return std::move(col).finish(k);
}

inline std::vector<CandidateRecord> enum_cdh2(std::int64_t k) {
    Collector col;
    for (std::int64_t d = 1; 2 * d + 1 <= k - 1; ++d)
        for (std::int64_t r = 1; r <= 16 * k * k - 4; ++r) {
            if ((r + 2) % (2 * d + 1) != 0) continue;
            auto a = (r + 2) / (2 * d + 1);
            window_ms(a, k, 1, 4 * k * r, [&](std::int64_t m) {
                if (a >= 5) {
                    if (!comparison_allows(Rational(2 * d + 1, r + 4), 1, a, m)) return;
                    if (!comparison_allows(Rational(r - 2 * d - 1, r), a - 1, a, m)) return;
                }
                col.add(Family::cDh2, {{"r", r}, {"a", a}, {"d", d}, {"m", m}}, Rational(a, m));
            });
        }
    return std::move(col).finish(k);
}

}  // namespace detail

inline std::vector<CandidateRecord> enumerate_window(Family family, std::int64_t k, const Caps& caps = {}) {
    if (k < 2) throw std::invalid_argument("window index k must be at least 2");
    if (caps.a_max < 1 || caps.depth < 1 || caps.degree_max < 1 || caps.cap < 1 || caps.budget < 1)
        throw caps_error("caps must be positive");
    switch (family) {
        case Family::smooth: return detail::enum_smooth(k, caps);
        case Family::quotient: return {};  // 1/m never lies strictly inside a window
        case Family::cA: return detail::enum_ca(k, caps);
        case Family::cAn: return detail::enum_can(k, caps);
        case Family::cD1: return detail::enum_cd1(k);
        case Family::cD2: return detail::enum_cd2(k);
        case Family::cDh1: return detail::enum_cdh1(k, caps);
        case Family::cDh2: return detail::enum_cdh2(k);
    }
    return {};
}

// ------------------------------------------------------------------ realize

namespace detail {

inline SeriesSupport poly(std::size_t dim, std::vector<std::vector<int>> terms) {
    std::vector<Monomial> t;
    for (auto& e : terms) t.emplace_back(std::move(e));
    return SeriesSupport(dim, std::move(t));
}

// The candidate's presentation with the smallest generic tails.
inline std::optional<Presentation> candidate_presentation(Family fam, const ParamList& p) {
    auto I = [](std::int64_t v) { return static_cast<int>(v); };
    std::optional<Presentation> out;
    switch (fam) {
        case Family::smooth: out = Smooth{param(p, "alpha"), param(p, "beta")}; break;
        case Family::quotient: out = Quotient{param(p, "n"), param(p, "b")}; break;
        case Family::cA: {
            auto a = param(p, "a"), d = param(p, "d");
            out = CA{param(p, "r1"), param(p, "r2"), a, d, poly(2, {{I(std::max<std::int64_t>(d, 2)), 0}, {0, I(a * d)}})};
            break;
        }
        case Family::cAn: {
            auto n = param(p, "n"), a = param(p, "a"), d = param(p, "d");
            out = CAn{n, param(p, "b"), param(p, "r1"), param(p, "r2"), a, d, poly(2, {{I(d * n), 0}, {0, I(a * d)}})};
            break;
        }
        case Family::cD1: {
            CD1 c;
            c.r = param(p, "r"), c.a = param(p, "a"), c.d = param(p, "d");
            c.p = poly(3, {{0, I(c.d), 0}});
            out = c;
            break;
        }
        case Family::cD2: {
            CD2 c;
            c.r = param(p, "r"), c.a = param(p, "a"), c.d = param(p, "d");
            out = c;
            break;
        }
        case Family::cDh1: {
            CDh1 c;
            c.r = param(p, "r"), c.a = param(p, "a"), c.d = param(p, "d");
            c.p = poly(2, {{I(2 * c.d), 0}});
            out = c;
            break;
        }
        case Family::cDh2: {
            CDh2 c;
            c.r = param(p, "r"), c.a = param(p, "a"), c.d = param(p, "d");
            out = c;
            break;
        }
    }
    if (out && !validate(*out).empty()) return std::nullopt;
    return out;
}

// Pure powers at weight >= m in one residue class, plus optional exact-weight binomials.
inline std::vector<SeriesSupport> witness_trials(const WeightVector& w, const CyclicQuotient& q, std::int64_t m,
                                                 const Caps& caps) {
    const std::size_t D = w.dim();
    const std::int64_t n = q.n;
    std::vector<SeriesSupport> out;
    for (std::int64_t s = 0; s < n; ++s) {
        std::vector<Monomial> pure;
        bool exact = false;
        for (std::size_t i = 0; i < D; ++i) {
            std::int64_t e = (m + w[i] - 1) / w[i];
            std::int64_t guard = 0;
            while (mod(e * q.b[i], n) != s && guard++ < n) ++e;
            if (mod(e * q.b[i], n) != s || e > caps.degree_max) continue;
            std::vector<int> ex(D, 0);
            ex[i] = static_cast<int>(e);
            pure.emplace_back(ex);
            exact = exact || e * w[i] == m;
        }
        // exact-weight binomials x_i^p x_j^q
        std::vector<Monomial> mixed;
        for (std::size_t i = 0; i < D; ++i)
            for (std::size_t j = i + 1; j < D; ++j)
                for (std::int64_t pe = 1; pe * w[i] < m && pe <= caps.degree_max; ++pe) {
                    auto rest = m - pe * w[i];
                    if (rest % w[j] != 0) continue;
                    auto qe = rest / w[j];
                    if (pe + qe > caps.degree_max || mod(pe * q.b[i] + qe * q.b[j], n) != s) continue;
                    std::vector<int> ex(D, 0);
                    ex[i] = static_cast<int>(pe);
                    ex[j] = static_cast<int>(qe);
                    mixed.emplace_back(ex);
                }
        if (pure.empty() && mixed.empty()) continue;
        if (exact) out.emplace_back(D, pure);
        for (auto& mx : mixed) {
            auto t = pure;
            t.push_back(mx);
            out.emplace_back(D, t);
            out.emplace_back(D, std::vector<Monomial>{mx});
        }
    }
    return out;
}

enum class TrialVerdict { realized, rejected, open };

inline TrialVerdict check_trial(const Presentation& p, const SeriesSupport& f, const Rational& value,
                                const Caps& caps, std::string& closure) {
    auto w = classified_weight(p);
    try {
        require_semi_invariant(f, ambient_quotient(p));
        if (threshold_upper_bound(p, f, w) != value) return TrialVerdict::rejected;
        for (auto& cw : comparison_weights(p, 2)) {
            if (!cw.weight || !is_admissible(*cw.weight, ambient_quotient(p))) continue;
            try {
                auto a = weighted_discrepancy(p, *cw.weight);
                if (a.sign() > 0 && threshold_upper_bound(p, f, *cw.weight) < value) return TrialVerdict::rejected;
            } catch (const std::invalid_argument&) {
            }
        }
    } catch (const std::invalid_argument&) {
        return TrialVerdict::rejected;
    }
    CompiledProblem P(p, f);
    if (tail_certified(P, value, 0, &closure)) return TrialVerdict::realized;
    auto cap = std::max(caps.cap, w.max_numerator());
    auto r = brute_force_ct(p, f, cap);
    if (r.value < value) return TrialVerdict::rejected;
    if (r.certified) {
        closure = "oracle at cap " + std::to_string(cap) + ", " + r.closure;
        return TrialVerdict::realized;
    }
    return TrialVerdict::open;
}

}  // namespace detail

// Small presentations of each singular family, paired with f from one or two
// low-degree monomials.  Every certified oracle value in the window is kept with
// its first witness; realize() falls back to this table when the candidate's own
// parameters give no witness.
struct Catalog {
    Family family = Family::smooth;
    std::int64_t k = 2;
    std::map<Rational, Witness> by_value;
    std::size_t oracle_calls = 0;
};

namespace detail {

// Valid presentation with the smallest classified weight over a small parameter box.
template <class Make>
std::optional<Presentation> smallest_valid(Make mk) {
    std::optional<Presentation> best;
    std::int64_t best_max = INT64_MAX;
    for (std::int64_t x1 = 1; x1 <= 12; ++x1)
        for (std::int64_t x2 = 1; x2 <= 12; ++x2)
            for (std::int64_t x3 = 1; x3 <= 12; ++x3)
                for (std::int64_t x4 = 1; x4 <= 6; ++x4) {
                    std::optional<Presentation> p = mk(x1, x2, x3, x4);
                    if (!p || !validate(*p).empty()) continue;
                    auto m = classified_weight(*p).max_numerator();
                    if (m < best_max) best_max = m, best = std::move(p);
                }
    return best;
}

inline std::vector<Presentation> catalog_seeds(Family fam) {
    std::vector<Presentation> out;
    auto push = [&](std::optional<Presentation> p) {
        if (p) out.push_back(std::move(*p));
    };
    switch (fam) {
        case Family::smooth:
        case Family::quotient: break;
        case Family::cA:
            for (int i = 2; i <= 4; ++i)
                for (int j = 2; j <= 7; ++j) {
                    auto g = poly(2, {{i, 0}, {0, j}});
                    push(smallest_valid([&](auto r1, auto r2, auto a, auto d) -> std::optional<Presentation> {
                        if (r1 > r2) return std::nullopt;
                        return CA{r1, r2, a, d, g};
                    }));
                }
            break;
        case Family::cAn:
            for (int n = 2; n <= 3; ++n)
                for (int b = 1; b < n; ++b)
                    for (int i = 1; i <= 2; ++i)
                        for (int j = 2; j <= 5; ++j) {
                            auto g = poly(2, {{n * i, 0}, {0, j}});
                            push(smallest_valid([&](auto r1, auto r2, auto a, auto d) -> std::optional<Presentation> {
                                return CAn{n, b, r1, r2, a, d, g};
                            }));
                        }
            break;
        case Family::cD1:
            for (int j = 2; j <= 6; ++j)
                for (int flags = 0; flags < 4; ++flags)
                    push(smallest_valid([&](auto r, auto a, auto d, auto) -> std::optional<Presentation> {
                        CD1 c;
                        c.r = r, c.a = a, c.d = d;
                        c.p = poly(3, {{0, 3, 0}, {0, 0, j}});
                        c.lambda = flags & 1, c.mu = flags & 2;
                        return c;
                    }));
            break;
        case Family::cD2:
            for (int j = 0; j <= 4; ++j)
                for (std::int64_t d = 2; d <= 3; ++d)
                    push(smallest_valid([&](auto r, auto a, auto, auto) -> std::optional<Presentation> {
                        CD2 c;
                        c.r = r, c.a = a, c.d = d;
                        if (j) c.p = poly(3, {{0, 0, j + 1}});
                        return c;
                    }));
            break;
        case Family::cDh1:
            for (int i = 1; i <= 2; ++i)
                for (int j = 1; j <= 5; ++j)
                    push(smallest_valid([&](auto r, auto a, auto d, auto) -> std::optional<Presentation> {
                        CDh1 c;
                        c.r = r, c.a = a, c.d = d;
                        c.p = poly(2, {{2 * i, 0}, {0, j}});
                        return c;
                    }));
            break;
        case Family::cDh2:
            for (int j = 0; j <= 4; ++j)
                for (std::int64_t d = 1; d <= 2; ++d)
                    push(smallest_valid([&](auto r, auto a, auto, auto) -> std::optional<Presentation> {
                        CDh2 c;
                        c.r = r, c.a = a, c.d = d;
                        if (j) c.p = poly(2, {{0, j + 1}});
                        return c;
                    }));
            break;
    }
    return out;
}

inline std::vector<Monomial> low_degree_monomials(std::size_t dim, int max_degree) {
    std::vector<Monomial> out;
    std::vector<int> e(dim, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == dim) {
            if (std::accumulate(e.begin(), e.end(), 0) >= 1) out.emplace_back(e);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            e[i] = v;
            rec(i + 1, left - v);
        }
        e[i] = 0;
    };
    rec(0, max_degree);
    return out;
}

}  // namespace detail

inline Catalog build_catalog(Family fam, std::int64_t k) {
    Catalog cat;
    cat.family = fam;
    cat.k = k;
    auto seeds = detail::catalog_seeds(fam);
    std::vector<std::map<Rational, Witness>> found(seeds.size());
    std::vector<std::size_t> calls(seeds.size(), 0);
    parallel_for(seeds.size(), [&](std::size_t si) {
        auto& p = seeds[si];
        auto D = ambient_dim(p);
        auto q = ambient_quotient(p);
        auto pool = detail::low_degree_monomials(D, D == 5 ? 2 : 3);
        auto cw = classified_weight(p);
        std::int64_t cap = std::max<std::int64_t>(D == 5 ? 6 : 8, cw.max_numerator());
        for (std::size_t s = 0; s < pool.size(); ++s)
            for (std::size_t t = s; t < pool.size(); ++t) {
                if (q.residue(pool[s]) != q.residue(pool[t])) continue;
                auto f = s == t ? SeriesSupport(D, {pool[s]}) : SeriesSupport(D, {pool[s], pool[t]});
                ++calls[si];
                ThresholdResult r;
                try {
                    r = brute_force_ct(p, f, cap, {false});
                } catch (const std::exception&) {
                    continue;
                }
                if (!detail::in_open_window(r.value, k) || found[si].count(r.value)) continue;
                CompiledProblem P(p, f);
                std::string how;
                if (!tail_certified(P, r.value, cap, &how)) continue;
                found[si].emplace(r.value, Witness{p, f, r.weight, "oracle at cap " + std::to_string(cap) + ", " + how});
            }
    });
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        cat.oracle_calls += calls[i];
        for (auto& [v, w] : found[i]) cat.by_value.emplace(v, w);
    }
    return cat;
}

inline void realize(CandidateRecord& c, const Caps& caps = {}, const Catalog* catalog = nullptr) {
    std::int64_t spent = 0;
    c.status = Realization::unknown;
    auto accept = [&](Witness w) {
        c.status = Realization::realized;
        if (c.family == Family::cDh1) {
            auto d = w.presentation.as<CDh1>().d;
            auto m1 = weighted_multiplicity(w.f, WeightVector({2 * d, 2 * d, 2, 2}, 2)).scaled(2);
            c.remark_inequality = Rational(2, m1) >= c.value;
        }
        c.realized = std::move(w);
    };
    for (auto& ps : c.alternatives) {
        auto p = detail::candidate_presentation(c.family, ps);
        if (!p) continue;
        auto w = classified_weight(*p);
        auto a = discrepancy_param(*p);
        if ((c.value.den() * a) % c.value.num() != 0) continue;
        auto m = c.value.den() * a / c.value.num();
        for (auto& f : detail::witness_trials(w, ambient_quotient(*p), m, caps)) {
            if (spent++ >= caps.budget) break;
            std::string closure;
            if (detail::check_trial(*p, f, c.value, caps, closure) == detail::TrialVerdict::realized) {
                accept(Witness{*p, f, w, closure});
                return;
            }
        }
        if (spent >= caps.budget) break;
    }
    if (catalog && catalog->family == c.family)
        if (auto it = catalog->by_value.find(c.value); it != catalog->by_value.end()) accept(it->second);
}

inline void realize_all(std::vector<CandidateRecord>& recs, const Caps& caps = {},
                        const std::vector<Catalog>* catalogs = nullptr) {
    parallel_for(recs.size(), [&](std::size_t i) {
        const Catalog* cat = nullptr;
        if (catalogs)
            for (auto& c : *catalogs)
                if (c.family == recs[i].family) cat = &c;
        realize(recs[i], caps, cat);
    });
}

// ----------------------------------------------------------- (1/2, 1) window

inline bool in_half_one_set(const Rational& v) {
    if (v == Rational(4, 5)) return true;
    // v = 1/2 + 1/j with j >= 3
    auto t = v - Rational(1, 2);
    return t.sign() > 0 && t.num() == 1 && t.den() >= 3;
}

struct HalfOneReport {
    std::vector<CandidateRecord> records;  // all families, sorted by value desc, family, params
    std::vector<Rational> realized_values;
    std::vector<CandidateRecord> alarms;   // realized outside {1/2+1/j} ∪ {4/5}
    std::vector<std::pair<Family, Rational>> escapes;  // catalog values missing from the union of candidate lists
    std::optional<Rational> max_smooth, max_singular;
};

inline bool record_order(const CandidateRecord& x, const CandidateRecord& y) {
    if (x.value != y.value) return x.value > y.value;
    if (x.family != y.family) return x.family < y.family;
    return x.params < y.params;
}

inline HalfOneReport window_half_one(const Caps& caps = {}) {
    HalfOneReport out;
    for (auto f : kAllFamilies) {
        auto recs = enumerate_window(f, 2, caps);
        for (auto& r : recs) out.records.push_back(std::move(r));
    }
    std::vector<Catalog> catalogs;
    for (auto f : kAllFamilies)
        if (is_singular_family(f)) catalogs.push_back(build_catalog(f, 2));
    realize_all(out.records, caps, &catalogs);
    for (auto& cat : catalogs)
        for (auto& [v, w] : cat.by_value) {
            if (!detail::deep_enough(v, 2, caps.depth)) continue;
            bool listed =
                std::any_of(out.records.begin(), out.records.end(), [&](auto& r) { return r.value == v; });
            if (!listed) out.escapes.emplace_back(cat.family, v);
        }
    std::sort(out.records.begin(), out.records.end(), record_order);
    std::set<Rational> vals;
    for (auto& r : out.records) {
        if (r.status != Realization::realized) continue;
        vals.insert(r.value);
        if (!in_half_one_set(r.value)) out.alarms.push_back(r);
        auto& slot = r.family == Family::smooth ? out.max_smooth : out.max_singular;
        if (is_singular_family(r.family) || r.family == Family::smooth)
            if (!slot || r.value > *slot) slot = r.value;
    }
    out.realized_values.assign(vals.rbegin(), vals.rend());
    return out;
}

// ------------------------------------------------------------ accumulation

struct LadderPoint {
    std::int64_t a = 0;
    ParamList params;
    std::vector<std::int64_t> l;  // exponents of the minimizing monomial used by the squeeze
    Rational value, lower, upper_quoted, upper_exact;
    bool within_quoted = false, within_exact = false;
    std::optional<bool> certified;          // oracle value equals the ladder value (checked points only)
    std::optional<bool> remark_inequality;  // cD/2 Case 1 only
};

struct AccumulationReport {
    std::int64_t k = 2;
    Family family = Family::cAn;
    Rational limit;
    std::vector<Rational> epsilons;
    std::vector<std::size_t> counts;
    std::vector<LadderPoint> tail;
    Rational gap;                 // max |value - limit| over samples with a >= gap_from
    std::int64_t gap_from = 0;
};

inline std::vector<std::int64_t> default_ladder(std::int64_t a_max) {
    std::vector<std::int64_t> v;
    for (std::int64_t a = 5; a <= a_max; ++a) v.push_back(a);
    return v;
}

namespace detail {

inline std::optional<LadderPoint> can_ladder_point(std::int64_t a, std::int64_t k) {
    // n = 2, d = 1; the witness monomial y^{l2} z^{l3} with 2 l2 + l3 = k
    const std::int64_t n = 2, d = 1, b = 1, l2 = k / 2, l3 = k % 2;
    for (std::int64_t r1 = 1; r1 < 2 * k * n && 2 * r1 <= a * d * n; ++r1) {
        auto r2 = a * d * n - r1;
        if (!can_params_ok(n, b, r1, r2, a)) continue;
        LadderPoint pt;
        pt.a = a;
        pt.params = {{"n", n}, {"b", b}, {"r1", r1}, {"r2", r2}, {"a", a}, {"d", d}};
        pt.l = {0, l2, l3, 0};
        auto m = l2 * r2 + l3 * a;
        pt.value = Rational(a, m);
        auto dn = d * n;
        pt.lower = Rational(1, dn * l2 + l3);
        pt.upper_quoted = (Rational(1) - Rational(n, a)) / (Rational(k) - Rational((r1 + dn * n) * l2 + n * l3, a));
        pt.upper_exact = Rational(a - n, (r2 - dn * n) * l2 + (a - n) * l3);
        return pt;
    }
    return std::nullopt;
}

inline std::optional<LadderPoint> cdh1_ladder_point(std::int64_t a, std::int64_t k) {
    if (a % 2 == 0) return std::nullopt;
    const std::int64_t d = 2, l1 = 0, l2 = k / 2, l3 = k % 2;
    auto r = a * d - 1;
    LadderPoint pt;
    pt.a = a;
    pt.params = {{"r", r}, {"a", a}, {"d", d}};
    pt.l = {l1, l2, l3, 0};
    auto m = l2 * r + l3 * a;
    pt.value = Rational(a, m);
    pt.lower = Rational(1, d * l1 + d * l2 + l3);
    pt.upper_quoted = (Rational(1) - Rational(2, a)) / (Rational(k) - Rational((2 * d - 1) * l1 + 3 * l2 + 2 * l3, a));
    pt.upper_exact = Rational(a - 2, (r - 2 * d + 2) * l1 + (r - 2 * d) * l2 + (a - 2) * l3);
    // remark weight w1 = (1/2)(2d,2d,2,2) on the witness monomial
    auto m1 = 2 * d * l1 + 2 * d * l2 + 2 * l3;
    pt.remark_inequality = Rational(2, m1) >= pt.value;
    return pt;
}

inline SeriesSupport ladder_witness(const LadderPoint& pt, const WeightVector& w, const CyclicQuotient& q) {
    // the squeeze monomial plus pure powers far above it in the same residue class
    std::vector<Monomial> t;
    std::vector<int> e(pt.l.begin(), pt.l.end());
    Monomial lead(e);
    t.push_back(lead);
    auto m = w.scaled(lead);
    auto s = q.residue(lead);
    for (std::size_t i = 0; i < w.dim(); ++i) {
        std::int64_t x = m / w[i] + 1, tries = 0;
        while (mod(x * q.b[i], q.n) != s && tries++ < q.n) ++x;
        if (mod(x * q.b[i], q.n) != s) continue;  // no pure power of this coordinate in the class
        std::vector<int> ex(w.dim(), 0);
        ex[i] = static_cast<int>(x);
        t.emplace_back(ex);
    }
    return SeriesSupport(w.dim(), t);
}

}  // namespace detail

// Ladders along a for cA/n and cD/2 Case 1; the quotient family 1/2(1,1,1) with values 1/i.
inline AccumulationReport accumulation_report(Family family, std::int64_t k, const std::vector<std::int64_t>& ladder,
                                              std::int64_t certify_up_to = 60) {
    for (std::size_t i = 1; i < ladder.size(); ++i)
        if (ladder[i] <= ladder[i - 1]) throw std::invalid_argument("ladder must be strictly increasing");
    AccumulationReport rep;
    rep.k = k;
    rep.family = family;
    rep.epsilons = {Rational(1, 10), Rational(1, 100), Rational(1, 1000), Rational(1, 10000)};
    rep.gap_from = 2000;
    if (family == Family::quotient) {
        rep.limit = Rational(0);
        for (auto i : ladder) {
            LadderPoint pt;
            pt.a = i;
            pt.params = {{"n", 2}, {"b", 1}, {"i", i}};
            pt.value = Rational(1, i);
            pt.lower = pt.upper_quoted = pt.upper_exact = pt.value;
            pt.within_quoted = pt.within_exact = true;
            rep.tail.push_back(pt);
        }
    } else if (family == Family::cAn || family == Family::cDh1) {
        if (k < 2) throw std::invalid_argument("window index k must be at least 2");
        rep.limit = Rational(1, k);
        std::vector<std::optional<LadderPoint>> pts(ladder.size());
        parallel_for(ladder.size(), [&](std::size_t i) {
            auto a = ladder[i];
            auto pt = family == Family::cAn ? detail::can_ladder_point(a, k) : detail::cdh1_ladder_point(a, k);
            if (!pt || !detail::in_open_window(pt->value, k)) return;
            pt->within_quoted = pt->lower <= pt->value && pt->value <= pt->upper_quoted;
            pt->within_exact = pt->lower <= pt->value && pt->value <= pt->upper_exact;
            if (a <= certify_up_to) {
                Presentation p = family == Family::cAn
                                     ? Presentation(CAn{2, 1, param(pt->params, "r1"), param(pt->params, "r2"), a, 1,
                                                        detail::poly(2, {{2, 0}, {0, static_cast<int>(a)}})})
                                     : *detail::candidate_presentation(Family::cDh1, pt->params);
                auto w = classified_weight(p);
                auto f = detail::ladder_witness(*pt, w, ambient_quotient(p));
                CompiledProblem P(p, f);
                pt->certified = threshold_upper_bound(p, f, w) == pt->value && tail_certified(P, pt->value, 0);
            }
            pts[i] = std::move(pt);
        });
        for (auto& p : pts)
            if (p) rep.tail.push_back(std::move(*p));
    } else {
        throw std::invalid_argument("accumulation ladders are defined for cA/n, cD/2-1 and the quotient family");
    }
    for (auto& e : rep.epsilons) {
        std::size_t c = 0;
        for (auto& pt : rep.tail)
            if (pt.value > rep.limit + e && (family == Family::quotient || pt.value < Rational(1, k - 1))) ++c;
        rep.counts.push_back(c);
    }
    rep.gap = Rational(0);
    for (auto& pt : rep.tail)
        if (pt.a >= rep.gap_from) rep.gap = std::max(rep.gap, abs(pt.value - rep.limit));
    return rep;
}

}  // namespace canthresh
