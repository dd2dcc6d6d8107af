#pragma once

#include <optional>
#include <string>
#include <vector>

#include "threshold.hpp"

namespace canthresh {

struct BoundUse {
    std::string anchor;
    std::string instantiated;
};

struct WindowCertificate {
    std::int64_t k = 2;
    std::vector<BoundUse> bounds_used;
    std::int64_t induced_cap = 0;
    std::vector<std::string> notes;
};

enum class WindowStatus { found, absent, inconclusive };

inline std::string_view status_name(WindowStatus s) {
    switch (s) {
        case WindowStatus::found: return "found";
        case WindowStatus::absent: return "absent";
        case WindowStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

struct WindowOutcome {
    WindowStatus status = WindowStatus::inconclusive;
    std::optional<ThresholdResult> result;
    WindowCertificate certificate;
    std::string reason;
};

struct WindowOptions {
    std::int64_t a_max = 400;    // ladder length where the family's bounds leave a direction open
    std::int64_t cap_max = 48;   // largest oracle cap tried when the envelope argument alone does not close
};

// A weight of the family's classified shape, compatible with the same equation.
struct Shape {
    WeightVector weight;
    std::int64_t a = 0;
    std::string label;
};

struct ShapeSearch {
    std::vector<Shape> shapes;
    std::vector<BoundUse> bounds;
    bool closed = true;  // false when a ladder cap, not a proven bound, stopped the search
};

namespace detail {

inline std::string i2s(std::int64_t v) { return std::to_string(v); }

inline bool shape_ok(const Presentation& q) { return validate(q).empty(); }

inline std::vector<std::vector<std::size_t>> permutations3() {
    return {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
}

// min over f of the weight, ignoring terms that involve coordinate j
inline std::optional<std::int64_t> min_without(const SeriesSupport& f, std::size_t j,
                                               const std::vector<std::int64_t>& w) {
    std::optional<std::int64_t> best;
    for (auto& t : f.terms()) {
        if (t[j] != 0) continue;
        std::int64_t s = 0;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (i != j) s += t[i] * w[i];
        if (!best || s < *best) best = s;
    }
    return best;
}

inline SeriesSupport swap_zu(const SeriesSupport& g) {
    std::vector<Monomial> t;
    for (auto& m : g.terms()) t.push_back(Monomial{m[1], m[0]});
    return SeriesSupport(2, std::move(t), g.complete_up_to());
}

inline ShapeSearch smooth_shapes(const Presentation&, const SeriesSupport& f, std::int64_t k, const WindowOptions& o) {
    ShapeSearch out;
    out.bounds.push_back({"α < 2k", "α < " + i2s(2 * k) + " (or α = 1)"});
    out.bounds.push_back({"βk ≤ m < αk + βk", "β ≤ m/" + i2s(k)});
    for (std::int64_t al = 1; al < 2 * k; ++al)
        for (auto& perm : permutations3()) {
            // perm[i] = coordinate receiving the i-th entry of (1, al, be)
            std::vector<std::int64_t> w(3, 0);
            w[perm[0]] = 1;
            w[perm[1]] = al;
            std::int64_t bmax;
            if (auto m0 = min_without(f, perm[2], w)) {
                bmax = *m0 / k;
            } else {
                bmax = o.a_max;
                out.closed = false;
            }
            for (std::int64_t be = al; be <= bmax; ++be) {
                if (std::gcd(al, be) != 1) continue;
                w[perm[2]] = be;
                out.shapes.push_back({WeightVector(w), al + be, "(1,α,β)=(1," + i2s(al) + "," + i2s(be) + ")"});
            }
        }
    return out;
}

inline ShapeSearch ca_shapes(const Presentation& p, const SeriesSupport&, std::int64_t k, const WindowOptions& o) {
    ShapeSearch out;
    auto& c = p.as<CA>();
    out.bounds.push_back({"1/k < ct ≤ 1/r₁ + 1/r₂", "r₁ < " + i2s(2 * k) + " (or r₁ = 1)"});
    out.bounds.push_back({"r₂k ≤ dm < r₁k + r₂k", "applied per candidate"});
    for (int role = 0; role < 2; ++role) {
        SeriesSupport g = role == 0 ? c.g : swap_zu(c.g);
        // bound on a: a*d = w(g) <= (u-exponent of any pure u-power)
        std::optional<std::int64_t> amax;
        for (auto& t : g.terms())
            if (t[0] == 0) amax = std::min(amax.value_or(INT64_MAX), static_cast<std::int64_t>(t[1]));
        if (!amax) out.closed = false;
        std::int64_t top = amax.value_or(o.a_max);
        for (std::int64_t a = 1; a <= top; ++a) {
            auto mu = weighted_multiplicity(g, WeightVector({a, 1}));
            auto W = mu.scaled(1);
            if (!mu.certified || W % a != 0) continue;
            auto d = W / a;
            for (std::int64_t r1 = 1; r1 <= W / 2 && (r1 == 1 || r1 < 2 * k); ++r1) {
                auto r2 = W - r1;
                Presentation q = CA{r1, r2, a, d, g};
                if (!shape_ok(q)) continue;
                for (int sw = 0; sw < (r1 == r2 ? 1 : 2); ++sw) {
                    std::vector<std::int64_t> w = {sw ? r2 : r1, sw ? r1 : r2, role ? 1 : a, role ? a : 1};
                    out.shapes.push_back({WeightVector(w), a,
                                          "(r₁,r₂,a,d)=(" + i2s(r1) + "," + i2s(r2) + "," + i2s(a) + "," + i2s(d) + ")"});
                }
            }
        }
    }
    return out;
}

inline ShapeSearch can_shapes(const Presentation& p, const SeriesSupport&, std::int64_t k, const WindowOptions& o) {
    ShapeSearch out;
    auto& c = p.as<CAn>();
    auto n = c.n;
    out.bounds.push_back({"r₁ < 2kn and n ≤ 3k", "min(r₁,r₂) < " + i2s(2 * k * n) + ", n = " + i2s(n) + " ≤ " + i2s(3 * k)});
    out.bounds.push_back({"If a ≥ 6k², then dn < 4k", "a ≥ " + i2s(6 * k * k) + " ⇒ dn < " + i2s(4 * k)});
    if (n > 3 * k) return out;
    for (auto& t : c.g.terms()) {
        if (t[1] != 0 || t[0] % n != 0) continue;
        auto d = t[0] / n;
        // a is bounded by terms below z^{dn}: a*c + n*e >= a*d*n
        std::optional<std::int64_t> amax;
        for (auto& s : c.g.terms())
            if (s[0] < d * n) amax = std::min(amax.value_or(INT64_MAX), n * s[1] / (d * n - s[0]));
        if (!amax) out.closed = false;
        std::int64_t top = std::min(amax.value_or(o.a_max), o.a_max);
        if (amax && *amax > o.a_max) out.closed = false;
        for (std::int64_t a = 1; a <= top; ++a) {
            if (a >= 6 * k * k && d * n >= 4 * k) continue;
            auto S = a * d * n;
            for (std::int64_t r1 = 1; r1 < S; ++r1) {
                auto r2 = S - r1;
                if (std::min(r1, r2) >= 2 * k * n) continue;
                for (std::int64_t b = 1; b < n; ++b) {
                    if (b != c.b) continue;  // the quotient is fixed by X
                    Presentation q = CAn{n, b, r1, r2, a, d, c.g};
                    if (!shape_ok(q)) continue;
                    out.shapes.push_back({WeightVector({r1, r2, a, n}, n), a,
                                          "(n,b,r₁,r₂,a,d)=(" + i2s(n) + "," + i2s(b) + "," + i2s(r1) + "," + i2s(r2) +
                                              "," + i2s(a) + "," + i2s(d) + ")"});
                }
            }
        }
    }
    return out;
}

inline ShapeSearch cd1_shapes(const Presentation& p, const SeriesSupport&, std::int64_t k, const WindowOptions&) {
    ShapeSearch out;
    auto c = p.as<CD1>();
    out.bounds.push_back({"d ≤ 2k−1 and m < 4kr", "d ≤ " + i2s(2 * k - 1)});
    out.bounds.push_back({"r ≤ 8k²", "r ≤ " + i2s(8 * k * k)});
    for (std::int64_t d = 3; d <= 2 * k - 1; d += 2)
        for (std::int64_t r = 1; r <= 8 * k * k; ++r) {
            if ((2 * r + 1) % d != 0) continue;
            CD1 q = c;
            q.r = r;
            q.d = d;
            q.a = (2 * r + 1) / d;
            if (!shape_ok(q)) continue;
            out.shapes.push_back({*raw_classified_weight(q), q.a,
                                  "(r,a,d)=(" + i2s(r) + "," + i2s(q.a) + "," + i2s(d) + ")"});
        }
    return out;
}

inline ShapeSearch cd2_shapes(const Presentation& p, const SeriesSupport&, std::int64_t k, const WindowOptions&) {
    ShapeSearch out;
    auto c = p.as<CD2>();
    out.bounds.push_back({"d ≤ k−1", "d = " + i2s(c.d) + " ≤ " + i2s(k - 1)});
    out.bounds.push_back({"r ≤ 8k²−2", "r ≤ " + i2s(8 * k * k - 2)});
    if (c.d > k - 1) return out;
    for (std::int64_t r = 1; r <= 8 * k * k - 2; ++r) {
        if ((r + 1) % c.d != 0) continue;
        CD2 q = c;
        q.r = r;
        q.a = (r + 1) / c.d;
        if (!shape_ok(q)) continue;
        out.shapes.push_back({*raw_classified_weight(q), q.a, "(r,a,d)=(" + i2s(r) + "," + i2s(q.a) + "," + i2s(c.d) + ")"});
    }
    return out;
}

inline ShapeSearch cdh1_shapes(const Presentation& p, const SeriesSupport&, std::int64_t k, const WindowOptions& o) {
    ShapeSearch out;
    auto c = p.as<CDh1>();
    out.bounds.push_back({"d ≤ k and m < 4kr", "d ≤ " + i2s(k)});
    // p(z^2,u) with a pure u-power u^e forces 2e >= 2r+2
    std::optional<std::int64_t> rmax;
    for (auto& t : c.p.terms())
        if (t[0] == 0) rmax = std::min(rmax.value_or(INT64_MAX), static_cast<std::int64_t>(t[1]) - 1);
    if (!rmax || *rmax > o.a_max * k) out.closed = false;
    for (std::int64_t d = 1; d <= k; ++d)
        for (std::int64_t a = 1; a <= o.a_max; a += 2) {
            auto r = a * d - 1;
            if (r < 1 || r % 2 == 0) continue;
            if (rmax && r > *rmax) break;
            CDh1 q = c;
            q.r = r;
            q.a = a;
            q.d = d;
            if (!shape_ok(q)) continue;
            out.shapes.push_back({*raw_classified_weight(q), a, "(r,a,d)=(" + i2s(r) + "," + i2s(a) + "," + i2s(d) + ")"});
        }
    return out;
}

inline ShapeSearch cdh2_shapes(const Presentation& p, const SeriesSupport&, std::int64_t k, const WindowOptions&) {
    ShapeSearch out;
    auto c = p.as<CDh2>();
    out.bounds.push_back({"2d+1 ≤ k−1", "2d+1 = " + i2s(2 * c.d + 1) + " ≤ " + i2s(k - 1)});
    out.bounds.push_back({"r ≤ 16k²−4", "r ≤ " + i2s(16 * k * k - 4)});
    if (2 * c.d + 1 > k - 1) return out;
    for (std::int64_t r = 1; r <= 16 * k * k - 4; ++r) {
        if ((r + 2) % (2 * c.d + 1) != 0) continue;
        CDh2 q = c;
        q.r = r;
        q.a = (r + 2) / (2 * c.d + 1);
        if (!shape_ok(q)) continue;
        out.shapes.push_back({*raw_classified_weight(q), q.a, "(r,a,d)=(" + i2s(r) + "," + i2s(q.a) + "," + i2s(c.d) + ")"});
    }
    return out;
}

}  // namespace detail

inline ShapeSearch family_shapes(const Presentation& p, const SeriesSupport& f, std::int64_t k,
                                 const WindowOptions& o = {}) {
    ShapeSearch s;
    switch (p.family()) {
        case Family::smooth: s = detail::smooth_shapes(p, f, k, o); break;
        case Family::quotient:
            s.bounds.push_back({"w=1/n(b*,n−b*,1)", "the unique divisorial contraction of a terminal quotient"});
            break;
        case Family::cA: s = detail::ca_shapes(p, f, k, o); break;
        case Family::cAn: s = detail::can_shapes(p, f, k, o); break;
        case Family::cD1: s = detail::cd1_shapes(p, f, k, o); break;
        case Family::cD2: s = detail::cd2_shapes(p, f, k, o); break;
        case Family::cDh1: s = detail::cdh1_shapes(p, f, k, o); break;
        case Family::cDh2: s = detail::cdh2_shapes(p, f, k, o); break;
    }
    auto cw = classified_weight(p);
    bool have = false;
    for (auto& sh : s.shapes) have = have || sh.weight == cw;
    if (!have) s.shapes.insert(s.shapes.begin(), Shape{cw, discrepancy_param(p), "classified weight"});
    return s;
}

inline bool in_window(const Rational& v, std::int64_t k) { return v > Rational(1, k) && v < Rational(1, k - 1); }

inline WindowOutcome certified_ct_in_window(const Presentation& p, const SeriesSupport& f, std::int64_t k,
                                            const WindowOptions& o = {}) {
    if (k < 2) throw std::invalid_argument("window index k must be at least 2");
    auto viol = validate(p);
    if (!viol.empty()) throw invalid_presentation(std::move(viol));
    CompiledProblem P(p, f);

    WindowOutcome out;
    out.certificate.k = k;
    auto search = family_shapes(p, f, k, o);
    out.certificate.bounds_used = search.bounds;

    // best shaped weight
    std::optional<Shape> best;
    Rational rho;
    for (auto& sh : search.shapes) {
        Rational v;
        try {
            v = threshold_upper_bound(p, f, sh.weight);
        } catch (const std::invalid_argument&) {
            continue;  // uncertified multiplicity
        }
        if (!best || v < rho || (v == rho && sh.weight.numerator_sum() < best->weight.numerator_sum())) {
            best = sh;
            rho = v;
        }
    }
    if (!best) {
        out.status = WindowStatus::inconclusive;
        out.reason = "no shaped weight has certified multiplicities";
        return out;
    }
    auto result_at = [&](const WeightVector& w, const Rational& v, bool cert, std::int64_t cap, std::string closure) {
        ThresholdResult r;
        r.value = v;
        r.weight = w;
        r.witness = weighted_multiplicity(f, w).witness;
        r.certified = cert;
        r.cap = cap;
        r.closure = std::move(closure);
        return r;
    };
    out.certificate.notes.push_back("best shaped weight " + best->weight.str() + " " + best->label + " gives " +
                                    rho.str());

    auto floor_cap = classified_weight(p).max_numerator();
    if (rho <= Rational(1, k)) {
        auto cap = std::max(best->weight.max_numerator(), floor_cap);
        out.status = WindowStatus::absent;
        out.result = result_at(best->weight, rho, false, cap, "upper bound only");
        out.certificate.induced_cap = cap;
        out.reason = "ct ≤ " + rho.str() + " ≤ 1/" + std::to_string(k);
        return out;
    }

    // lower side: nothing beats rho anywhere
    std::string how;
    if (tail_certified(P, rho, 0, &how)) {
        auto cap = std::max(best->weight.max_numerator(), floor_cap);
        out.certificate.induced_cap = cap;
        out.result = result_at(best->weight, rho, true, cap, how);
        out.status = in_window(rho, k) ? WindowStatus::found : WindowStatus::absent;
        out.reason = in_window(rho, k) ? "shaped weight is optimal over all weights" : "ct = " + rho.str() + " ≥ 1/" +
                                                                                          std::to_string(k - 1);
        return out;
    }

    // ct may sit above the window without being attained (infimum only)
    if (rho >= Rational(1, k - 1) && tail_certified(P, Rational(1, k - 1), 0, &how)) {
        auto cap = std::max(best->weight.max_numerator(), floor_cap);
        out.certificate.induced_cap = cap;
        out.result = result_at(best->weight, rho, false, cap, "upper bound only");
        out.status = WindowStatus::absent;
        out.reason = "ct ≥ 1/" + std::to_string(k - 1) + " over all weights, " + how;
        return out;
    }

    // oracle at the cap induced by the shaped weight, escalated while the tail stays open
    auto cap = std::max(best->weight.max_numerator(), floor_cap);
    ThresholdResult r;
    for (;;) {
        r = brute_force_ct(p, f, cap);
        if (r.certified || cap >= o.cap_max) break;
        cap = std::min(o.cap_max, std::max(cap + 1, cap * 3 / 2));
    }
    out.certificate.induced_cap = r.cap;
    if (r.certified) {
        if (r.value < rho) out.certificate.notes.push_back("oracle found a smaller value than every shaped weight");
        out.status = in_window(r.value, k) ? WindowStatus::found : WindowStatus::absent;
        out.reason = "oracle at cap " + std::to_string(r.cap) + ", " + r.closure;
        out.result = r;
        return out;
    }
    if (r.value <= Rational(1, k)) {
        out.status = WindowStatus::absent;
        out.reason = "ct ≤ " + r.value.str() + " ≤ 1/" + std::to_string(k);
        out.result = r;
        return out;
    }
    out.status = WindowStatus::inconclusive;
    out.result = r;
    out.reason = search.closed ? "oracle tail not certified up to cap " + std::to_string(r.cap)
                               : "ladder search exhausted without certification (cap " + std::to_string(r.cap) + ")";
    return out;
}

}  // namespace canthresh
