#pragma once

#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "series.hpp"

namespace canthresh {

enum class Family { smooth, quotient, cA, cAn, cD1, cD2, cDh1, cDh2 };

inline constexpr std::array<Family, 8> kAllFamilies = {Family::smooth, Family::quotient, Family::cA,   Family::cAn,
                                                       Family::cD1,    Family::cD2,      Family::cDh1, Family::cDh2};

inline std::string_view family_tag(Family f) {
    switch (f) {
        case Family::smooth: return "smooth";
        case Family::quotient: return "quotient";
        case Family::cA: return "cA";
        case Family::cAn: return "cA/n";
        case Family::cD1: return "cD1";
        case Family::cD2: return "cD2";
        case Family::cDh1: return "cD/2-1";
        case Family::cDh2: return "cD/2-2";
    }
    return "?";
}

inline std::optional<Family> parse_family(std::string_view s) {
    for (auto f : kAllFamilies)
        if (family_tag(f) == s) return f;
    return std::nullopt;
}

inline bool is_singular_family(Family f) { return f != Family::smooth && f != Family::quotient; }

// Series tails are stored in their own variables: (z,u) for two-variable
// tails, (y,z,u) for three.  Exponents are the actual ones, so g(z^n,u)
// carries z-exponents divisible by n.
struct Smooth {
    std::int64_t alpha = 1, beta = 1;
};
// C^3 / (1/n)(1, -1, b)
struct Quotient {
    std::int64_t n = 2, b = 1;
};
struct CA {
    std::int64_t r1 = 1, r2 = 1, a = 1, d = 1;
    SeriesSupport g;
};
struct CAn {
    std::int64_t n = 2, b = 1, r1 = 1, r2 = 1, a = 1, d = 1;
    SeriesSupport g;
};
struct CD1 {
    std::int64_t r = 1, a = 1, d = 3;
    SeriesSupport q, p;
    bool lambda = false, mu = false, eta = true;
};
struct CD2 {
    std::int64_t r = 1, a = 1, d = 2;
    SeriesSupport p, q;
};
struct CDh1 {
    std::int64_t r = 1, a = 1, d = 2, alpha = 1;
    SeriesSupport q, p;
    bool lambda = false;
};
struct CDh2 {
    std::int64_t r = 1, a = 1, d = 1;
    SeriesSupport p, q;
};

class Presentation {
public:
    using Variant = std::variant<Smooth, Quotient, CA, CAn, CD1, CD2, CDh1, CDh2>;

    Presentation() = default;
    template <class T>
        requires(!std::is_same_v<std::decay_t<T>, Presentation> && std::is_constructible_v<Variant, T>)
    Presentation(T v) : v_(std::move(v)) {}  // NOLINT(implicit)

    Family family() const { return static_cast<Family>(v_.index()); }
    const Variant& variant() const { return v_; }
    template <class T>
    const T& as() const { return std::get<T>(v_); }
    template <class T>
    const T* get_if() const { return std::get_if<T>(&v_); }

private:
    Variant v_;
};

struct Violation {
    std::string anchor;
    std::string detail;
};

// ---------------------------------------------------------------- ambient

inline std::size_t ambient_dim(const Presentation& p) {
    switch (p.family()) {
        case Family::smooth:
        case Family::quotient: return 3;
        case Family::cD2:
        case Family::cDh2: return 5;
        default: return 4;
    }
}

inline CyclicQuotient ambient_quotient(const Presentation& p) {
    if (auto q = p.get_if<Quotient>())
        return CyclicQuotient(q->n, {1 % q->n, mod(-1, q->n), mod(q->b, q->n)});
    if (auto c = p.get_if<CAn>()) return CyclicQuotient(c->n, {1 % c->n, mod(-1, c->n), mod(c->b, c->n), 0});
    if (p.family() == Family::cDh1) return CyclicQuotient(2, {1, 1, 1, 0});
    if (p.family() == Family::cDh2) return CyclicQuotient(2, {1, 1, 1, 0, 1});
    return CyclicQuotient::trivial(ambient_dim(p));
}

namespace detail {

struct EquationBuilder {
    std::size_t dim;
    std::vector<Monomial> terms;
    std::int64_t complete = kPolynomial;

    explicit EquationBuilder(std::size_t d) : dim(d) {}

    void fixed(std::vector<int> e) {
        Monomial m(std::move(e));
        if (std::find(terms.begin(), terms.end(), m) == terms.end()) terms.push_back(m);
    }
    // add mult * s(vars...), s living in the variables listed in idx
    void embed(const SeriesSupport& s, std::vector<std::size_t> idx, std::vector<int> mult = {}) {
        if (s.empty()) {
            if (s.dim() != 0 && !s.is_polynomial()) complete = std::min(complete, s.complete_up_to());
            return;
        }
        if (s.dim() != idx.size()) throw structural_error("tail series has the wrong number of variables");
        if (mult.empty()) mult.assign(dim, 0);
        int md = 0;
        for (int v : mult) md += v;
        for (auto& t : s.terms()) {
            std::vector<int> e(mult);
            for (std::size_t i = 0; i < idx.size(); ++i) e[idx[i]] += t[i];
            fixed(std::move(e));
        }
        if (!s.is_polynomial()) complete = std::min(complete, s.complete_up_to() + md);
    }
    SeriesSupport build() const { return SeriesSupport(dim, terms, complete); }
};

}  // namespace detail

// Defining equations embedded in the ambient coordinates (x,y,z,u[,t]).
inline std::vector<SeriesSupport> equations(const Presentation& p) {
    using detail::EquationBuilder;
    switch (p.family()) {
        case Family::smooth:
        case Family::quotient: return {};
        case Family::cA:
        case Family::cAn: {
            const SeriesSupport& g = p.family() == Family::cA ? p.as<CA>().g : p.as<CAn>().g;
            EquationBuilder e(4);
            e.fixed({1, 1, 0, 0});
            e.embed(g, {2, 3});
            return {e.build()};
        }
        case Family::cD1: {
            auto& c = p.as<CD1>();
            EquationBuilder e(4);
            e.fixed({2, 0, 0, 0});
            e.embed(c.q, {2, 3}, {1, 0, 0, 0});
            e.fixed({0, 2, 0, 1});
            if (c.lambda) e.fixed({0, 1, 2, 0});
            if (c.mu) e.fixed({0, 0, 3, 0});
            e.embed(c.p, {1, 2, 3});
            return {e.build()};
        }
        case Family::cD2: {
            auto& c = p.as<CD2>();
            EquationBuilder e1(5), e2(5);
            e1.fixed({2, 0, 0, 0, 0});
            e1.fixed({0, 1, 0, 0, 1});
            e1.embed(c.p, {1, 2, 3});
            e2.fixed({0, 1, 0, 1, 0});
            e2.fixed({0, 0, static_cast<int>(c.d), 0, 0});
            e2.embed(c.q, {2, 3}, {0, 0, 0, 1, 0});
            e2.fixed({0, 0, 0, 0, 1});
            return {e1.build(), e2.build()};
        }
        case Family::cDh1: {
            auto& c = p.as<CDh1>();
            EquationBuilder e(4);
            e.fixed({2, 0, 0, 0});
            e.embed(c.q, {2, 3}, {1, 0, 1, 0});
            e.fixed({0, 2, 0, 1});
            if (c.lambda) e.fixed({0, 1, static_cast<int>(2 * c.alpha - 1), 0});
            e.embed(c.p, {2, 3});
            return {e.build()};
        }
        case Family::cDh2: {
            auto& c = p.as<CDh2>();
            EquationBuilder e1(5), e2(5);
            e1.fixed({2, 0, 0, 0, 0});
            e1.fixed({0, 1, 0, 0, 1});
            e1.embed(c.p, {2, 3});
            e2.fixed({0, 1, 0, 1, 0});
            e2.fixed({0, 0, static_cast<int>(2 * c.d + 1), 0, 0});
            e2.embed(c.q, {2, 3}, {0, 0, 1, 1, 0});
            e2.fixed({0, 0, 0, 0, 1});
            return {e1.build(), e2.build()};
        }
    }
    return {};
}

// The integer a with K_Y = s*K_X + (a/n)E for the classified weight.
inline std::int64_t discrepancy_param(const Presentation& p) {
    switch (p.family()) {
        case Family::smooth: return p.as<Smooth>().alpha + p.as<Smooth>().beta;
        case Family::quotient: return 1;
        case Family::cA: return p.as<CA>().a;
        case Family::cAn: return p.as<CAn>().a;
        case Family::cD1: return p.as<CD1>().a;
        case Family::cD2: return p.as<CD2>().a;
        case Family::cDh1: return p.as<CDh1>().a;
        case Family::cDh2: return p.as<CDh2>().a;
    }
    return 0;
}

// Unchecked: the classified weight built from the parameters alone.
inline std::optional<WeightVector> raw_classified_weight(const Presentation& p) {
    auto pos = [](std::initializer_list<std::int64_t> v) {
        for (auto x : v)
            if (x < 1) return false;
        return true;
    };
    switch (p.family()) {
        case Family::smooth: {
            auto& s = p.as<Smooth>();
            if (!pos({s.alpha, s.beta})) return std::nullopt;
            return WeightVector({1, s.alpha, s.beta});
        }
        case Family::quotient: {
            auto& q = p.as<Quotient>();
            auto bs = inverse_mod(q.b, q.n);
            if (q.n < 2 || bs == 0) return std::nullopt;
            return WeightVector({bs, q.n - bs, 1}, q.n);
        }
        case Family::cA: {
            auto& c = p.as<CA>();
            if (!pos({c.r1, c.r2, c.a})) return std::nullopt;
            return WeightVector({c.r1, c.r2, c.a, 1});
        }
        case Family::cAn: {
            auto& c = p.as<CAn>();
            if (!pos({c.r1, c.r2, c.a, c.n})) return std::nullopt;
            return WeightVector({c.r1, c.r2, c.a, c.n}, c.n);
        }
        case Family::cD1: {
            auto& c = p.as<CD1>();
            if (!pos({c.r, c.a})) return std::nullopt;
            return WeightVector({c.r + 1, c.r, c.a, 1});
        }
        case Family::cD2: {
            auto& c = p.as<CD2>();
            if (!pos({c.r, c.a})) return std::nullopt;
            return WeightVector({c.r + 1, c.r, c.a, 1, c.r + 2});
        }
        case Family::cDh1: {
            auto& c = p.as<CDh1>();
            if (!pos({c.r, c.a})) return std::nullopt;
            return WeightVector({c.r + 2, c.r, c.a, 2}, 2);
        }
        case Family::cDh2: {
            auto& c = p.as<CDh2>();
            if (!pos({c.r, c.a})) return std::nullopt;
            return WeightVector({c.r + 2, c.r, c.a, 2, c.r + 4}, 2);
        }
    }
    return std::nullopt;
}

// n*w(phi_i) required of the classified weight, one per equation.
inline std::vector<std::int64_t> expected_equation_orders(const Presentation& p) {
    switch (p.family()) {
        case Family::cA: return {p.as<CA>().r1 + p.as<CA>().r2};
        case Family::cAn: return {p.as<CAn>().r1 + p.as<CAn>().r2};
        case Family::cD1: return {2 * p.as<CD1>().r + 1};
        case Family::cD2: return {2 * p.as<CD2>().r + 2, p.as<CD2>().r + 1};
        case Family::cDh1: return {2 * p.as<CDh1>().r + 2};
        case Family::cDh2: return {2 * p.as<CDh2>().r + 4, p.as<CDh2>().r + 2};
        default: return {};
    }
}

// ------------------------------------------------------------- validation

namespace detail {

inline void need(std::vector<Violation>& out, bool ok, std::string anchor, std::string detail) {
    if (!ok) out.push_back({std::move(anchor), std::move(detail)});
}

inline std::string s(std::int64_t v) { return std::to_string(v); }

inline bool tail_ok(const SeriesSupport& t, std::size_t dim) { return t.dim() == 0 || t.dim() == dim; }

inline bool z_exponents_divisible(const SeriesSupport& t, int zpos, std::int64_t n) {
    for (auto& m : t.terms())
        if (m[zpos] % n != 0) return false;
    return true;
}

inline void check_equations(const Presentation& p, std::vector<Violation>& out, const std::string& anchor) {
    auto w = raw_classified_weight(p);
    if (!w) return;
    auto eqs = equations(p);
    auto want = expected_equation_orders(p);
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        auto mu = weighted_multiplicity(eqs[i], *w);
        auto got = mu.scaled(w->denominator());
        std::string name = eqs.size() > 1 ? "phi" + s(i + 1) : "phi";
        need(out, got == want[i], anchor,
             "n*w(" + name + ") = " + s(got) + " but the family requires " + s(want[i]));
        need(out, mu.certified, anchor, "n*w(" + name + ") is not certified by the truncation of the tails");
    }
    // the center is a singular point of X: no linear monomial in the (first) equation
    if (!eqs.empty()) {
        bool linear = false;
        for (auto& m : eqs[0].terms()) linear = linear || m.degree() <= 1;
        need(out, !linear, "terminal singular point",
             "the defining equation has a constant or linear monomial, so the point is not singular");
    }
}

}  // namespace detail

inline std::vector<Violation> validate(const Presentation& p) {
    using detail::need;
    using detail::s;
    std::vector<Violation> v;
    switch (p.family()) {
        case Family::smooth: {
            auto& c = p.as<Smooth>();
            need(v, c.alpha >= 1 && c.beta >= c.alpha, "w=(1,α,β) with 1 ≤ α < β",
                 "need 1 <= alpha <= beta, got alpha=" + s(c.alpha) + ", beta=" + s(c.beta));
            need(v, c.alpha < 1 || c.beta < 1 || std::gcd(c.alpha, c.beta) == 1, "w=(1,α,β) with 1 ≤ α < β",
                 "alpha and beta must be coprime");
            break;
        }
        case Family::quotient: {
            auto& c = p.as<Quotient>();
            need(v, c.n >= 2, "1/n(1,-1,b)", "index n must be at least 2");
            need(v, c.n >= 2 && c.b > 0 && c.b < c.n && std::gcd(c.b, c.n) == 1, "1/n(1,-1,b)",
                 "need 0 < b < n with gcd(b,n) = 1");
            break;
        }
        case Family::cA: {
            auto& c = p.as<CA>();
            need(v, c.r1 >= 1 && c.r2 >= 1 && c.a >= 1 && c.d >= 1, "w(g(z,u)) = r₁+r₂ = ad",
                 "r1, r2, a, d must be positive integers");
            need(v, c.r1 <= c.r2, "r₁ ≤ r₂", "need r1 <= r2");
            need(v, c.r1 + c.r2 == c.a * c.d, "w(g(z,u)) = r₁+r₂ = ad",
                 "r1+r2 = " + s(c.r1 + c.r2) + " but ad = " + s(c.a * c.d));
            need(v, detail::tail_ok(c.g, 2) && !c.g.empty(), "w(g(z,u)) = r₁+r₂ = ad",
                 "g must be a nonempty series in (z,u)");
            if (v.empty()) detail::check_equations(p, v, "w(g(z,u)) = r₁+r₂ = ad");
            break;
        }
        case Family::cAn: {
            auto& c = p.as<CAn>();
            bool pos = c.n >= 2 && c.r1 >= 1 && c.r2 >= 1 && c.a >= 1 && c.d >= 1;
            need(v, pos, "nw(φ) = r₁+r₂ = adn", "n >= 2 and r1, r2, a, d positive are required");
            if (!pos) break;
            need(v, c.r1 + c.r2 == c.a * c.d * c.n, "nw(φ) = r₁+r₂ = adn",
                 "r1+r2 = " + s(c.r1 + c.r2) + " but adn = " + s(c.a * c.d * c.n));
            need(v, detail::tail_ok(c.g, 2) && !c.g.empty(), "z^{dn} ∈ g(zⁿ,u)", "g must be a nonempty series in (z,u)");
            if (!v.empty()) break;
            need(v, detail::z_exponents_divisible(c.g, 0, c.n), "z^{dn} ∈ g(zⁿ,u)",
                 "every z-exponent of g must be divisible by n");
            need(v, c.g.contains(Monomial{static_cast<int>(c.d * c.n), 0}), "z^{dn} ∈ g(zⁿ,u)",
                 "g does not contain z^" + s(c.d * c.n));
            need(v, c.b > 0 && c.b < c.n, "a ≡ br₁ (mod n) and 0 < b < n", "need 0 < b < n");
            need(v, mod(c.a - c.b * c.r1, c.n) == 0, "a ≡ br₁ (mod n) and 0 < b < n",
                 "a = " + s(c.a) + " is not congruent to b*r1 = " + s(c.b * c.r1) + " mod " + s(c.n));
            if (v.empty()) {
                bool g1 = std::gcd(c.b, c.n) == 1;
                bool g2 = std::gcd((c.a - c.b * c.r1) / c.n, c.r1) == 1;
                bool g3 = std::gcd((c.a + c.b * c.r2) / c.n, c.r2) == 1;
                need(v, g1 && g2 && g3, "gcd(b,n)=gcd((a−br₁)/n,r₁)=gcd((a+br₂)/n,r₂)=1",
                     "gcd conditions fail: gcd(b,n)=" + s(std::gcd(c.b, c.n)) + ", gcd((a-br1)/n,r1)=" +
                         s(std::gcd((c.a - c.b * c.r1) / c.n, c.r1)) + ", gcd((a+br2)/n,r2)=" +
                         s(std::gcd((c.a + c.b * c.r2) / c.n, c.r2)));
            }
            if (v.empty()) detail::check_equations(p, v, "nw(φ) = r₁+r₂ = adn");
            break;
        }
        case Family::cD1: {
            auto& c = p.as<CD1>();
            need(v, c.r >= 1 && c.a >= 1, "2r+1=ad", "r and a must be positive");
            need(v, 2 * c.r + 1 == c.a * c.d, "2r+1=ad", "2r+1 = " + s(2 * c.r + 1) + " but ad = " + s(c.a * c.d));
            need(v, c.d >= 3, "2r+1=ad where d ≥ 3 and a is an odd integer", "need d >= 3");
            need(v, c.a % 2 != 0, "2r+1=ad where d ≥ 3 and a is an odd integer", "a must be odd");
            need(v, detail::tail_ok(c.q, 2) && detail::tail_ok(c.p, 3), "x²+xq(z,u)+y²u+λyz²+μz³+p(y,z,u)",
                 "q must be a series in (z,u) and p in (y,z,u)");
            if (v.empty()) detail::check_equations(p, v, "x²+xq(z,u)+y²u+λyz²+μz³+p(y,z,u)");
            break;
        }
        case Family::cD2: {
            auto& c = p.as<CD2>();
            need(v, c.r >= 1 && c.a >= 1, "r+1=ad", "r and a must be positive");
            need(v, c.r + 1 == c.a * c.d, "r+1=ad", "r+1 = " + s(c.r + 1) + " but ad = " + s(c.a * c.d));
            need(v, c.d >= 2, "r+1=ad where d ≥ 2", "need d >= 2");
            need(v, detail::tail_ok(c.p, 3) && detail::tail_ok(c.q, 2), "φ₁: x²+yt+p(y,z,u)=0",
                 "p must be a series in (y,z,u) and q in (z,u)");
            if (v.empty()) detail::check_equations(p, v, "φ₁: x²+yt+p(y,z,u)=0");
            break;
        }
        case Family::cDh1: {
            auto& c = p.as<CDh1>();
            need(v, c.r >= 1 && c.a >= 1 && c.d >= 1, "r+1=ad", "r, a, d must be positive");
            need(v, c.r + 1 == c.a * c.d, "r+1=ad", "r+1 = " + s(c.r + 1) + " but ad = " + s(c.a * c.d));
            need(v, c.a % 2 != 0 && c.r % 2 != 0, "r+1=ad where both a and r are odd", "a and r must be odd");
            need(v, !c.lambda || c.alpha >= 1, "x²+xzq(z²,u)+y²u+λyz^{2α−1}+p(z²,u)", "alpha must be positive");
            need(v, detail::tail_ok(c.q, 2) && detail::tail_ok(c.p, 2), "x²+xzq(z²,u)+y²u+λyz^{2α−1}+p(z²,u)",
                 "q and p must be series in (z,u)");
            if (!v.empty()) break;
            need(v, detail::z_exponents_divisible(c.q, 0, 2) && detail::z_exponents_divisible(c.p, 0, 2),
                 "x²+xzq(z²,u)+y²u+λyz^{2α−1}+p(z²,u)", "q and p must only involve even powers of z");
            if (v.empty()) detail::check_equations(p, v, "x²+xzq(z²,u)+y²u+λyz^{2α−1}+p(z²,u)");
            break;
        }
        case Family::cDh2: {
            auto& c = p.as<CDh2>();
            need(v, c.r >= 1 && c.a >= 1, "r+2=a(2d+1)", "r and a must be positive");
            need(v, c.d >= 1, "r+2=a(2d+1) where d is a positive integer", "need d >= 1");
            need(v, c.r + 2 == c.a * (2 * c.d + 1), "r+2=a(2d+1) where d is a positive integer",
                 "r+2 = " + s(c.r + 2) + " but a(2d+1) = " + s(c.a * (2 * c.d + 1)));
            need(v, detail::tail_ok(c.p, 2) && detail::tail_ok(c.q, 2), "yu+z^{2d+1}+q(z²,u)zu+t",
                 "p and q must be series in (z,u)");
            if (!v.empty()) break;
            need(v, detail::z_exponents_divisible(c.q, 0, 2) && detail::z_exponents_divisible(c.p, 0, 2),
                 "yu+z^{2d+1}+q(z²,u)zu+t", "p and q must only involve even powers of z");
            if (v.empty()) detail::check_equations(p, v, "yu+z^{2d+1}+q(z²,u)zu+t");
            break;
        }
    }
    return v;
}

inline std::vector<std::string> notes(const Presentation& p) {
    std::vector<std::string> out;
    if (is_singular_family(p.family()) && p.family() != Family::cA && p.family() != Family::cAn &&
        discrepancy_param(p) < 5)
        out.push_back("a < 5: the proposition's bounds are not invoked for this presentation");
    if (auto c = p.get_if<CAn>(); c && c->a < 5)
        out.push_back("a < 5: the proposition's bounds are not invoked for this presentation");
    return out;
}

struct invalid_presentation : std::invalid_argument {
    std::vector<Violation> violations;
    explicit invalid_presentation(std::vector<Violation> v)
        : std::invalid_argument("invalid presentation: " + (v.empty() ? std::string() : v.front().anchor + ": " +
                                                                                          v.front().detail)),
          violations(std::move(v)) {}
};

inline WeightVector classified_weight(const Presentation& p) {
    auto v = validate(p);
    if (!v.empty()) throw invalid_presentation(std::move(v));
    return *raw_classified_weight(p);
}

// a(w) = sum k_j - n - sum_i n*w(phi_i): the integer with K_Y = s*K_X + (a/n)E.
inline Rational weighted_discrepancy(const Presentation& p, const WeightVector& w) {
    auto q = ambient_quotient(p);
    if (w.dim() != q.dim()) throw structural_error("weight has the wrong dimension for this presentation");
    if (!is_admissible(w, q)) throw std::invalid_argument("weight " + w.str() + " is not admissible");
    std::int64_t a = w.numerator_sum() - w.denominator();
    for (auto& phi : equations(p)) {
        auto mu = weighted_multiplicity(phi, w);
        if (!mu.certified)
            throw std::invalid_argument("multiplicity of the defining equation under " + w.str() + " is not certified");
        a -= mu.scaled(w.denominator());
    }
    return Rational(a);
}

// --------------------------------------------------------- comparison set

struct ComparisonWeight {
    std::string name;
    std::string role;
    std::optional<WeightVector> weight;
    std::optional<Rational> factor;  // asserted domination: weight >= factor * classified
    std::int64_t discrepancy = 0;    // weighted discrepancy the argument attaches to it
    std::string anchor;
    std::string omitted;
};

using ComparisonWeightSet = std::vector<ComparisonWeight>;

namespace detail {

inline ComparisonWeight cw(std::string name, std::string role, std::vector<std::int64_t> nums, std::int64_t den,
                           std::optional<Rational> factor, std::int64_t disc, std::string anchor,
                           std::string side_condition = {}) {
    ComparisonWeight c{std::move(name), std::move(role), std::nullopt, factor, disc, std::move(anchor), {}};
    bool positive = std::all_of(nums.begin(), nums.end(), [](auto x) { return x >= 1; });
    if (!side_condition.empty())
        c.omitted = side_condition;
    else if (!positive)
        c.omitted = "non-positive entry";
    else
        c.weight = WeightVector(std::move(nums), den);
    return c;
}

}  // namespace detail

inline ComparisonWeightSet comparison_weights(const Presentation& p, std::int64_t k) {
    using detail::cw;
    ComparisonWeightSet out;
    switch (p.family()) {
        case Family::smooth: {
            auto& c = p.as<Smooth>();
            out.push_back(cw("w'", "lower-discrepancy comparison", {1, c.alpha, c.beta - 1}, 1,
                             Rational(c.beta - 1, c.beta), c.alpha + c.beta - 1, "w′ := (1,α,β−1)"));
            break;
        }
        case Family::quotient: break;
        case Family::cA: {
            auto& c = p.as<CA>();
            out.push_back(cw("w_{a-1}", "lower-discrepancy comparison", {c.r1, c.r2 - c.d, c.a - 1, 1}, 1,
                             Rational(c.r2 - c.d, c.r2), c.a - 1, "w_{a−1}:=(r₁,r₂−d,a−1,1)"));
            break;
        }
        case Family::cAn: {
            auto& c = p.as<CAn>();
            auto bs = inverse_mod(c.b, c.n);
            auto dn = c.d * c.n;
            out.push_back(cw("w_1", "floor/ceiling comparison", {bs, dn - bs, 1, c.n}, c.n, std::nullopt, 1,
                             "w₁ = (1/n)(b*, dn−b*, 1, n)", bs == 0 ? "b is not invertible mod n" : ""));
            std::string gate;
            Rational thr = std::max(Rational(6 * k * k), dn > 1 ? Rational(c.r1 + dn * c.n - c.n, dn - 1)
                                                                   : Rational(INT32_MAX));
            if (!(Rational(c.a) > thr)) gate = "side condition a > max{6k², (r₁+dn²−n)/(dn−1)} fails";
            out.push_back(cw("w_{a-n}", "squeeze witness", {c.r1, c.r2 - dn * c.n, c.a - c.n, c.n}, c.n,
                             std::min(Rational(c.r2 - dn * c.n, c.r2), Rational(c.a - c.n, c.a)), c.a - c.n,
                             "w_{a−n}=(1/n)(r₁,r₂−dn²,a−n,n)", gate));
            break;
        }
        case Family::cD1: {
            auto& c = p.as<CD1>();
            auto s = (c.d - 1) / 2;
            out.push_back(cw("w'", "window bound", {s + 1, s, 1, 1}, 1, std::nullopt, 1, "w′=(s+1,s,1,1)"));
            // with a = 1 the factor d/(r+1) exceeds 1 and w₂ has a−2 < 1: the comparison is void
            out.push_back(cw("w_1", "floor/ceiling comparison", {c.d, c.d, 2, 1}, 1, Rational(c.d, c.r + 1), 2,
                             "w₁ ⪰ (d/(r+1)) w", c.a < 3 ? "side condition a ≥ 3 fails" : ""));
            out.push_back(cw("w_2", "floor/ceiling comparison", {c.r + 1 - c.d, c.r - c.d, c.a - 2, 1}, 1,
                             Rational(c.r - c.d, c.r), c.a - 2, "w₂ ⪰ ((r−d)/r) w"));
            break;
        }
        case Family::cD2: {
            auto& c = p.as<CD2>();
            out.push_back(cw("w_1", "floor/ceiling comparison", {c.d, c.d, 1, 1, c.d}, 1, Rational(c.d, c.r + 2), 1,
                             "w₁=(d,d,1,1,d)"));
            out.push_back(cw("w_{a-1}", "floor/ceiling comparison",
                             {c.r - c.d + 1, c.r - c.d, c.a - 1, 1, c.r - c.d + 2}, 1, Rational(c.r - c.d, c.r),
                             c.a - 1, "w_{a−1}=(r−d+1,r−d,a−1,1,r−d+2)"));
            break;
        }
        case Family::cDh1: {
            auto& c = p.as<CDh1>();
            auto s = c.d - 1;
            out.push_back(cw("w'", "window bound", {s + 2, s, 1, 2}, 2, std::nullopt, 1, "w′=(1/2)(s+2,s,1,2)"));
            out.push_back(cw("w_{a-2}", "squeeze witness", {c.r - 2 * c.d + 2, c.r - 2 * c.d, c.a - 2, 2}, 2,
                             std::min({Rational(c.r - 2 * c.d + 2, c.r + 2), Rational(c.r - 2 * c.d, c.r),
                                       Rational(c.a - 2, c.a)}),
                             c.a - 2, "w_{a−2}=(1/2)(r−2d+2,r−2d,a−2,2)"));
            out.push_back(cw("w_1", "remark", {2 * c.d, 2 * c.d, 2, 2}, 2, std::nullopt, 2, "w₁=(1/2)(2d,2d,2,2)"));
            break;
        }
        case Family::cDh2: {
            auto& c = p.as<CDh2>();
            auto e = 2 * c.d + 1;
            out.push_back(cw("w_1", "floor/ceiling comparison", {e, e, 1, 2, e}, 2, Rational(e, c.r + 4), 1,
                             "w₁=(1/2)(2d+1,2d+1,1,2,2d+1)"));
            out.push_back(cw("w_{a-1}", "floor/ceiling comparison",
                             {c.r - 2 * c.d + 1, c.r - 2 * c.d - 1, c.a - 1, 2, c.r - 2 * c.d + 3}, 2,
                             Rational(c.r - 2 * c.d - 1, c.r), c.a - 1, "w_{a−1}=(1/2)(r−2d+1,r−2d−1,a−1,2,r−2d+3)"));
            break;
        }
    }
    return out;
}

inline const ComparisonWeight* find_comparison(const ComparisonWeightSet& s, std::string_view name) {
    for (auto& c : s)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace canthresh
