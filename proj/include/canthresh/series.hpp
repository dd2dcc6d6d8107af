#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace canthresh {

struct structural_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<int> e) : exps_(std::move(e)) {
        for (int v : exps_)
            if (v < 0) throw structural_error("negative exponent");
    }
    Monomial(std::initializer_list<int> e) : Monomial(std::vector<int>(e)) {}

    static Monomial zero(std::size_t dim) { return Monomial(std::vector<int>(dim, 0)); }
    static Monomial var(std::size_t dim, std::size_t i, int e = 1) {
        std::vector<int> v(dim, 0);
        v.at(i) = e;
        return Monomial(std::move(v));
    }

    std::size_t dim() const { return exps_.size(); }
    int operator[](std::size_t i) const { return exps_[i]; }
    const std::vector<int>& exponents() const { return exps_; }

    std::int64_t degree() const {
        std::int64_t d = 0;
        for (int v : exps_) d += v;
        return d;
    }

    Monomial operator*(const Monomial& o) const {
        check_dim(o.dim());
        std::vector<int> e(exps_);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.exps_[i];
        return Monomial(std::move(e));
    }

    // componentwise >=
    bool divisible_by(const Monomial& o) const {
        check_dim(o.dim());
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] < o.exps_[i]) return false;
        return true;
    }

    void check_dim(std::size_t d) const {
        if (d != exps_.size())
            throw structural_error("dimension mismatch: " + std::to_string(exps_.size()) + " vs " +
                                   std::to_string(d));
    }

    friend auto operator<=>(const Monomial&, const Monomial&) = default;

    std::string str() const {
        static const char* names5[] = {"x", "y", "z", "u", "t"};
        std::string s;
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            if (exps_[i] == 0) continue;
            s += i < 5 ? names5[i] : "v" + std::to_string(i);
            if (exps_[i] > 1) s += "^" + std::to_string(exps_[i]);
        }
        return s.empty() ? "1" : s;
    }

private:
    std::vector<int> exps_;
};

// complete_up_to at or above this value marks a polynomial (nothing omitted)
inline constexpr std::int64_t kPolynomial = 1'000'000'000;

class SeriesSupport {
public:
    SeriesSupport() = default;
    SeriesSupport(std::size_t dim, std::vector<Monomial> terms, std::int64_t complete_up_to = kPolynomial)
        : dim_(dim), terms_(std::move(terms)), complete_(complete_up_to) {
        if (dim_ == 0) throw structural_error("series of dimension 0");
        if (complete_ < 1) throw structural_error("complete_up_to must be positive");
        for (auto& t : terms_) t.check_dim(dim_);
        std::sort(terms_.begin(), terms_.end());
        if (std::adjacent_find(terms_.begin(), terms_.end()) != terms_.end())
            throw structural_error("duplicate exponent vector in series support");
    }

    static SeriesSupport polynomial(std::size_t dim, std::vector<std::vector<int>> exps) {
        std::vector<Monomial> t;
        for (auto& e : exps) t.emplace_back(std::move(e));
        return SeriesSupport(dim, std::move(t));
    }

    std::size_t dim() const { return dim_; }
    const std::vector<Monomial>& terms() const { return terms_; }
    std::int64_t complete_up_to() const { return complete_; }
    bool is_polynomial() const { return complete_ >= kPolynomial; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool contains(const Monomial& m) const { return std::binary_search(terms_.begin(), terms_.end(), m); }

    std::int64_t max_degree() const {
        std::int64_t d = 0;
        for (auto& t : terms_) d = std::max(d, t.degree());
        return d;
    }

    // union; completeness is the weaker of the two
    SeriesSupport merged(const SeriesSupport& o) const {
        if (o.dim_ != dim_) throw structural_error("dimension mismatch in merge");
        std::vector<Monomial> t(terms_);
        for (auto& m : o.terms_)
            if (!contains(m)) t.push_back(m);
        return SeriesSupport(dim_, std::move(t), std::min(complete_, o.complete_));
    }

    SeriesSupport with_term(const Monomial& m) const {
        if (contains(m)) return *this;
        std::vector<Monomial> t(terms_);
        t.push_back(m);
        return SeriesSupport(dim_, std::move(t), complete_);
    }

    // f -> f^2 at the level of supports used for scaling checks: every exponent doubled
    SeriesSupport doubled() const {
        std::vector<Monomial> t;
        for (auto& m : terms_) t.push_back(m * m);
        return SeriesSupport(dim_, std::move(t), is_polynomial() ? kPolynomial : 2 * complete_ + 1);
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < terms_.size(); ++i) s += (i ? "+" : "") + terms_[i].str();
        return s.empty() ? "0" : s;
    }

    friend bool operator==(const SeriesSupport&, const SeriesSupport&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<Monomial> terms_;
    std::int64_t complete_ = kPolynomial;
};

struct CyclicQuotient {
    std::int64_t n = 1;
    std::vector<std::int64_t> b;

    CyclicQuotient() = default;
    CyclicQuotient(std::int64_t n_, std::vector<std::int64_t> b_) : n(n_), b(std::move(b_)) {
        if (n < 1) throw structural_error("quotient index must be positive");
        for (auto v : b)
            if (v < 0 || v >= n) throw structural_error("quotient residue out of range");
    }
    static CyclicQuotient trivial(std::size_t dim) { return CyclicQuotient(1, std::vector<std::int64_t>(dim, 0)); }

    std::size_t dim() const { return b.size(); }

    std::int64_t residue(const Monomial& m) const {
        m.check_dim(dim());
        std::int64_t s = 0;
        for (std::size_t i = 0; i < b.size(); ++i) s += static_cast<std::int64_t>(m[i]) * b[i];
        return mod(s, n);
    }

    friend bool operator==(const CyclicQuotient&, const CyclicQuotient&) = default;
};

class WeightVector {
public:
    WeightVector() = default;
    WeightVector(std::vector<std::int64_t> nums, std::int64_t den = 1) : nums_(std::move(nums)), den_(den) {
        if (den_ < 1) throw structural_error("weight denominator must be positive");
        if (nums_.empty()) throw structural_error("empty weight vector");
        for (auto k : nums_)
            if (k < 1) throw structural_error("weight numerators must be positive");
    }
    WeightVector(std::initializer_list<std::int64_t> nums, std::int64_t den = 1)
        : WeightVector(std::vector<std::int64_t>(nums), den) {}

    std::size_t dim() const { return nums_.size(); }
    const std::vector<std::int64_t>& numerators() const { return nums_; }
    std::int64_t denominator() const { return den_; }
    std::int64_t operator[](std::size_t i) const { return nums_[i]; }
    Rational weight(std::size_t i) const { return Rational(nums_[i], den_); }

    std::int64_t max_numerator() const { return *std::max_element(nums_.begin(), nums_.end()); }
    std::int64_t min_numerator() const { return *std::min_element(nums_.begin(), nums_.end()); }
    std::int64_t numerator_sum() const {
        std::int64_t s = 0;
        for (auto k : nums_) s = checked_add(s, k);
        return s;
    }

    // n * w(m): integer
    std::int64_t scaled(const Monomial& m) const {
        m.check_dim(dim());
        std::int64_t s = 0;
        for (std::size_t i = 0; i < nums_.size(); ++i) s = checked_add(s, checked_mul(m[i], nums_[i]));
        return s;
    }

    friend bool operator==(const WeightVector&, const WeightVector&) = default;

    std::string str() const {
        std::string s = den_ == 1 ? "(" : "1/" + std::to_string(den_) + "(";
        for (std::size_t i = 0; i < nums_.size(); ++i) s += (i ? "," : "") + std::to_string(nums_[i]);
        return s + ")";
    }

private:
    std::vector<std::int64_t> nums_;
    std::int64_t den_ = 1;
};

inline Rational monomial_weight(const Monomial& m, const WeightVector& w) {
    return Rational(w.scaled(m), w.denominator());
}

struct Multiplicity {
    Rational value;
    Monomial witness;
    bool certified = false;

    // n * value, always an integer
    std::int64_t scaled(std::int64_t n) const { return (value * Rational(n)).num(); }
};

inline bool tail_certifies(const SeriesSupport& f, const WeightVector& w, std::int64_t scaled_min) {
    if (f.is_polynomial()) return true;
    i128 bound = static_cast<i128>(f.complete_up_to() + 1) * w.min_numerator();
    return bound >= scaled_min;
}

inline Multiplicity weighted_multiplicity(const SeriesSupport& f, const WeightVector& w) {
    if (f.empty()) throw std::invalid_argument("weighted multiplicity of the zero series");
    if (f.dim() != w.dim()) throw structural_error("dimension mismatch between series and weight");
    // terms are sorted lexicographically, so the first minimum is the lexicographic witness
    std::int64_t best = w.scaled(f.terms().front());
    const Monomial* wit = &f.terms().front();
    for (auto& t : f.terms()) {
        auto v = w.scaled(t);
        if (v < best) {
            best = v;
            wit = &t;
        }
    }
    return {Rational(best, w.denominator()), *wit, tail_certifies(f, w, best)};
}

inline std::optional<std::int64_t> semi_invariant_class(const SeriesSupport& f, const CyclicQuotient& q) {
    if (f.dim() != q.dim()) throw structural_error("dimension mismatch between series and quotient");
    std::optional<std::int64_t> r;
    for (auto& t : f.terms()) {
        auto c = q.residue(t);
        if (r && *r != c) return std::nullopt;
        r = c;
    }
    return r.value_or(0);
}

inline bool is_admissible(const WeightVector& w, const CyclicQuotient& q) {
    if (w.dim() != q.dim()) throw structural_error("dimension mismatch between weight and quotient");
    if (w.denominator() != q.n) return false;
    for (std::int64_t s = 0; s < q.n; ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < q.dim() && ok; ++i) ok = mod(w[i] - s * q.b[i], q.n) == 0;
        if (ok) return true;
    }
    return false;
}

// w2 >= c * w1 componentwise, compared as rationals
inline bool dominates(const WeightVector& w2, const WeightVector& w1, const Rational& c) {
    if (w1.dim() != w2.dim()) throw structural_error("dimension mismatch between weights");
    for (std::size_t i = 0; i < w1.dim(); ++i)
        if (w2.weight(i) < c * w1.weight(i)) return false;
    return true;
}

struct MultiplicityComparison {
    Rational m;        // n * w(f)
    Rational m_prime;  // n' * w'(f)
    std::int64_t ceiling = 0;  // ceil(c * m)
    bool holds = false;
};

// The pattern behind the floor/ceiling inequalities: if w' >= c w then the
// multiplicity under w' is at least c times the one under w. Multiplicities
// here are n*w(f), so the comparison is done on n'w' against c * n w.
inline MultiplicityComparison multiplicity_comparison(const SeriesSupport& f, const WeightVector& w,
                                                      const WeightVector& w2, const Rational& c) {
    WeightVector a(w.numerators(), 1), b(w2.numerators(), 1);
    if (!dominates(b, a, c)) {
        std::ostringstream os;
        os << "domination hypothesis fails: " << w2.str() << " numerators are not >= " << c << " times "
           << w.str() << " numerators";
        throw std::invalid_argument(os.str());
    }
    MultiplicityComparison r;
    r.m = weighted_multiplicity(f, a).value;
    r.m_prime = weighted_multiplicity(f, b).value;
    r.ceiling = (c * r.m).ceil();
    r.holds = r.m_prime >= Rational(r.ceiling);
    return r;
}

}  // namespace canthresh
