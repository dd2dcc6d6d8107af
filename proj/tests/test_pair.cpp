#include <gtest/gtest.h>

#include <canthresh/pair.hpp>

#include "support.hpp"

using namespace canthresh;
using testing_support::poly;

namespace {

const SeriesSupport kBrieskorn = poly(3, {{2, 0, 0}, {0, 3, 0}, {0, 0, 6}});

PairInput large_n_input(std::int64_t n) {
    PairInput in{CAn{n, 1, 1, n - 1, 1, 1, poly(2, {{static_cast<int>(n), 0}, {0, 2}})}, {}, {}, 3};
    in.S.push_back({Rational(1), poly(4, {{0, 0, 2, 0}, {1, 1, 2, 0}})});
    return in;
}

TEST(PairThreshold, Examples) {
    EXPECT_EQ(pair_threshold(Rational(2), {}, {{Rational(1), Rational(2)}}), Rational(1));
    EXPECT_EQ(pair_threshold(Rational(5), {{Rational(1, 2), Rational(0)}}, {{Rational(1), Rational(6)}}), Rational(5, 6));
    auto v = pair_threshold(Rational(1), {{Rational(1), Rational(2)}}, {{Rational(1), Rational(1)}});
    EXPECT_EQ(v, Rational(-1));
    EXPECT_TRUE(pair_threshold_warning(v).has_value());
    EXPECT_FALSE(pair_threshold_warning(Rational(1, 3)).has_value());
    EXPECT_THROW(pair_threshold(Rational(1), {}, {}), std::invalid_argument);
}

TEST(PairOracle, SmoothBrieskornWithBoundary) {
    PairInput in{Smooth{1, 1}, {}, {{Rational(1), kBrieskorn}}, 1};
    auto r = pair_oracle(in, 8);
    EXPECT_EQ(r.value, Rational(5, 6));
    EXPECT_EQ(r.weight.str(), "(3,2,1)");
    EXPECT_TRUE(r.certified);

    // the boundary x = 0 costs 3 at (3,2,1): (6 - 1/2*3)/6
    in.B.push_back({Rational(1, 2), poly(3, {{1, 0, 0}})});
    auto b = pair_oracle(in, 8);
    EXPECT_LE(b.value, Rational(3, 4));
    EXPECT_EQ(b.value, pair_value_at(in, b.weight).value);
}

TEST(PairOracle, RejectsMalformedInput) {
    PairInput no_s{Smooth{1, 1}, {}, {}, 1};
    EXPECT_THROW(pair_oracle(no_s, 4), std::invalid_argument);
    PairInput unit{Smooth{1, 1}, {}, {{Rational(1), poly(3, {{0, 0, 0}, {1, 0, 0}})}}, 1};
    EXPECT_THROW(pair_oracle(unit, 4), std::invalid_argument);
    PairInput neg{Smooth{1, 1}, {}, {{Rational(-1), kBrieskorn}}, 1};
    EXPECT_THROW(pair_oracle(neg, 4), std::invalid_argument);
}

TEST(Dcc, Validation) {
    auto s = make_dcc({Rational(1, 2), Rational(1, 3), Rational(1)}, true);
    EXPECT_EQ(s.floor, Rational(1, 3));
    EXPECT_THROW(make_dcc({Rational(3, 2)}, true), std::invalid_argument);
    EXPECT_NO_THROW(make_dcc({Rational(3, 2)}, false));
    EXPECT_THROW(make_dcc({Rational(0)}, false), std::invalid_argument);
    EXPECT_THROW(make_dcc({}, false), std::invalid_argument);
    EXPECT_FALSE(dcc_violations({{Rational(1, 2)}, Rational(1, 3)}, true).empty());
}

TEST(ComponentBounds, Formula) {
    auto [b, s] = component_bounds(Rational(1, 3), Rational(1, 2), 3);
    EXPECT_EQ(b, Rational(6));
    EXPECT_EQ(s, Rational(12));
    EXPECT_THROW(component_bounds(Rational(0), Rational(1), 1), std::invalid_argument);
    EXPECT_THROW(component_bounds(Rational(1), Rational(1), 0), std::invalid_argument);
}

TEST(IndexDichotomy, SmallIndexIsBounded) {
    PairInput in{CAn{2, 1, 1, 9, 5, 1, poly(2, {{2, 0}, {0, 5}})}, {}, {{Rational(1), poly(4, {{1, 1, 0, 0}})}}, 1};
    auto out = index_dichotomy(in, 8);
    ASSERT_TRUE(std::holds_alternative<BoundedIndex>(out));
    EXPECT_EQ(std::get<BoundedIndex>(out).bound, Rational(3));
    EXPECT_THROW(index_dichotomy(PairInput{Smooth{1, 1}, {}, {{Rational(1), kBrieskorn}}, 1}, 4), std::invalid_argument);
}

TEST(IndexDichotomy, LargeIndexSandwich) {
    for (std::int64_t n : {11, 13, 16, 17}) {
        auto in = large_n_input(n);
        auto out = index_dichotomy(in, 0);
        ASSERT_TRUE(std::holds_alternative<Representation>(out)) << n;
        auto& rep = std::get<Representation>(out);
        EXPECT_EQ(rep.sandwich, rep.pair_threshold) << n;
        EXPECT_GT(rep.pair_threshold, Rational(1, 3)) << n;
        EXPECT_EQ(rep.l, std::vector<std::int64_t>{2}) << n;
    }
}

TEST(MonotoneCompare, BrieskornChain) {
    PairRecord ri{{Smooth{1, 1}, {}, {{Rational(1, 2), kBrieskorn}}, 1}, WeightVector({3, 2, 1})};
    PairRecord rj{{Smooth{1, 1}, {}, {{Rational(1), kBrieskorn.with_term(Monomial{1, 1, 1})}}, 1},
                  WeightVector({3, 2, 1})};
    auto v = monotone_weight_compare(ri, rj, WeightVector({3, 2, 1}), 8);
    EXPECT_TRUE(v.hypotheses);
    EXPECT_TRUE(v.holds) << v.first_failure.value_or("");
    EXPECT_EQ(v.ct_i, Rational(5, 3));
    EXPECT_EQ(v.ct_j, Rational(5, 6));

    // a wrong computing weight is caught as a hypothesis failure, not a broken chain
    PairRecord bad = ri;
    bad.weight = WeightVector({1, 1, 1});
    auto u = monotone_weight_compare(bad, rj, WeightVector({1, 1, 1}), 8);
    EXPECT_FALSE(u.hypotheses);
    EXPECT_FALSE(u.holds);
}

TEST(ChainCheck, DetectsFirstIncrease) {
    EXPECT_FALSE(detect_increasing_chain({Rational(5, 6), Rational(4, 5), Rational(3, 4)}).has_value());
    auto c = detect_increasing_chain({Rational(5, 6), Rational(3, 4), Rational(4, 5)});
    ASSERT_TRUE(c);
    EXPECT_EQ(c->first, 1u);
    EXPECT_FALSE(detect_increasing_chain({}).has_value());
}

// ---------------------------------------------------------------- properties

TEST(PairProperty, EmptyBoundaryIsTheThreshold) {
    std::mt19937_64 rng(211);
    int checked = 0;
    for (auto fam : kAllFamilies)
        for (auto& p : testing_support::valid_grid(fam, 60)) {
            const std::int64_t cap = ambient_dim(p) == 5 ? 5 : 6;
            if (classified_weight(p).max_numerator() > cap) continue;
            for (int rep = 0; rep < 2; ++rep) {
                auto f = testing_support::random_support(rng, ambient_quotient(p), 4, 2);
                if (f.empty()) continue;
                PairInput in{p, {}, {{Rational(1), f}}, 1};
                EXPECT_EQ(pair_oracle(in, cap).value, brute_force_ct(p, f, cap).value) << f.str();
                ++checked;
            }
        }
    EXPECT_GE(checked, 100);
}

TEST(PairProperty, ComponentBoundsMatchFloors) {
    std::mt19937_64 rng(223);
    std::uniform_int_distribution<std::int64_t> num(1, 9), den(1, 12), qd(1, 6);
    for (int i = 0; i < 100; ++i) {
        std::vector<Rational> I{Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
        std::vector<Rational> J{Rational(num(rng), den(rng))};
        auto Is = make_dcc(I, false), Js = make_dcc(J, false);
        auto q = qd(rng);
        auto [b, s] = component_bounds(Is.floor, Js.floor, q);
        EXPECT_EQ(b * Is.floor, Rational(2));
        EXPECT_EQ(s * Js.floor, Rational(2 * q));
    }
}

TEST(PairProperty, ScalingTheBoundaryLowersTheValue) {
    // at a fixed weight, raising a boundary coefficient never raises the pair value
    std::mt19937_64 rng(227);
    for (int i = 0; i < 60; ++i) {
        auto f = testing_support::random_support(rng, CyclicQuotient::trivial(3), 5, 3);
        auto g = testing_support::random_support(rng, CyclicQuotient::trivial(3), 2, 1);
        PairInput lo{Smooth{1, 1}, {{Rational(1, 4), g}}, {{Rational(1), f}}, 1};
        PairInput hi{Smooth{1, 1}, {{Rational(3, 4), g}}, {{Rational(1), f}}, 1};
        WeightVector w({1 + i % 3, 1 + i % 4, 1 + i % 5});
        EXPECT_LE(pair_value_at(hi, w).value, pair_value_at(lo, w).value);
    }
}

TEST(PairProperty, MonotoneChainOnNestedRecords) {
    std::mt19937_64 rng(229);
    int checked = 0;
    for (int i = 0; i < 30; ++i) {
        auto f = testing_support::random_support(rng, CyclicQuotient::trivial(3), 4, 3);
        // f_j lies in the Newton polyhedron of f_i: extra terms are multiples of terms of f_i
        std::vector<Monomial> extra;
        for (auto& t : f.terms()) {
            std::vector<int> e = t.exponents();
            ++e[i % 3];
            extra.push_back(Monomial(e));
        }
        auto fj = f.merged(SeriesSupport(3, extra));
        PairInput in_i{Smooth{1, 1}, {}, {{Rational(1, 2), f}}, 1};
        PairInput in_j{Smooth{1, 1}, {}, {{Rational(2, 3), fj}}, 1};
        auto oi = pair_oracle(in_i, 6);
        auto v = monotone_weight_compare({in_i, oi.weight}, {in_j, oi.weight}, oi.weight, 6);
        ASSERT_TRUE(v.hypotheses) << v.first_failure.value_or("");
        EXPECT_TRUE(v.holds) << v.first_failure.value_or("");
        EXPECT_LE(v.ct_j, v.ct_i);
        ++checked;
    }
    EXPECT_EQ(checked, 30);
}

}  // namespace
