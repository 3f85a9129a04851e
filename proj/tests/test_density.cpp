#include "support/oracles.hpp"

#include <twistlab/density.hpp>
#include <twistlab/serialize.hpp>

#include <gtest/gtest.h>

using namespace twistlab;

namespace {

ErrorCode code_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvariantViolation;
}

const IntPolynomial kQuarticPlusOne{1, 0, 0, 0, 1};

std::vector<std::uint64_t> trial_division_primes(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t k = 2; k <= n; ++k) {
        bool prime = true;
        for (std::uint64_t q = 2; q * q <= k && prime; ++q)
            prime = k % q != 0;
        if (prime)
            out.push_back(k);
    }
    return out;
}

} // namespace

TEST(Primes, SegmentedSieveMatchesTrialDivision)
{
    EXPECT_EQ(primes_up_to(100000), trial_division_primes(100000));
    EXPECT_EQ(primes_up_to(2), (std::vector<std::uint64_t>{2}));
    EXPECT_TRUE(primes_up_to(1).empty());
    const auto window = primes_in_range(1000000, 1001000);
    for (auto p : window)
        EXPECT_TRUE(is_prime_u64(p));
    EXPECT_EQ(window.size(), 75u);
}

TEST(Sieve, QuadraticSmallBound)
{
    const auto r = sieve_s_f(IntPolynomial{1, 0, 1}, 30, {1, true, true});
    EXPECT_EQ(r.primes_total, 10u);
    EXPECT_EQ(r.excluded, 1u);
    EXPECT_EQ(r.primes_scanned, 9u);
    EXPECT_EQ(r.members, (std::vector<std::uint64_t>{3, 7, 11, 19, 23}));
    EXPECT_TRUE(r.bad_primes.empty());
    EXPECT_EQ(r.rows.size(), 9u);
}

TEST(Sieve, LinearPolynomialHasEmptySet)
{
    const auto r = sieve_s_f(IntPolynomial{0, 1}, 1000);
    EXPECT_EQ(r.s_f_members, 0u);
    EXPECT_DOUBLE_EQ(r.density_estimate(), 0.0);
}

TEST(Sieve, MembershipMatchesExhaustiveEvaluation)
{
    for (const IntPolynomial& f : {kQuarticPlusOne, IntPolynomial{1, 1, 0, 0, 1}, IntPolynomial{2, 0, -3, 1},
                                   IntPolynomial{-5, 0, 0, 0, 0, 0, 3}}) {
        const auto r = sieve_s_f(f, 1000, {1, true, true});
        std::vector<std::uint64_t> expected;
        std::vector<std::uint64_t> bad;
        for (std::uint64_t p : trial_division_primes(1000)) {
            if (p == 2)
                continue;
            const FpPolynomial fbar = reduce_mod_p(f, p);
            if (fbar.degree() != f.degree() || discriminant(f) % p == 0) {
                bad.push_back(p);
                continue;
            }
            if (oracle::exhaustive_roots(f, p).empty())
                expected.push_back(p);
        }
        EXPECT_EQ(r.members, expected) << f;
        EXPECT_EQ(r.bad_primes, bad) << f;
    }
}

TEST(Sieve, WorkerSplitDoesNotChangeTheReport)
{
    const IntPolynomial f{1, 1, 0, 0, 1};
    const auto one = sieve_s_f(f, 50000, {1, true, true});
    for (unsigned w : {2u, 3u, 7u}) {
        const auto many = sieve_s_f(f, 50000, {w, true, true});
        EXPECT_EQ(many.members, one.members);
        EXPECT_EQ(many.bad_primes, one.bad_primes);
        EXPECT_EQ(many.shape_histogram, one.shape_histogram);
        EXPECT_EQ(sieve_csv(many), sieve_csv(one));
        EXPECT_EQ(to_json(many).dump(), to_json(one).dump());
    }
}

TEST(Sieve, ShapeHistogramAccountsForEveryScannedPrime)
{
    const auto r = sieve_s_f(IntPolynomial{1, 1, 0, 0, 1}, 20000);
    std::uint64_t total = 0, rootless = 0;
    for (const auto& [shape, count] : r.shape_histogram) {
        EXPECT_EQ(std::accumulate(shape.begin(), shape.end(), 0), 4);
        total += count;
        if (std::find(shape.begin(), shape.end(), 1) == shape.end())
            rootless += count;
    }
    EXPECT_EQ(total, r.primes_scanned);
    EXPECT_EQ(rootless, r.s_f_members);
    double sum = 0;
    for (const auto& sf : shape_frequencies(r))
        sum += sf.frequency;
    EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Sieve, WilsonIntervalContainsEstimate)
{
    const auto r = sieve_s_f(kQuarticPlusOne, 10000);
    const auto [lo, hi] = r.wilson_interval();
    EXPECT_LE(lo, r.density_estimate());
    EXPECT_GE(hi, r.density_estimate());
    EXPECT_LT(hi - lo, 0.06);
}

TEST(Sieve, Errors)
{
    EXPECT_EQ(code_of([] { sieve_s_f(kQuarticPlusOne, 2); }), ErrorCode::BoundTooSmall);
    EXPECT_EQ(code_of([] { sieve_s_f(kQuarticPlusOne, 1ull << 33); }), ErrorCode::BoundTooSmall);
    EXPECT_EQ(code_of([] { sieve_s_f(IntPolynomial{7}, 100); }), ErrorCode::DegreeTooSmall);
    EXPECT_EQ(code_of([] { sieve_s_f(IntPolynomial{1, 0, 2, 0, 1}, 100); }), ErrorCode::NotSquarefree);
}

TEST(Derangements, S4Fraction)
{
    EXPECT_EQ(oracle::derangement_count(4), (std::pair<int, int>{9, 24}));
    EXPECT_EQ(oracle::derangement_count(3), (std::pair<int, int>{2, 6}));
}

TEST(SearchTwists, QuarticPlusOneAssumedIrreducible)
{
    const auto r = search_insoluble_twists(kQuarticPlusOne, 200, true);
    EXPECT_EQ(r.irreducibility.status, Irreducibility::Asserted);
    EXPECT_EQ(r.falsifications, 0u);
    EXPECT_EQ(r.inconclusive, 0u);
    EXPECT_EQ(r.confirmed, r.entries.size());
    for (const auto& e : r.entries) {
        EXPECT_NE(e.p % 8, 1u);
        EXPECT_EQ(e.agreement, Agreement::Confirmed);
    }
    EXPECT_EQ(r.entries.size(), 37u);
}

TEST(SearchTwists, WithoutCertificateNothingIsPredicted)
{
    const auto r = search_insoluble_twists(kQuarticPlusOne, 100);
    EXPECT_EQ(r.irreducibility.status, Irreducibility::Unknown);
    EXPECT_EQ(r.confirmed, 0u);
    for (const auto& e : r.entries) {
        EXPECT_EQ(e.agreement, Agreement::Unpredicted);
        EXPECT_EQ(e.verdict.status, Solubility::Insoluble);
    }
}

TEST(SearchTwists, CertifiedQuartic)
{
    const auto r = search_insoluble_twists(IntPolynomial{1, 1, 0, 0, 1}, 500);
    EXPECT_EQ(r.irreducibility.status, Irreducibility::Certified);
    EXPECT_GT(r.confirmed, 20u);
    EXPECT_EQ(r.falsifications, 0u);
    const auto json = to_json(r);
    EXPECT_EQ(json["confirmed"].get<std::size_t>(), r.confirmed);
}

TEST(SearchTwists, Errors)
{
    EXPECT_EQ(code_of([] { search_insoluble_twists(IntPolynomial{1, 0, 0, 1}, 100); }),
              ErrorCode::OddDegreeUnsupported);
    EXPECT_EQ(code_of([] { search_insoluble_twists(kQuarticPlusOne, 2); }), ErrorCode::BoundTooSmall);
}

TEST(Serialize, TwistRoundTrip)
{
    const auto c = make_twist(make_curve(IntPolynomial{1, -3, 0, 7, 0, 0, 2}), -30);
    EXPECT_EQ(twist_from_json(to_json(c)), c);
    EXPECT_EQ(polynomial_from_json(polynomial_to_json(c.f())), c.f());
}
