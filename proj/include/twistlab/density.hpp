#ifndef TWISTLAB_DENSITY_HPP
#define TWISTLAB_DENSITY_HPP

#include <twistlab/curves.hpp>
#include <twistlab/error.hpp>
#include <twistlab/integer.hpp>
#include <twistlab/localsol.hpp>
#include <twistlab/poly.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string_view>
#include <thread>
#include <vector>

namespace twistlab {

// ---------------------------------------------------------------------------
// Prime enumeration
// ---------------------------------------------------------------------------

/// Primes p with lo <= p < hi, by a segmented sieve of Eratosthenes.
inline std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi)
{
    std::vector<std::uint64_t> out;
    if (hi <= 2 || lo >= hi)
        return out;
    lo = std::max<std::uint64_t>(lo, 2);
    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
    std::vector<bool> small(root + 1, true);
    std::vector<std::uint64_t> base;
    for (std::uint64_t i = 2; i <= root; ++i) {
        if (!small[i])
            continue;
        base.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += i)
            small[j] = false;
    }
    constexpr std::uint64_t kSegment = 1 << 18;
    std::vector<bool> mark;
    for (std::uint64_t start = lo; start < hi; start += kSegment) {
        const std::uint64_t end = std::min(hi, start + kSegment);
        mark.assign(end - start, true);
        for (std::uint64_t q : base) {
            if (q * q >= end)
                break;
            std::uint64_t first = std::max(q * q, (start + q - 1) / q * q);
            for (std::uint64_t j = first; j < end; j += q)
                mark[j - start] = false;
        }
        for (std::uint64_t i = start; i < end; ++i) {
            if (mark[i - start])
                out.push_back(i);
        }
    }
    return out;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t n) { return primes_in_range(2, n + 1); }

// ---------------------------------------------------------------------------
// S_f sieve
// ---------------------------------------------------------------------------

struct SieveRow {
    std::uint64_t p = 0;
    FactorShape shape;
    bool in_s_f = false;
};

struct SieveOptions {
    unsigned workers = 1;
    bool keep_members = false;
    bool keep_rows = false;
};

struct SieveReport {
    std::uint64_t bound = 0;
    std::uint64_t primes_total = 0;    // pi(bound)
    std::uint64_t excluded = 0;        // the prime 2
    std::uint64_t primes_scanned = 0;  // odd good primes
    std::uint64_t s_f_members = 0;
    std::vector<std::uint64_t> members;  // when requested
    std::vector<std::uint64_t> bad_primes;
    std::map<FactorShape, std::uint64_t> shape_histogram;
    std::vector<SieveRow> rows;          // when requested

    double density_estimate() const
    {
        return primes_scanned ? static_cast<double>(s_f_members) / static_cast<double>(primes_scanned) : 0.0;
    }

    /// 95% Wilson score interval for the density.
    std::pair<double, double> wilson_interval() const
    {
        if (primes_scanned == 0)
            return {0.0, 1.0};
        constexpr double z = 1.959963984540054;
        const double n = static_cast<double>(primes_scanned);
        const double phat = density_estimate();
        const double denom = 1.0 + z * z / n;
        const double center = (phat + z * z / (2 * n)) / denom;
        const double half = z / denom * std::sqrt(phat * (1 - phat) / n + z * z / (4 * n * n));
        return {std::max(0.0, center - half), std::min(1.0, center + half)};
    }

    void merge(const SieveReport& other)
    {
        primes_total += other.primes_total;
        excluded += other.excluded;
        primes_scanned += other.primes_scanned;
        s_f_members += other.s_f_members;
        members.insert(members.end(), other.members.begin(), other.members.end());
        bad_primes.insert(bad_primes.end(), other.bad_primes.begin(), other.bad_primes.end());
        rows.insert(rows.end(), other.rows.begin(), other.rows.end());
        for (const auto& [shape, count] : other.shape_histogram)
            shape_histogram[shape] += count;
    }
};

namespace detail {

inline void validate_sieve_input(const IntPolynomial& f)
{
    if (f.is_zero() || f.degree() < 1)
        throw Error(ErrorCode::DegreeTooSmall, "sieve needs deg f >= 1");
    if (f.degree() >= 2 && discriminant(f) == 0)
        throw Error(ErrorCode::NotSquarefree, f.to_string() + " is not squarefree");
}

inline SieveReport sieve_range(const IntPolynomial& f, std::uint64_t lo, std::uint64_t hi, const SieveOptions& opts)
{
    SieveReport r;
    const std::size_t n = f.degree().value();
    for (std::uint64_t p : primes_in_range(lo, hi)) {
        ++r.primes_total;
        if (p == 2) {
            ++r.excluded;
            continue;
        }
        const FpPolynomial fbar = reduce_mod_p(f, p);
        if (fbar.degree() != n || !is_squarefree(fbar)) {
            r.bad_primes.push_back(p);
            continue;
        }
        FactorShape shape = factorization_shape(fbar);
        const bool no_root = std::find(shape.begin(), shape.end(), 1) == shape.end();
        ++r.primes_scanned;
        if (no_root) {
            ++r.s_f_members;
            if (opts.keep_members)
                r.members.push_back(p);
        }
        if (opts.keep_rows)
            r.rows.push_back(SieveRow{p, shape, no_root});
        ++r.shape_histogram[std::move(shape)];
    }
    return r;
}

} // namespace detail

/// Scans odd primes p <= bound at which f stays squarefree of full degree and
/// counts those where f has no root mod p. Workers split [2, bound] into
/// contiguous ranges; the merged report does not depend on the split.
inline SieveReport sieve_s_f(const IntPolynomial& f, std::uint64_t bound, const SieveOptions& opts = {})
{
    if (bound < 3)
        throw Error(ErrorCode::BoundTooSmall, "bound must be at least 3");
    if (bound > kMaxFieldPrime)
        throw Error(ErrorCode::BoundTooSmall, "bound exceeds 2^32");
    detail::validate_sieve_input(f);

    const unsigned workers = std::max(1u, opts.workers);
    const std::uint64_t span = bound + 1 - 2;
    std::vector<std::uint64_t> cuts{2};
    for (unsigned w = 1; w < workers; ++w)
        cuts.push_back(2 + span * w / workers);
    cuts.push_back(bound + 1);

    std::vector<SieveReport> parts(workers);
    if (workers == 1) {
        parts[0] = detail::sieve_range(f, cuts[0], cuts[1], opts);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w)
            threads.emplace_back([&, w] { parts[w] = detail::sieve_range(f, cuts[w], cuts[w + 1], opts); });
        for (auto& t : threads)
            t.join();
    }
    SieveReport report;
    report.bound = bound;
    for (const auto& part : parts)
        report.merge(part);
    return report;
}

struct ShapeFrequency {
    FactorShape shape;
    std::uint64_t count = 0;
    double frequency = 0.0;
};

inline std::vector<ShapeFrequency> shape_frequencies(const SieveReport& report)
{
    std::vector<ShapeFrequency> out;
    for (const auto& [shape, count] : report.shape_histogram) {
        out.push_back(ShapeFrequency{shape, count,
                                     report.primes_scanned ? static_cast<double>(count) / report.primes_scanned : 0.0});
    }
    return out;
}

inline std::vector<ShapeFrequency> shape_distribution(const IntPolynomial& f, std::uint64_t bound,
                                                      const SieveOptions& opts = {})
{
    return shape_frequencies(sieve_s_f(f, bound, opts));
}

// ---------------------------------------------------------------------------
// Prime twists that are not locally soluble
// ---------------------------------------------------------------------------

enum class Agreement { Confirmed, Falsification, Inconclusive, Unpredicted };

constexpr std::string_view to_string(Agreement a) noexcept
{
    switch (a) {
    case Agreement::Confirmed: return "CONFIRMED";
    case Agreement::Falsification: return "FALSIFICATION";
    case Agreement::Inconclusive: return "INCONCLUSIVE";
    case Agreement::Unpredicted: return "UNPREDICTED";
    }
    return "?";
}

struct TwistCheck {
    std::uint64_t p = 0;
    SolubilityVerdict verdict;
    Prediction prediction = Prediction::NoPrediction;
    Agreement agreement = Agreement::Unpredicted;
};

struct TwistSearchReport {
    std::uint64_t bound = 0;
    IrreducibilityCertificate irreducibility;
    std::vector<TwistCheck> entries;
    std::size_t confirmed = 0;
    std::size_t falsifications = 0;
    std::size_t inconclusive = 0;
};

/// For each good odd p <= bound with no F_p-rational ramification point, twists
/// by p and compares the one-sided prediction with the residue-class oracle.
inline TwistSearchReport search_insoluble_twists(const IntPolynomial& f, std::uint64_t bound,
                                                 bool assume_irreducible = false)
{
    if (f.is_zero() || f.degree().value() % 2 != 0)
        throw Error(ErrorCode::OddDegreeUnsupported, "search needs f of even degree");
    if (bound < 3)
        throw Error(ErrorCode::BoundTooSmall, "bound must be at least 3");
    if (bound > kMaxFieldPrime)
        throw Error(ErrorCode::BoundTooSmall, "bound exceeds 2^32");
    const HyperellipticTwist curve = make_curve(f);

    TwistSearchReport report;
    report.bound = bound;
    report.irreducibility = certify_irreducible(f);
    if (report.irreducibility.status == Irreducibility::Unknown && assume_irreducible)
        report.irreducibility.status = Irreducibility::Asserted;

    for (std::uint64_t p : primes_up_to(bound)) {
        if (p == 2 || classify_prime(curve, p).kind != PrimeKind::GoodNoRoot)
            continue;
        const HyperellipticTwist twist = make_twist(curve, Integer(p));
        TwistCheck check;
        check.p = p;
        check.prediction = predict_insolubility(twist, p, report.irreducibility.status);
        check.verdict = is_locally_soluble(twist, p);
        if (check.prediction == Prediction::NoPrediction) {
            check.agreement = Agreement::Unpredicted;
        } else if (check.verdict.status == Solubility::Insoluble) {
            check.agreement = Agreement::Confirmed;
            ++report.confirmed;
        } else if (check.verdict.status == Solubility::Soluble) {
            check.agreement = Agreement::Falsification;
            ++report.falsifications;
        } else {
            check.agreement = Agreement::Inconclusive;
            ++report.inconclusive;
        }
        report.entries.push_back(std::move(check));
    }
    return report;
}

} // namespace twistlab

#endif // TWISTLAB_DENSITY_HPP
