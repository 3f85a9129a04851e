// twistlab: command-line front end.
//
//   twistlab analyze       --f "x^4+1"
//   twistlab fiber         --f "x^4+1" --p 3 --d 3 [--format json|dot|text]
//   twistlab solubility    --f "x^4+1" --d 3 --p 3 [--max-depth N]
//   twistlab sieve         --f "x^4+1" --bound 1000000 [--format json|csv|text]
//   twistlab search-twists --f "x^4+1" --bound 200 [--assume-irreducible]
//
// Exit status: 0 ok, 2 parse/validation, 3 domain precondition,
// 4 internal invariant violation, 5 falsification detected.

#include <twistlab/serialize.hpp>
#include <twistlab/twistlab.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

namespace {

using namespace twistlab;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitInternal = 4;
constexpr int kExitFalsified = 5;

struct RunConfig {
    std::string command;
    std::string polynomial;
    std::string poly_file;
    std::string d = "1";
    std::uint64_t p = 0;
    std::uint64_t bound = 0;
    std::optional<int> max_depth;
    std::string format = "json";
    std::string out;
    bool assume_irreducible = false;
};

IntPolynomial load_polynomial(const RunConfig& cfg)
{
    if (!cfg.poly_file.empty()) {
        std::ifstream in(cfg.poly_file);
        if (!in)
            throw Error(ErrorCode::ParseError, "cannot read " + cfg.poly_file);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_polynomial(ss.str());
    }
    if (cfg.polynomial.empty())
        throw Error(ErrorCode::ParseError, "no polynomial given (--f or --f-file)");
    return parse_polynomial(cfg.polynomial);
}

unsigned sieve_workers()
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("TWISTLAB_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap >= 1)
                hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "TWISTLAB_THREADS must be a positive integer");
        }
    }
    return hw;
}

void emit(const RunConfig& cfg, const std::string& text)
{
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out);
    if (!out)
        throw Error(ErrorCode::ParseError, "cannot write " + cfg.out);
    out << text;
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed)
{
    for (const char* f : allowed) {
        if (cfg.format == f)
            return;
    }
    throw Error(ErrorCode::ParseError, "format '" + cfg.format + "' not supported by " + cfg.command);
}

int cmd_analyze(const RunConfig& cfg)
{
    require_format(cfg, {"json"});
    const HyperellipticTwist curve = make_curve(load_polynomial(cfg));
    const IrreducibilityCertificate cert = certify_irreducible(curve.f());
    json candidates = json::array();
    json bad = json::array();
    for (const auto& [q, kind] : candidate_bad_primes(curve)) {
        candidates.push_back({{"p", q.str()}, {"kind", kind ? std::string(to_string(*kind)) : "UNRESOLVED"}});
        if (kind == PrimeKind::Bad)
            bad.push_back(q.str());
    }
    json j{{"f", polynomial_to_json(curve.f())},
           {"polynomial", curve.f().to_string()},
           {"degree", curve.degree()},
           {"genus", curve.genus()},
           {"disc", discriminant(curve.f()).str()},
           {"leading_coefficient", curve.f().leading().str()},
           {"bad_odd_primes", bad},
           {"candidate_primes", candidates},
           {"irreducible", std::string(to_string(cert.status))},
           {"irreducibility_prime", cert.prime ? json(std::to_string(*cert.prime)) : json(nullptr)}};
    emit(cfg, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_fiber(const RunConfig& cfg)
{
    require_format(cfg, {"json", "dot", "text"});
    const HyperellipticTwist curve = make_twist(make_curve(load_polynomial(cfg)), parse_integer(cfg.d));
    const PrimeClassification cls = classify_prime(curve, cfg.p);
    if (!is_good(cls.kind))
        throw Error(ErrorCode::BadPrime, std::to_string(cfg.p) + " is " + std::string(to_string(cls.kind)));

    const bool twisted = curve.d() % cfg.p == 0;
    FiberGraph fiber = twisted ? descend_components(twist_fiber_model(curve.genus()), *cls.shape,
                                                    cls.infinity_ramified())
                               : good_fiber(curve.genus());
    const FiberValidation check = validate(fiber);
    if (!check.ok())
        throw Error(ErrorCode::InvariantViolation, "constructed fiber fails its invariants");
    const std::string label = type_label(fiber, curve.genus());
    const bool smooth_locus = rational_smooth_locus_nonempty(fiber);

    if (cfg.format == "dot") {
        emit(cfg, to_dot(fiber, label));
        return kExitOk;
    }
    if (cfg.format == "text") {
        std::ostringstream os;
        os << "type " << label << ", " << fiber.size() << " components, rational smooth locus "
           << (smooth_locus ? "nonempty" : "empty") << "\n";
        for (const auto& c : fiber.components)
            os << "  " << c.name << ": mult " << c.multiplicity << ", self-int " << c.self_intersection << ", genus "
               << c.genus << ", orbit " << c.orbit << "\n";
        emit(cfg, os.str());
        return kExitOk;
    }
    json j{{"curve", to_json(curve)},
           {"p", std::to_string(cfg.p)},
           {"classification", to_json(cls)},
           {"type", label},
           {"rational_smooth_locus", smooth_locus},
           {"arithmetic_genus", fiber_arithmetic_genus(fiber)},
           {"fiber", to_json(fiber)},
           {"validation",
            {{"fiber_identity", check.fiber_identity},
             {"negative_semidefinite", check.negative_semidefinite},
             {"radical_dimension", check.radical_dim},
             {"minimal", check.minimal}}}};
    emit(cfg, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_solubility(const RunConfig& cfg)
{
    require_format(cfg, {"json"});
    const HyperellipticTwist curve = make_twist(make_curve(load_polynomial(cfg)), parse_integer(cfg.d));
    const SolubilityVerdict v = cfg.max_depth ? is_locally_soluble(curve, cfg.p, *cfg.max_depth)
                                                   : is_locally_soluble(curve, cfg.p);
    const bool verified = !v.witness || verify_witness(curve, cfg.p, *v.witness);
    const Irreducibility irr = cfg.assume_irreducible ? Irreducibility::Asserted
                                                      : certify_irreducible(curve.f()).status;
    json j = to_json(v, predict_insolubility(curve, cfg.p, irr));
    j["curve"] = to_json(curve);
    j["p"] = std::to_string(cfg.p);
    j["witness_verified"] = verified;
    emit(cfg, j.dump(2) + "\n");
    if (!verified)
        throw Error(ErrorCode::InvariantViolation, "emitted witness failed re-verification");
    return kExitOk;
}

int cmd_sieve(const RunConfig& cfg)
{
    require_format(cfg, {"json", "csv", "text"});
    SieveOptions opts;
    opts.workers = sieve_workers();
    opts.keep_rows = cfg.format == "csv";
    const SieveReport r = sieve_s_f(load_polynomial(cfg), cfg.bound, opts);
    if (cfg.format == "csv") {
        emit(cfg, sieve_csv(r));
    } else if (cfg.format == "text") {
        const auto [lo, hi] = r.wilson_interval();
        std::ostringstream os;
        os << "primes scanned " << r.primes_scanned << ", no-root primes " << r.s_f_members << ", density "
           << r.density_estimate() << " (95% [" << lo << ", " << hi << "])\n";
        for (const auto& sf : shape_frequencies(r))
            os << "  {" << shape_key(sf.shape) << "}: " << sf.count << " (" << sf.frequency << ")\n";
        emit(cfg, os.str());
    } else {
        emit(cfg, to_json(r).dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_search_twists(const RunConfig& cfg)
{
    require_format(cfg, {"json", "text"});
    const TwistSearchReport r = search_insoluble_twists(load_polynomial(cfg), cfg.bound, cfg.assume_irreducible);
    if (cfg.format == "text") {
        std::ostringstream os;
        os << "irreducibility " << to_string(r.irreducibility.status) << "\n";
        for (const auto& e : r.entries)
            os << "  p=" << e.p << "  " << to_string(e.verdict.status) << "  " << to_string(e.prediction) << "  "
               << to_string(e.agreement) << "\n";
        os << r.confirmed << " confirmed, " << r.falsifications << " falsifications, " << r.inconclusive
           << " inconclusive\n";
        emit(cfg, os.str());
    } else {
        emit(cfg, to_json(r).dump(2) + "\n");
    }
    if (r.falsifications > 0) {
        std::cerr << "FALSIFICATION: " << r.falsifications << " predicted-insoluble twists have local points\n";
        return kExitFalsified;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"twistlab: quadratic twists of hyperelliptic curves"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_poly = [&](CLI::App* sub) {
        auto* f = sub->add_option("--f", cfg.polynomial, "polynomial, e.g. \"x^4+1\" or \"1,0,0,0,1\"");
        auto* file = sub->add_option("--f-file", cfg.poly_file, "read the polynomial from a file");
        f->excludes(file);
        sub->add_option("--format", cfg.format, "output format (json|csv|dot|text)");
        sub->add_option("--out", cfg.out, "write output to a file instead of stdout");
    };

    auto* analyze = app.add_subcommand("analyze", "genus, discriminant, bad primes, irreducibility");
    add_poly(analyze);

    auto* fiber = app.add_subcommand("fiber", "special fiber of the minimal regular model at p");
    add_poly(fiber);
    fiber->add_option("--p", cfg.p, "odd good prime")->required();
    fiber->add_option("--d", cfg.d, "twist parameter");

    auto* sol = app.add_subcommand("solubility", "decide whether d*y^2 = f(x) has a Q_p-point");
    add_poly(sol);
    sol->add_option("--p", cfg.p, "odd prime")->required();
    sol->add_option("--d", cfg.d, "twist parameter");
    sol->add_option("--max-depth", cfg.max_depth, "recursion cap (default v_p(disc) + 2g + 4)");
    sol->add_flag("--assume-irreducible", cfg.assume_irreducible, "treat f as irreducible over Q");

    auto* sieve = app.add_subcommand("sieve", "density of primes where f has no root");
    add_poly(sieve);
    sieve->add_option("--bound", cfg.bound, "scan primes up to this bound")->required();

    auto* search = app.add_subcommand("search-twists", "prime twists without Q_p-points");
    add_poly(search);
    search->add_option("--bound", cfg.bound, "scan primes up to this bound")->required();
    search->add_flag("--assume-irreducible", cfg.assume_irreducible, "treat f as irreducible over Q");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (analyze->parsed()) {
            cfg.command = "analyze";
            return cmd_analyze(cfg);
        }
        if (fiber->parsed()) {
            cfg.command = "fiber";
            return cmd_fiber(cfg);
        }
        if (sol->parsed()) {
            cfg.command = "solubility";
            return cmd_solubility(cfg);
        }
        if (sieve->parsed()) {
            cfg.command = "sieve";
            return cmd_sieve(cfg);
        }
        cfg.command = "search-twists";
        return cmd_search_twists(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (category(e.code())) {
        case ErrorCategory::Validation: return kExitValidation;
        case ErrorCategory::Precondition: return kExitPrecondition;
        case ErrorCategory::Internal: return kExitInternal;
        }
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
