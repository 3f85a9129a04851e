// Library walkthrough on y^2 = x^4 + 1: prime classes, the twisted fiber at
// p = 3, and the local solubility of 3y^2 = x^4 + 1.
#include <twistlab/twistlab.hpp>

#include <iostream>

int main()
{
    using namespace twistlab;

    const auto curve = make_curve(parse_polynomial("x^4+1"));
    std::cout << "genus " << curve.genus() << ", disc " << discriminant(curve.f()) << "\n";

    for (std::uint64_t p : {3u, 5u, 17u}) {
        const auto cls = classify_prime(curve, p);
        std::cout << "p=" << p << ": " << to_string(cls.kind) << "\n";
    }

    const auto twist = make_twist(curve, 3);
    const auto cls = classify_prime(twist, 3);
    const auto fiber = descend_components(twist_fiber_model(twist.genus()), *cls.shape, cls.infinity_ramified());
    std::cout << "fiber at 3: " << type_label(fiber, twist.genus()) << ", rational smooth locus "
              << (rational_smooth_locus_nonempty(fiber) ? "nonempty" : "empty") << "\n";

    const auto verdict = is_locally_soluble(twist, 3);
    std::cout << "3y^2 = x^4 + 1 over Q_3: " << to_string(verdict.status) << "\n";

    const auto report = sieve_s_f(curve.f(), 100000);
    std::cout << "density of no-root primes up to 10^5: " << report.density_estimate() << "\n";
}
