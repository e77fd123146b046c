#pragma once

#include <cstdint>
#include <optional>

#include "hslie/catalog4d.hpp"
#include "hslie/report.hpp"

namespace hslie {

/// Tiny deterministic generator for reproducible randomized checks.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next() {
        s_ ^= s_ << 13;
        s_ ^= s_ >> 7;
        s_ ^= s_ << 17;
        return s_;
    }
    long pick(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Rational rational(long max_num, long max_den) {
        return Rational(pick(-max_num, max_num), pick(1, max_den));
    }
    Rational nonzero_rational(long max_num, long max_den) {
        for (;;) {
            Rational r = rational(max_num, max_den);
            if (!r.is_zero()) return r;
        }
    }

private:
    std::uint64_t s_;
};

/// One randomized matched-pair-generated structure for the closedness
/// battery: factors are flat torsion-free (not necessarily form-parallel),
/// the gluing satisfies the matched-pair identities, and the factor forms are
/// phi-compatible by construction. Returns nullopt when the drawn data fails
/// the matched-pair identities (the caller redraws).
struct BatterySample {
    BicrossResult result;
    bool parallel_u = false;  // whether the drawn u-connection preserves omega
    bool parallel_v = false;
};

std::optional<BatterySample> battery_sample(Rng& rng);

/// The full reproduction battery behind the `paper-suite` subcommand: one
/// entry per catalog claim, order-stable, deterministic.
Report catalog_suite(std::size_t workers = 0);

}  // namespace hslie
