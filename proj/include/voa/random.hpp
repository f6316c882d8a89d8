#pragma once

#include <cstdint>
#include <random>

#include "pbw.hpp"

namespace voa {

// Seeded RNG for the property suites. Draws go through modulo mapping rather
// than std distributions so a seed reproduces the same stream everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    long uniform(long lo, long hi) {  // inclusive bounds
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(next() % span);
    }

    Rational small_rational() {
        long num = 0;
        while (num == 0) num = uniform(-4, 4);
        return rat(num, uniform(1, 3));
    }

private:
    std::mt19937_64 eng_;
};

inline PBWMonomial random_monomial(const LieAlgebraData& g, Rng& rng, long degree) {
    std::vector<Factor> fs;
    long remaining = degree;
    while (remaining > 0) {
        const long n = rng.uniform(1, remaining);
        const int cls = static_cast<int>(rng.uniform(0, 2));
        const int idx = static_cast<int>(rng.uniform(0, (cls == GEN_H ? g.rank : g.num_positive()) - 1));
        fs.push_back({cls, idx, static_cast<int>(-n), 1});
        remaining -= n;
    }
    return PBWMonomial::from_factors(std::move(fs));
}

inline VAVector random_vector(const LieAlgebraData& g, Rng& rng, const Rational& k, long max_degree,
                              long max_terms = 3) {
    VAVector v = VAVector::zero(k);
    const long nterms = rng.uniform(1, max_terms);
    for (long t = 0; t < nterms; ++t)
        v.add_term(random_monomial(g, rng, rng.uniform(0, max_degree)), rng.small_rational());
    if (v.is_zero()) v.add_term(PBWMonomial::one(), Rational(1));
    return v;
}

}  // namespace voa
