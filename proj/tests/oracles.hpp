#pragma once

// Brute-force reference implementations used only by tests. These stay
// independent of the library's optimized paths: plain loops, no bitsets,
// no closed forms.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "nlroth/core.hpp"
#include "nlroth/counting.hpp"
#include "nlroth/fourier.hpp"

namespace oracles {

using nlroth::BoundedFunction;
using nlroth::CountingParams;
using nlroth::IntegerSet;
using nlroth::cplx;

/// Triple loop over (x, y) with explicit membership tests.
inline std::int64_t naive_pair_count(const IntegerSet& a, const CountingParams& p) {
    std::int64_t total = 0;
    for (std::int64_t x = 1; x <= p.N; ++x) {
        for (std::int64_t y = 1; y <= p.M; ++y) {
            if (a.contains(x) && a.contains(x + y) && a.contains(x + p.q * y * y)) ++total;
        }
    }
    return total;
}

/// Naive counting operator, summing complex products directly.
inline cplx naive_count_operator(const CountingParams& p, const BoundedFunction& f0,
                                 const BoundedFunction& f1, const BoundedFunction& f2) {
    cplx acc{0.0, 0.0};
    for (std::int64_t x = 1; x <= p.N; ++x) {
        for (std::int64_t y = 1; y <= p.M; ++y) {
            acc += f0(x) * f1(x + y) * f2(x + p.q * y * y);
        }
    }
    return acc / (static_cast<double>(p.N) * static_cast<double>(p.M));
}

/// Exhaustive configuration scan over the full forward y range.
inline bool naive_is_free(const IntegerSet& a, std::int64_t q) {
    const std::int64_t n = a.length();
    for (std::int64_t x = 1; x <= n; ++x) {
        for (std::int64_t y = 1; x + q * y * y <= n; ++y) {
            if (a.contains(x) && a.contains(x + y) && a.contains(x + q * y * y)) return false;
        }
    }
    return true;
}

/// Ordered 6-tuple count by scanning five entries and solving for the sixth.
inline std::int64_t naive_sixth_moment(std::int64_t n) {
    std::int64_t total = 0;
    for (std::int64_t a = 1; a <= n; ++a)
        for (std::int64_t b = 1; b <= n; ++b)
            for (std::int64_t c = 1; c <= n; ++c)
                for (std::int64_t d = 1; d <= n; ++d)
                    for (std::int64_t e = 1; e <= n; ++e) {
                        const std::int64_t rhs = a * a + b * b + c * c - d * d - e * e;
                        if (rhs < 1) continue;
                        const auto f = static_cast<std::int64_t>(std::llround(std::sqrt(
                            static_cast<double>(rhs))));
                        for (std::int64_t g = std::max<std::int64_t>(1, f - 1); g <= f + 1; ++g) {
                            if (g >= 1 && g <= n && g * g == rhs) ++total;
                        }
                    }
    return total;
}

/// Exhaustive ||q alpha|| minimizer over q <= q_max (smallest q on ties).
inline std::pair<std::int64_t, double> naive_best_rational(const nlroth::Frequency& alpha,
                                                           std::int64_t q_max) {
    std::int64_t best_q = 1;
    double best_d = alpha.distance_times(1);
    for (std::int64_t q = 2; q <= q_max; ++q) {
        const double d = alpha.distance_times(q);
        if (d < best_d) {
            best_d = d;
            best_q = q;
        }
    }
    return {best_q, best_d};
}

/// Best density over progressions with the given step and length inside [N].
inline double progression_class_record(const IntegerSet& a, std::int64_t step,
                                       std::int64_t length) {
    double best = 0.0;
    const std::int64_t n = a.length();
    for (std::int64_t first = 1; first + step * (length - 1) <= n; ++first) {
        std::int64_t hits = 0;
        for (std::int64_t k = 0; k < length; ++k) {
            if (a.contains(first + step * k)) ++hits;
        }
        best = std::max(best, static_cast<double>(hits) / static_cast<double>(length));
    }
    return best;
}

inline BoundedFunction random_pm1(std::int64_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<cplx> vals(static_cast<std::size_t>(n));
    for (auto& v : vals) v = cplx{coin(rng) ? 1.0 : -1.0, 0.0};
    return BoundedFunction(std::move(vals), 1.0);
}

inline BoundedFunction random_unit_disc(std::int64_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<cplx> vals(static_cast<std::size_t>(n));
    for (auto& v : vals) {
        const double r = std::sqrt(unif(rng));
        const double t = 2.0 * 3.14159265358979323846 * unif(rng);
        v = cplx{r * std::cos(t), r * std::sin(t)};
    }
    return BoundedFunction(std::move(vals), 1.0);
}

inline IntegerSet random_set(std::int64_t n, double density, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    IntegerSet s(n);
    for (std::int64_t x = 1; x <= n; ++x) {
        if (unif(rng) < density) s.insert(x);
    }
    return s;
}

}  // namespace oracles
