#include "nlroth/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

namespace nlroth {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr double two_pi = 2.0 * std::numbers::pi;

/// Calls fn(x, e(alpha x)) for x = 1..n, using an incremental rotation with
/// periodic exact resynchronisation.
template <typename Fn>
void phase_scan(const Frequency& alpha, std::int64_t n, Fn&& fn) {
    constexpr std::int64_t resync = 256;
    const cplx rot = alpha.phase(1);
    cplx p{1.0, 0.0};
    for (std::int64_t x = 1; x <= n; ++x) {
        if ((x - 1) % resync == 0) {
            p = alpha.phase(x);
        } else {
            p *= rot;
        }
        fn(x, p);
    }
}

std::int64_t floor_sqrt(std::int64_t n) { return integer_root(n, 2); }

}  // namespace

cplx unit_phase(double t) {
    const double a = two_pi * t;
    return cplx{std::cos(a), std::sin(a)};
}

double frac_mul(double alpha, std::int64_t k) {
    if (k < 0) {
        const double r = frac_mul(alpha, -k);
        return r == 0.0 ? 0.0 : 1.0 - r;
    }
    if (alpha == 0.0 || k == 0) return 0.0;
    if (alpha < 0.0) {
        const double r = frac_mul(-alpha, k);
        return r == 0.0 ? 0.0 : 1.0 - r;
    }
    int exp = 0;
    const double mant = std::frexp(alpha, &exp);
    const auto m = static_cast<u128>(std::ldexp(mant, 53));  // alpha = m * 2^(exp-53)
    const int s = 53 - exp;
    if (s <= 0) return 0.0;  // alpha * k is an integer
    const u128 prod = m * static_cast<u128>(k);
    long double frac;
    if (s >= 128) {
        frac = ldexpl(static_cast<long double>(prod), -s);
    } else {
        const u128 mask = (static_cast<u128>(1) << s) - 1;
        frac = ldexpl(static_cast<long double>(prod & mask), -s);
    }
    auto out = static_cast<double>(frac);
    if (out >= 1.0 || out < 0.0) out = 0.0;
    return out;
}

Frequency::Frequency(double alpha) {
    double v = alpha - std::floor(alpha);
    if (v >= 1.0) v = 0.0;
    value_ = v;
}

Frequency Frequency::rational(std::int64_t a, std::int64_t b) {
    if (b < 1) throw std::invalid_argument("denominator must be positive");
    std::int64_t r = a % b;
    if (r < 0) r += b;
    const std::int64_t g = std::gcd(r, b);
    Frequency f;
    f.num_ = r / std::max<std::int64_t>(g, 1);
    f.den_ = b / std::max<std::int64_t>(g, 1);
    if (f.num_ == 0) f.den_ = 1;
    f.value_ = static_cast<double>(f.num_) / static_cast<double>(f.den_);
    return f;
}

double Frequency::frac_times(std::int64_t k) const {
    if (is_rational()) {
        i128 r = static_cast<i128>(num_) * k % den_;
        if (r < 0) r += den_;
        return static_cast<double>(static_cast<std::int64_t>(r)) / static_cast<double>(den_);
    }
    return frac_mul(value_, k);
}

double Frequency::distance_times(std::int64_t k) const {
    if (is_rational()) {
        i128 r = static_cast<i128>(num_) * k % den_;
        if (r < 0) r += den_;
        const auto ri = static_cast<std::int64_t>(r);
        return static_cast<double>(std::min(ri, den_ - ri)) / static_cast<double>(den_);
    }
    const double f = frac_mul(value_, k);
    return std::min(f, 1.0 - f);
}

cplx fourier_coefficient(const BoundedFunction& f, const Frequency& alpha) {
    long double re = 0.0L, im = 0.0L;
    for (std::int64_t x = 1; x <= f.length(); ++x) {
        const cplx v = f(x);
        if (v == cplx{0.0, 0.0}) continue;
        const cplx t = v * alpha.phase(x);
        re += t.real();
        im += t.imag();
    }
    return cplx{static_cast<double>(re), static_cast<double>(im)};
}

FejerKernel::FejerKernel(double h) : h_(h) {
    if (!(h >= 1.0)) throw std::invalid_argument("Fejer kernel requires H >= 1");
    floor_h_ = static_cast<std::int64_t>(std::floor(h));
}

double FejerKernel::weight(std::int64_t h) const {
    return static_cast<double>(weight_numerator(h)) / static_cast<double>(denominator());
}

std::int64_t FejerKernel::weight_numerator(std::int64_t h) const {
    const std::int64_t a = std::abs(h);
    return a >= floor_h_ ? 0 : floor_h_ - a;
}

FejerKernel fejer_kernel(double h) { return FejerKernel(h); }

BoundedFunction smooth_along(const BoundedFunction& f, std::int64_t q, double h) {
    if (q < 1) throw std::invalid_argument("q must be positive");
    const FejerKernel mu(h);
    const std::int64_t n = f.length();
    std::vector<cplx> vals(static_cast<std::size_t>(n));
    for (std::int64_t x = 1; x <= n; ++x) {
        cplx acc{0.0, 0.0};
        for (std::int64_t s = -mu.support_radius(); s <= mu.support_radius(); ++s) {
            const cplx v = f(x + q * s);
            if (v != cplx{0.0, 0.0}) acc += mu.weight(s) * v;
        }
        vals[static_cast<std::size_t>(x - 1)] = acc;
    }
    return BoundedFunction(std::move(vals), f.bound());
}

double lipschitz_constant_along(const BoundedFunction& phi, std::int64_t q,
                                std::int64_t window) {
    if (window < 1) throw std::invalid_argument("window must be positive");
    const std::int64_t n = phi.length();
    double best = 0.0;
    for (std::int64_t y = 1; y <= window; ++y) {
        const std::int64_t shift = q * y;
        for (std::int64_t x = 1; x + shift <= n; ++x) {
            const double d = std::abs(phi(x + shift) - phi(x)) / static_cast<double>(y);
            best = std::max(best, d);
        }
    }
    return best;
}

cplx quadratic_weyl_sum(const Progression& p, std::int64_t n, const Frequency& alpha) {
    const std::int64_t k_max = floor_sqrt(n);
    long double re = 0.0L, im = 0.0L;
    for (std::int64_t k = 1; k <= p.length; ++k) {
        const std::int64_t y = p.element(k);
        if (y > k_max) break;  // elements increase with k
        if (y < 1) continue;
        const cplx t = alpha.phase(y * y);
        re += t.real();
        im += t.imag();
    }
    return cplx{static_cast<double>(re), static_cast<double>(im)};
}

RationalApprox rational_approximation(const Frequency& alpha, std::int64_t q_max) {
    if (q_max < 1) throw std::invalid_argument("Q must be positive");
    RationalApprox best{1, alpha.distance_times(1)};
    auto consider = [&](std::int64_t q) {
        const double d = alpha.distance_times(q);
        if (d < best.distance || (d == best.distance && q < best.q)) {
            best = RationalApprox{q, d};
        }
    };

    // continued-fraction convergents of the exact value
    i128 num, den;
    if (alpha.is_rational()) {
        num = alpha.numerator();
        den = alpha.denominator();
    } else {
        const double v = alpha.value();
        if (v == 0.0 || v < std::ldexp(1.0, -64)) {
            num = 0;
            den = 1;
        } else {
            int exp = 0;
            const double mant = std::frexp(v, &exp);
            num = static_cast<i128>(std::ldexp(mant, 53));
            den = static_cast<i128>(1) << (53 - exp);
        }
    }
    i128 k_prev2 = 1, k_prev1 = 0;  // denominators k_{-2}, k_{-1}
    while (den != 0) {
        const i128 a = num / den;
        const i128 k = a * k_prev1 + k_prev2;
        if (k > q_max) break;
        if (k >= 1) consider(static_cast<std::int64_t>(k));
        k_prev2 = k_prev1;
        k_prev1 = k;
        const i128 rem = num % den;
        num = den;
        den = rem;
    }

    // exhaustive fallback at accessible scales (also settles tie-breaks)
    if (q_max <= 1000000) {
        for (std::int64_t q = 1; q <= q_max; ++q) consider(q);
    }
    return best;
}

WeylSearchOutcome weyl_frequency_finder(const Progression& p, std::int64_t n,
                                        const Frequency& alpha, double delta,
                                        double exponent_c) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
    WeylSearchOutcome out;
    const std::int64_t k_max = floor_sqrt(n);
    std::int64_t size = 0;
    for (std::int64_t k = 1; k <= p.length; ++k) {
        const std::int64_t y = p.element(k);
        if (y >= 1 && y <= k_max) ++size;
    }
    if (size == 0) {
        out.diagnostic = "progression does not meet [sqrt(N)]";
        return out;
    }
    const cplx s = quadratic_weyl_sum(p, n, alpha);
    out.normalized_sum = std::abs(s) / static_cast<double>(size);
    if (out.normalized_sum < delta) {
        out.diagnostic = "hypothesis fails: |S_P|/|P| below delta";
        return out;
    }
    const double budget = std::pow(delta, -exponent_c);
    const auto q_limit = static_cast<std::int64_t>(std::floor(budget));
    const double threshold = budget / (static_cast<double>(size) * static_cast<double>(size));
    const std::int64_t q_sq = p.step * p.step;
    for (std::int64_t qp = 1; qp <= q_limit; ++qp) {
        const double d = alpha.distance_times(qp * q_sq);
        if (d <= threshold) {
            out.q_prime = qp;
            out.distance = d;
            return out;
        }
    }
    out.diagnostic = "no q' within budget";
    return out;
}

std::int64_t sixth_moment_squares(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("N must be positive");
    if (n > 4096) throw std::invalid_argument("sixth moment supported up to N = 4096");
    const std::int64_t s_max = 3 * n * n;
    std::vector<std::int32_t> r3(static_cast<std::size_t>(s_max + 1), 0);
    std::vector<std::int64_t> sq(static_cast<std::size_t>(n + 1));
    for (std::int64_t i = 0; i <= n; ++i) sq[static_cast<std::size_t>(i)] = i * i;
    for (std::int64_t a = 1; a <= n; ++a) {
        for (std::int64_t b = 1; b <= n; ++b) {
            const std::int64_t sab = sq[static_cast<std::size_t>(a)] + sq[static_cast<std::size_t>(b)];
            for (std::int64_t c = 1; c <= n; ++c) {
                ++r3[static_cast<std::size_t>(sab + sq[static_cast<std::size_t>(c)])];
            }
        }
    }
    std::int64_t total = 0;
    for (const std::int32_t v : r3) total += static_cast<std::int64_t>(v) * v;
    return total;
}

MajorArcOutcome major_arc_witness(const CountingParams& p, const BoundedFunction& f,
                                  const BoundedFunction& g, const BoundedFunction& h,
                                  double delta, const MajorArcConfig& config) {
    if (p.q != 1) throw std::invalid_argument("major-arc pipeline requires q = 1");
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
    MajorArcOutcome out;
    const cplx lambda = count_operator(p, f, g, h);
    out.lambda_modulus = std::abs(lambda);
    if (out.lambda_modulus < delta) {
        out.diagnostic = "counting operator below delta";
        return out;
    }

    const std::int64_t n = p.N;
    const std::int64_t k_max = p.M;  // floor(sqrt(N)) since q = 1
    const double eta = config.eta_coefficient * std::pow(delta, config.exponent_c);
    const double arc_floor = eta * std::sqrt(static_cast<double>(n));

    // candidate frequencies: 1/(4N)-grid union Farey fractions
    std::set<std::pair<std::int64_t, std::int64_t>> reduced;
    const std::int64_t grid_den = config.grid_denominator_factor * n;
    for (std::int64_t k = 0; k < grid_den; ++k) {
        const std::int64_t d = std::gcd(k, grid_den);
        reduced.emplace(k / std::max<std::int64_t>(d, 1), grid_den / std::max<std::int64_t>(d, 1));
    }
    const auto farey_max = static_cast<std::int64_t>(std::ceil(std::pow(delta, -config.exponent_c)));
    for (std::int64_t b = 1; b <= farey_max; ++b) {
        for (std::int64_t a = 0; a < b; ++a) {
            if (std::gcd(a, b) == 1) reduced.emplace(a, b);
        }
    }
    std::vector<Frequency> candidates;
    candidates.reserve(reduced.size());
    for (const auto& [a, b] : reduced) candidates.push_back(Frequency::rational(a, b));
    std::sort(candidates.begin(), candidates.end(),
              [](const Frequency& x, const Frequency& y) { return x.value() < y.value(); });

    // short progressions P whose Weyl sum defines the major arcs
    std::vector<Progression> family;
    for (std::int64_t step = 1; step <= std::max<std::int64_t>(config.max_progression_step, 1); ++step) {
        for (std::int64_t r = 1; r <= step && r <= k_max; ++r) {
            const std::int64_t len = (k_max - r) / step + 1;
            family.push_back(Progression{r - step, step, len});
        }
    }

    // mean-zero part of h drives the score; the raw coefficient is reported
    const cplx mean = [&] {
        cplx acc{0.0, 0.0};
        for (std::int64_t x = 1; x <= n; ++x) acc += h(x);
        return acc / static_cast<double>(n);
    }();

    const std::size_t count = candidates.size();
    std::vector<double> score(count, -1.0);  // -1 marks ineligible
    auto evaluate = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const Frequency& alpha = candidates[i];
            bool major = false;
            for (const Progression& prog : family) {
                if (std::abs(quadratic_weyl_sum(prog, n, alpha)) >= arc_floor) {
                    major = true;
                    break;
                }
            }
            if (!major) continue;
            cplx acc{0.0, 0.0};
            phase_scan(alpha, n, [&](std::int64_t x, cplx px) { acc += (h(x) - mean) * px; });
            score[i] = std::abs(acc);
        }
    };
    const int threads = std::max(config.threads, 1);
    if (threads == 1 || count < 64) {
        evaluate(0, count);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (count + static_cast<std::size_t>(threads) - 1) / static_cast<std::size_t>(threads);
        for (int t = 0; t < threads; ++t) {
            const std::size_t lo = static_cast<std::size_t>(t) * chunk;
            const std::size_t hi = std::min(count, lo + chunk);
            if (lo < hi) pool.emplace_back(evaluate, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    std::size_t best = count;
    for (std::size_t i = 0; i < count; ++i) {
        if (score[i] < 0.0) continue;
        if (best == count || score[i] > score[best]) best = i;  // ties keep smallest alpha
    }
    if (best == count) {
        out.diagnostic = "no candidate frequency is major";
        return out;
    }

    MajorArcWitness w;
    w.alpha = candidates[best];
    w.coefficient_modulus = std::abs(fourier_coefficient(h, w.alpha));
    const RationalApprox approx = rational_approximation(w.alpha, std::max<std::int64_t>(farey_max, 1));
    w.q = approx.q;
    w.q_alpha_distance = approx.distance;
    w.delta = delta;
    out.witness = w;
    return out;
}

}  // namespace nlroth
