#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlroth/core.hpp"
#include "nlroth/counting.hpp"

// Fourier coefficients on [N], Fejer smoothing, quadratic Weyl sums,
// best rational approximation, the sixth-moment count, and the major-arc
// witness pipeline.
//
// Phases alpha*x and alpha*y^2 are reduced mod 1 before exponentiation
// using the exact binary representation of the double (or exact rational
// arithmetic when the frequency was constructed as a fraction); naive
// double products lose all accuracy for y^2 beyond 2^20.

namespace nlroth {

/// e(t) = exp(2*pi*i*t).
cplx unit_phase(double t);

/// frac(alpha * k) in [0, 1), exact in the double alpha (alpha is treated
/// as the dyadic rational it is). k >= 0.
double frac_mul(double alpha, std::int64_t k);

/// A frequency reduced mod 1 into [0, 1). Frequencies built from a
/// fraction keep the exact rational and all phase arithmetic on them is
/// exact integer arithmetic.
class Frequency {
public:
    Frequency() = default;
    explicit Frequency(double alpha);
    static Frequency rational(std::int64_t a, std::int64_t b);

    double value() const { return value_; }
    bool is_rational() const { return den_ != 0; }
    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }

    /// frac(k * alpha) in [0, 1).
    double frac_times(std::int64_t k) const;

    /// ||k * alpha||, the distance from k*alpha to the nearest integer.
    double distance_times(std::int64_t k) const;

    /// ||alpha|| = min(alpha, 1 - alpha).
    double distance_to_integer() const { return distance_times(1); }

    /// e(k * alpha), phase reduced before exponentiation.
    cplx phase(std::int64_t k) const { return unit_phase(frac_times(k)); }

private:
    double value_ = 0.0;
    std::int64_t num_ = 0;
    std::int64_t den_ = 0;  // 0 marks a non-rational (plain double) frequency
};

/// f_hat(alpha) = sum_x f(x) e(alpha x).
cplx fourier_coefficient(const BoundedFunction& f, const Frequency& alpha);

/// Normalised Fejer kernel mu_H(h) = (1/floor(H)) (1 - |h|/floor(H))_+,
/// a probability measure supported in (-H, H). Weights are the exact
/// rationals (floor(H) - |h|) / floor(H)^2.
class FejerKernel {
public:
    explicit FejerKernel(double h);

    double h() const { return h_; }
    std::int64_t floor_h() const { return floor_h_; }

    /// Largest |h| with nonzero weight (floor(H) - 1).
    std::int64_t support_radius() const { return floor_h_ - 1; }

    double weight(std::int64_t h) const;
    std::int64_t weight_numerator(std::int64_t h) const;
    std::int64_t denominator() const { return floor_h_ * floor_h_; }

private:
    double h_;
    std::int64_t floor_h_;
};

FejerKernel fejer_kernel(double h);

/// phi(x) = sum_h mu_H(h) f(x + q h). 1-bounded whenever f is, and
/// O(1/H)-Lipschitz along q*Z.
BoundedFunction smooth_along(const BoundedFunction& f, std::int64_t q, double h);

/// Empirical sup of |phi(x+qy) - phi(x)| / |y| over x in [N],
/// 1 <= |y| <= window, x + q y in [N].
double lipschitz_constant_along(const BoundedFunction& phi, std::int64_t q,
                                std::int64_t window);

/// S_P(alpha) = sum over y in P cap [floor(sqrt(N))] of e(alpha y^2).
cplx quadratic_weyl_sum(const Progression& p, std::int64_t n, const Frequency& alpha);

struct RationalApprox {
    std::int64_t q = 1;
    double distance = 0.0;
};

/// The q <= Q minimizing ||q alpha||, via continued-fraction convergents of
/// the exact value, with an exhaustive scan fallback for Q <= 10^6.
/// Dirichlet's theorem guarantees distance <= 1/(Q+1).
RationalApprox rational_approximation(const Frequency& alpha, std::int64_t q_max);

struct WeylSearchOutcome {
    std::optional<std::int64_t> q_prime;
    double distance = 0.0;       // ||q' q^2 alpha|| for the returned q'
    double normalized_sum = 0.0; // |S_P(alpha)| / |P cap [sqrt(N)]|
    std::string diagnostic;
};

/// Realizes the conclusion of Weyl's inequality: if |S_P(alpha)| >= delta |P|
/// then some q' <= delta^{-C} has ||q' q^2 alpha|| <= delta^{-C} |P|^{-2}.
/// Returns the smallest such q', or nothing when the hypothesis fails or the
/// search is exhausted (diagnostics carry the measured sum either way).
WeylSearchOutcome weyl_frequency_finder(const Progression& p, std::int64_t n,
                                        const Frequency& alpha, double delta,
                                        double exponent_c = 3.0);

/// Exact number of 6-tuples in [N]^6 with x1^2+x2^2+x3^2 = x4^2+x5^2+x6^2,
/// computed by aggregating three-square representation counts.
std::int64_t sixth_moment_squares(std::int64_t n);

/// Frequency witness for major-arc control: alpha with small ||q alpha||
/// and large |h_hat(alpha)|.
struct MajorArcWitness {
    Frequency alpha;
    std::int64_t q = 1;
    double q_alpha_distance = 0.0;
    double coefficient_modulus = 0.0;
    double delta = 0.0;
};

struct MajorArcConfig {
    double eta_coefficient = 0.125;     // c0 in eta = c0 * delta^C
    double exponent_c = 3.0;            // C in the delta^{-C} budgets
    std::int64_t max_progression_step = 4;
    std::int64_t grid_denominator_factor = 4;  // candidate grid spacing 1/(factor*N)
    int threads = 1;
};

struct MajorArcOutcome {
    std::optional<MajorArcWitness> witness;
    double lambda_modulus = 0.0;
    std::string diagnostic;
};

/// Searches candidate frequencies (grid of spacing 1/(4N) union Farey
/// fractions of denominator <= ceil(delta^{-C})) that are major for some
/// short progression P (|S_P(alpha)| >= eta sqrt(N)), and returns the one
/// whose mean-zero Fourier coefficient |h~_hat(-alpha)| is largest; the
/// witness reports the raw |h_hat(alpha)|. The mean component is always
/// explained by alpha = 0, so scoring the balanced part is what makes a
/// planted nonzero frequency visible. Requires q = 1 and |Lambda| >= delta.
MajorArcOutcome major_arc_witness(const CountingParams& p, const BoundedFunction& f,
                                  const BoundedFunction& g, const BoundedFunction& h,
                                  double delta, const MajorArcConfig& config = {});

}  // namespace nlroth
