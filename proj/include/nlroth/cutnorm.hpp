#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nlroth/core.hpp"
#include "nlroth/counting.hpp"
#include "nlroth/factors.hpp"

// The cut norm ||f||_{q,N} = sup |Lambda_{q,N}(...)| over 1-bounded
// companions in the free slots (all three slot positions; the partial cut
// norm omits the last). Alternating maximization gives certified lower
// bounds, an exhaustive +-1 enumeration is exact for real inputs at small
// N, and the inverse-correlation search looks for the structured local
// functions that a large cut norm forces.

namespace nlroth {

enum class SlotSet { partial, full };

/// Lower-bound certificate for the cut norm: witnesses reproduce lower
/// through the counting operator; upper is the l1 control bound.
struct CutNormEstimate {
    double lower = 0.0;
    int slot = 0;  // slot position of f in the best witness arrangement
    BoundedFunction g_a;
    BoundedFunction g_b;
    double upper = 0.0;
    bool exact = false;
    int restarts_used = 0;
    int iterations_used = 0;        // of the best restart
    std::vector<double> trace;      // per-half-step values of the best restart
};

struct CutNormOptions {
    int restarts = 8;
    int iterations = 50;
    std::uint64_t seed = 0;
    bool include_zero_y = false;
    double convergence_tol = 1e-10;
};

/// The function F with Lambda = E_{x in [N]} g_slot(x) F(x) when the other
/// two slots hold (lo, hi) in increasing slot order. 1-bounded whenever the
/// inputs are.
BoundedFunction dual_function(const CountingParams& p, int slot,
                              const BoundedFunction& lo, const BoundedFunction& hi,
                              bool include_zero_y = false);

/// Alternating maximization over the free slots: with one companion fixed,
/// the optimal other is the conjugate phase (sign, for real data) of the
/// dual function, so each half-step is a closed-form ascent. Restart 0
/// starts from all-ones companions, the rest from seeded random ones.
CutNormEstimate cut_norm_lower(const CountingParams& p, const BoundedFunction& f,
                               SlotSet slots, const CutNormOptions& options = {});

/// Exact sup over g_a, g_b in {-1,+1}^N, valid for real f because the
/// bilinear sup over the cube is attained at vertices. Requires N <= 14.
double cut_norm_exact_small(const CountingParams& p, const BoundedFunction& f,
                            SlotSet slots);

struct SimpleLocalSignature {
    std::int64_t resolution = 1;
    std::int64_t modulus = 1;
    std::int64_t phase = 0;
};

/// Correlation witness: a pair of simple local factors whose join B admits
/// a 1-bounded B-measurable test function phi (the conjugate phase of
/// Pi_B f, standing in for the product of two local functions) with
/// |sum_x f(x) phi(x)| = ||Pi_B f||_1 = correlation.
struct CorrelationWitness {
    SimpleLocalSignature first;
    SimpleLocalSignature second;
    Factor join;
    BoundedFunction phi;
    double correlation = 0.0;
    double score = 0.0;  // z-score of the correlation against the +-1 noise model
};

struct InverseSearchOptions {
    std::vector<std::int64_t> resolutions;
    std::vector<std::int64_t> moduli;      // q' values; factor modulus is q*q'
    bool half_phases = true;               // phases {0, floor(M/2)}
    std::int64_t max_join_modulus = 12;    // cap on lcm of the two q' values
    std::int64_t modulus_in_use = 1;       // full modulus already accumulated by the caller
    std::int64_t max_total_modulus = 0;    // cap on the full join modulus (0 = 64q)
    double min_z = 4.5;                    // significance floor in noise sd units
    double min_correlation = 0.0;
};

/// Exact E||Pi_B noise||_1 contribution of one atom of n iid signs:
/// n * C(n-1, floor((n-1)/2)) / 2^(n-1).
double expected_abs_sign_sum(std::int64_t n);

/// Grid defaults: resolutions ceil(sqrt(N/q)) * 2^k for k = -1..3 clamped to
/// [1, N], moduli 1..12, phases {0, floor(M/2)}.
InverseSearchOptions default_inverse_options(std::int64_t n, std::int64_t q);

/// Scans pairs of simple local factors (resolutions and moduli from the
/// grid), computes ||Pi_B f||_1 on each join B, and returns the pair whose
/// correlation is most significant against iid noise of f's own scale
/// sigma = ||f||_2 / sqrt(N): score = (corr - sigma sum_B E|S_B|) / sd.
/// The calibration keeps fine joins, whose raw correlation is large for
/// any input, from masking genuinely structured ones, and is invariant
/// under f -> c f; for an exactly measurable f the correlation term is
/// maximal, so the planted factor (or a coarsening that still captures f)
/// wins. Ties break lexicographically on the signatures. Returns nothing
/// when the best score or correlation is below the configured floors.
std::optional<CorrelationWitness> inverse_correlation_search(
    const BoundedFunction& f, std::int64_t q, const InverseSearchOptions& options);

}  // namespace nlroth
