#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlroth/core.hpp"
#include "nlroth/counting.hpp"
#include "nlroth/cutnorm.hpp"
#include "nlroth/factors.hpp"

// Weak regularity by energy increment: grow a local factor B until the
// residual f - Pi_B f has small cut norm. Each accepted step joins the two
// simple local factors found by the inverse-correlation search; Pythagoras
// turns the witnessed correlation into an energy gain of at least corr^2/N,
// so the loop halts.

namespace nlroth {

enum class RegularityStatus {
    converged,      // residual estimate fell below delta
    dimension_cap,  // hit the dimension cap with the estimate still large
    search_gap,     // estimator above delta but the inverse search found nothing
};

const char* to_string(RegularityStatus s);

struct RegularityCaps {
    std::int64_t max_dimension = 16;
    InverseSearchOptions grid;        // empty resolutions -> defaults for (N, q)
    CutNormOptions estimator;
    double step_coefficient = 1.0 / 64.0;  // c2 in the floor corr >= c2 delta^3 N
    bool allow_one_bounded = false;        // accept 1-bounded f, not just [0,1]-valued
};

struct RegularityOutput {
    Factor factor;
    BoundedFunction structured;  // Pi_B f
    BoundedFunction residual;    // f - Pi_B f
    CutNormEstimate residual_estimate;
    std::vector<double> energy_trace;       // ||Pi_B f||_2^2 after 0, 1, ... steps
    std::vector<double> step_correlations;  // witnessed correlation per accepted step
    std::int64_t steps = 0;
    RegularityStatus status = RegularityStatus::converged;
};

/// ||Pi_B f||_2^2, the monotone quantity of the increment argument.
double energy(const BoundedFunction& f, const Factor& b);

/// Energy-increment loop. Stops when the alternating-maximization lower
/// bound on ||f - Pi_B f||_{q,N} falls below delta (the true cut norm is
/// out of reach at scale; the estimator is one-sided and validated against
/// the exact oracle at small N), or on the dimension cap, or when the
/// inverse search yields nothing above the step floor.
RegularityOutput weak_regularize(const CountingParams& p, const BoundedFunction& f,
                                 double delta, const RegularityCaps& caps = {});

}  // namespace nlroth
