#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlroth/core.hpp"
#include "nlroth/counting.hpp"
#include "nlroth/regularity.hpp"

// Density increment extraction and iteration: regularize the indicator of a
// configuration-free set, locate the largest atom on which the projected
// density exceeds (1+c) * delta, return it as a progression, rescale, and
// repeat. Also greedy construction of configuration-free sets and the
// block-pattern example whose counting sum is large while every progression
// sum stays near sqrt(N).

namespace nlroth {

struct IncrementResult {
    Progression progression;
    double old_density = 0.0;
    double new_density = 0.0;
    double c = 0.0;
    std::int64_t atom_id = -1;  // provenance within the regularity factor
};

struct IncrementOptions {
    double c = 0.01;
    RegularityCaps regularity;
    std::int64_t min_cardinality = 8;  // below this, "small-N" diagnostics
    std::int64_t min_n = 64;
    std::int64_t min_length = 2;       // shortest progression worth returning
};

/// Increment failure is a labeled outcome, not an exception: at desk scale
/// the guarantees' absolute constants may not bind.
struct IncrementOutcome {
    std::optional<IncrementResult> result;
    std::string diagnostic;
    RegularityStatus regularity_status = RegularityStatus::converged;
    std::int64_t factor_dimension = 0;
};

/// Requires A configuration-free for (q, N) (throws configuration_error with
/// a witness otherwise) and delta = |A|/N. Densities in the result are
/// recomputed from A directly.
IncrementOutcome find_density_increment(const IntegerSet& a, std::int64_t q, double delta,
                                        const IncrementOptions& options = {});

struct IterationStage {
    std::int64_t n = 0;
    std::int64_t cardinality = 0;
    std::int64_t q_prime = 1;       // step of the found progression / previous modulus
    std::int64_t modulus = 1;       // configuration modulus at this stage
    double density = 0.0;
    std::int64_t rescale_start = 0; // a in x -> a + step * x
    std::int64_t rescale_step = 1;
};

struct IterationTrace {
    std::vector<IterationStage> stages;  // stage 0 is the input
    std::vector<IntegerSet> sets;
    std::string termination;             // configuration_found | small_N | stage_cap |
                                         // modulus_cap | increment_failed:<diag>
    std::int64_t increments_performed() const {
        return static_cast<std::int64_t>(stages.size()) - 1;
    }
};

struct IterationCaps {
    std::int64_t max_stages = 32;
    std::int64_t modulus_cap = std::int64_t{1} << 32;
    std::int64_t min_n = 16;
};

/// Drives the increment: rescaling by x -> a + step * x turns a set lacking
/// q-configurations into one lacking q^2 q'-configurations, so the modulus
/// ladder squares each stage. Every stage's freeness is re-verified.
IterationTrace run_increment_iteration(const IntegerSet& a, const IncrementOptions& options = {},
                                       const IterationCaps& caps = {});

enum class SearchStrategy { greedy, random_greedy, local_search };

/// Builds a configuration-free subset of [N]; the postcondition
/// is_configuration_free(result) is enforced. Strategies: ascending greedy,
/// random-order greedy, and greedy followed by 1-swap local search.
IntegerSet greedy_extremal_search(std::int64_t n, std::int64_t q, SearchStrategy strategy,
                                  std::uint64_t seed = 0, std::int64_t swap_budget = 2000);

struct Section1Stats {
    double s_value = 0.0;            // sum_x sum_{y>=1} f(x) f(x+y) 1_[N](x+y^2)
    double ratio_s = 0.0;            // s_value / N^{3/2}
    double max_progression_sum = 0.0;
    double ratio_progression = 0.0;  // max_progression_sum / sqrt(N)
    std::int64_t max_step_scanned = 0;
};

/// The block pattern on [N] = [K]^2 whose value depends on the block index
/// mod 4 (0 -> +1, 1 -> 0, 2 -> -1, 3 -> 0). Requires N a perfect square.
/// Progression sums are scanned over all starts and lengths for each step
/// up to max_step via per-step prefix sums.
std::pair<BoundedFunction, Section1Stats> build_section1_example(std::int64_t n,
                                                                 std::int64_t max_step = 64);

}  // namespace nlroth
