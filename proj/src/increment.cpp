#include "nlroth/increment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace nlroth {

namespace {

/// True if inserting x into s (q-configuration-free) would create a
/// configuration, with x playing any of the three roles.
bool insertion_conflict(const IntegerSet& s, std::int64_t x, std::int64_t q) {
    const std::int64_t n = s.length();
    auto in = [&](std::int64_t z) { return z == x || s.contains(z); };
    for (std::int64_t y = 1; q * y * y <= n - 1; ++y) {
        const std::int64_t s2 = q * y * y;
        if (x + s2 <= n && in(x + y) && in(x + s2)) return true;           // x first
        if (x - y >= 1 && x - y + s2 <= n && in(x - y) && in(x - y + s2)) return true;  // x second
        if (x - s2 >= 1 && in(x - s2) && in(x - s2 + y)) return true;      // x third
    }
    return false;
}

void greedy_fill(IntegerSet& s, std::int64_t q, std::span<const std::int64_t> order) {
    for (const std::int64_t x : order) {
        if (!s.contains(x) && !insertion_conflict(s, x, q)) s.insert(x);
    }
}

/// Elements of s that appear in some configuration triple together with x.
/// Returns one blocker per triple; empty when x is insertable.
std::vector<std::vector<std::int64_t>> blocking_triples(const IntegerSet& s, std::int64_t x,
                                                        std::int64_t q) {
    std::vector<std::vector<std::int64_t>> triples;
    const std::int64_t n = s.length();
    auto in = [&](std::int64_t z) { return z == x || s.contains(z); };
    auto members = [&](std::int64_t a, std::int64_t b) {
        std::vector<std::int64_t> m;
        if (a != x) m.push_back(a);
        if (b != x && b != a) m.push_back(b);
        return m;
    };
    for (std::int64_t y = 1; q * y * y <= n - 1; ++y) {
        const std::int64_t s2 = q * y * y;
        if (x + s2 <= n && in(x + y) && in(x + s2)) triples.push_back(members(x + y, x + s2));
        if (x - y >= 1 && x - y + s2 <= n && in(x - y) && in(x - y + s2)) {
            triples.push_back(members(x - y, x - y + s2));
        }
        if (x - s2 >= 1 && in(x - s2) && in(x - s2 + y)) triples.push_back(members(x - s2, x - s2 + y));
    }
    return triples;
}

}  // namespace

IncrementOutcome find_density_increment(const IntegerSet& a, std::int64_t q, double delta,
                                        const IncrementOptions& options) {
    const std::int64_t n = a.length();
    const CountingParams p = CountingParams::make(q, n);
    if (const auto witness = find_configuration(a, q)) {
        throw configuration_error(witness->x, witness->y);
    }
    if (std::abs(delta - a.density()) > 1e-9) {
        throw std::invalid_argument("delta does not match |A|/N");
    }

    IncrementOutcome out;
    if (a.cardinality() < options.min_cardinality || n < options.min_n) {
        out.diagnostic = "small-N: set too sparse for an increment";
        return out;
    }

    // regularity target (1/6) delta^3 Lambda(1_[N]) from the telescoping bound
    const BoundedFunction ones = BoundedFunction::constant(n, cplx{1.0, 0.0});
    const double lambda_ones = count_operator(p, ones, ones, ones).real();
    const double reg_delta =
        std::min(1.0, std::max(1e-12, delta * delta * delta * lambda_ones / 6.0));
    const RegularityOutput reg = weak_regularize(p, indicator(a), reg_delta, options.regularity);
    out.regularity_status = reg.status;
    out.factor_dimension = reg.factor.local_meta() ? reg.factor.local_meta()->dimension : 0;

    const double threshold = (1.0 + options.c) * delta;
    std::int64_t best_atom = -1;
    std::int64_t best_size = 0;
    for (std::int64_t id = 0; id < reg.factor.atom_count(); ++id) {
        const std::int64_t repr = reg.factor.atom_elements(id).front();
        if (reg.structured(repr).real() >= threshold && reg.factor.atom_size(id) > best_size) {
            best_size = reg.factor.atom_size(id);
            best_atom = id;  // ids are first-occurrence ordered: ties keep smallest start
        }
    }
    if (best_atom < 0) {
        out.diagnostic = "no atom above (1+c)*delta (regularity: " +
                         std::string(to_string(reg.status)) + ")";
        return out;
    }

    const Progression prog = reg.factor.atom_progression(best_atom);
    if (prog.length < options.min_length) {
        out.diagnostic = "largest qualifying atom shorter than min_length";
        return out;
    }
    if (prog.step % q != 0) {
        out.diagnostic = "atom step not divisible by q";
        return out;
    }

    std::int64_t hits = 0;
    for (std::int64_t k = 1; k <= prog.length; ++k) {
        if (a.contains(prog.element(k))) ++hits;
    }
    IncrementResult res;
    res.progression = prog;
    res.old_density = a.density();
    res.new_density = static_cast<double>(hits) / static_cast<double>(prog.length);
    res.c = options.c;
    res.atom_id = best_atom;
    if (res.new_density < threshold) {
        out.diagnostic = "recomputed density below (1+c)*delta";
        return out;
    }
    out.result = res;
    return out;
}

IterationTrace run_increment_iteration(const IntegerSet& a, const IncrementOptions& options,
                                       const IterationCaps& caps) {
    IterationTrace trace;
    IntegerSet current = a;
    std::int64_t modulus = 1;

    trace.stages.push_back(IterationStage{current.length(), current.cardinality(), 1, modulus,
                                          current.density(), 0, 1});
    trace.sets.push_back(current);

    while (true) {
        if (const auto witness = find_configuration(current, modulus)) {
            trace.termination = "configuration_found: x=" + std::to_string(witness->x) +
                                " y=" + std::to_string(witness->y);
            return trace;
        }
        if (trace.increments_performed() >= caps.max_stages) {
            trace.termination = "stage_cap";
            return trace;
        }
        if (current.length() < caps.min_n || modulus > current.length()) {
            trace.termination = "small_N";
            return trace;
        }

        IncrementOutcome step = find_density_increment(current, modulus, current.density(), options);
        if (!step.result) {
            trace.termination = "increment_failed: " + step.diagnostic;
            return trace;
        }
        const Progression& prog = step.result->progression;
        const std::int64_t q_prime = prog.step / modulus;

        IntegerSet next(prog.length);
        for (std::int64_t k = 1; k <= prog.length; ++k) {
            if (current.contains(prog.element(k))) next.insert(k);
        }

        // q-free rescaled by x -> a + q q' x lacks q^2 q'-configurations
        const std::int64_t next_modulus_q = modulus * modulus; // times q_prime below
        if (q_prime > 0 && next_modulus_q > caps.modulus_cap / q_prime) {
            trace.termination = "modulus_cap";
            return trace;
        }
        modulus = next_modulus_q * q_prime;
        current = next;
        trace.stages.push_back(IterationStage{current.length(), current.cardinality(), q_prime,
                                              modulus, current.density(), prog.start, prog.step});
        trace.sets.push_back(current);
    }
}

IntegerSet greedy_extremal_search(std::int64_t n, std::int64_t q, SearchStrategy strategy,
                                  std::uint64_t seed, std::int64_t swap_budget) {
    if (n < 1) throw std::invalid_argument("N must be positive");
    if (q < 1) throw std::invalid_argument("q must be positive");
    std::vector<std::int64_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);

    IntegerSet s(n);
    std::mt19937_64 rng(seed);
    if (strategy == SearchStrategy::random_greedy) {
        std::shuffle(order.begin(), order.end(), rng);
    }
    greedy_fill(s, q, order);

    if (strategy == SearchStrategy::local_search) {
        std::vector<std::int64_t> ascending(static_cast<std::size_t>(n));
        std::iota(ascending.begin(), ascending.end(), 1);
        std::uniform_int_distribution<std::int64_t> pick(1, n);
        for (std::int64_t t = 0; t < swap_budget; ++t) {
            const std::int64_t x = pick(rng);
            if (s.contains(x)) continue;
            const auto triples = blocking_triples(s, x, q);
            if (triples.empty()) {
                s.insert(x);
                continue;
            }
            // a 1-swap works when one element blocks every triple
            std::vector<std::int64_t> common = triples.front();
            for (const auto& tri : triples) {
                std::vector<std::int64_t> keep;
                for (const std::int64_t z : common) {
                    if (std::find(tri.begin(), tri.end(), z) != tri.end()) keep.push_back(z);
                }
                common = std::move(keep);
                if (common.empty()) break;
            }
            if (common.empty()) continue;
            const std::int64_t before = s.cardinality();
            const std::int64_t removed = common.front();
            s.erase(removed);
            if (insertion_conflict(s, x, q)) {
                s.insert(removed);
                continue;
            }
            s.insert(x);
            greedy_fill(s, q, ascending);
            if (s.cardinality() < before) {  // revert a losing swap
                s.erase(x);
                if (!insertion_conflict(s, removed, q)) s.insert(removed);
                greedy_fill(s, q, ascending);
            }
        }
    }

    if (const auto witness = find_configuration(s, q)) {
        throw std::logic_error("extremal search produced a configuration: x=" +
                               std::to_string(witness->x) + " y=" + std::to_string(witness->y));
    }
    return s;
}

std::pair<BoundedFunction, Section1Stats> build_section1_example(std::int64_t n,
                                                                 std::int64_t max_step) {
    const std::int64_t k = integer_root(n, 2);
    if (k * k != n) throw std::invalid_argument("N must be a perfect square");

    std::vector<cplx> vals(static_cast<std::size_t>(n));
    for (std::int64_t x2 = 1; x2 <= k; ++x2) {
        double v = 0.0;
        switch (x2 % 4) {
            case 0: v = 1.0; break;
            case 2: v = -1.0; break;
            default: v = 0.0; break;
        }
        for (std::int64_t x1 = 1; x1 <= k; ++x1) {
            vals[static_cast<std::size_t>(x1 + (x2 - 1) * k - 1)] = cplx{v, 0.0};
        }
    }
    BoundedFunction f(std::move(vals), 1.0);

    Section1Stats stats;
    std::int64_t s_acc = 0;
    for (std::int64_t y = 1; y * y <= n - 1; ++y) {
        const std::int64_t yy = y * y;
        for (std::int64_t x = 1; x + yy <= n; ++x) {
            const double prod = f(x).real() * f(x + y).real();
            s_acc += static_cast<std::int64_t>(prod);
        }
    }
    stats.s_value = static_cast<double>(s_acc);
    stats.ratio_s = stats.s_value / std::pow(static_cast<double>(n), 1.5);

    // per-step prefix sums cover every start and length at once
    double best = 0.0;
    const std::int64_t step_cap = std::min<std::int64_t>(max_step, n);
    for (std::int64_t step = 1; step <= step_cap; ++step) {
        for (std::int64_t r = 1; r <= step; ++r) {
            double prefix = 0.0, lo = 0.0, hi = 0.0;
            for (std::int64_t x = r; x <= n; x += step) {
                prefix += f(x).real();
                lo = std::min(lo, prefix);
                hi = std::max(hi, prefix);
            }
            best = std::max(best, hi - lo);
        }
    }
    stats.max_progression_sum = best;
    stats.ratio_progression = best / std::sqrt(static_cast<double>(n));
    stats.max_step_scanned = step_cap;
    return {std::move(f), stats};
}

}  // namespace nlroth
