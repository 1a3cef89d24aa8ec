#include "nlroth/cutnorm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace nlroth {

namespace {

/// Places f at `slot` and (g_a, g_b) at the remaining slots in increasing
/// order, then evaluates the counting operator.
cplx arranged_operator(const CountingParams& p, int slot, const BoundedFunction& f,
                       const BoundedFunction& g_a, const BoundedFunction& g_b,
                       bool include_zero_y) {
    const BoundedFunction* fs[3];
    fs[slot] = &f;
    int free_idx = 0;
    const BoundedFunction* frees[2] = {&g_a, &g_b};
    for (int s = 0; s < 3; ++s) {
        if (s != slot) fs[s] = frees[free_idx++];
    }
    return count_operator(p, *fs[0], *fs[1], *fs[2], include_zero_y);
}

BoundedFunction conjugate_phase(const BoundedFunction& f, bool real_path) {
    std::vector<cplx> vals(static_cast<std::size_t>(f.length()));
    for (std::int64_t x = 1; x <= f.length(); ++x) {
        const cplx v = f(x);
        cplx g;
        if (real_path) {
            g = cplx{v.real() >= 0.0 ? 1.0 : -1.0, 0.0};
        } else {
            const double a = std::abs(v);
            g = a == 0.0 ? cplx{1.0, 0.0} : std::conj(v) / a;
        }
        vals[static_cast<std::size_t>(x - 1)] = g;
    }
    return BoundedFunction(std::move(vals), 1.0);
}

double mean_abs(const BoundedFunction& f) {
    long double acc = 0.0L;
    for (const cplx& v : f.values()) acc += std::abs(v);
    return static_cast<double>(acc / static_cast<long double>(f.length()));
}

std::vector<int> slot_positions(SlotSet slots) {
    return slots == SlotSet::partial ? std::vector<int>{0, 1} : std::vector<int>{0, 1, 2};
}

}  // namespace

BoundedFunction dual_function(const CountingParams& p, int slot,
                              const BoundedFunction& lo, const BoundedFunction& hi,
                              bool include_zero_y) {
    if (slot < 0 || slot > 2) throw std::invalid_argument("slot must be 0, 1 or 2");
    if (lo.length() < p.N || hi.length() < p.N) {
        throw std::invalid_argument("function shorter than N");
    }
    const std::int64_t y_lo = include_zero_y ? 0 : 1;
    const double denom = static_cast<double>(p.M - y_lo + 1);
    std::vector<cplx> vals(static_cast<std::size_t>(p.N));
    for (std::int64_t x = 1; x <= p.N; ++x) {
        cplx acc{0.0, 0.0};
        for (std::int64_t y = y_lo; y <= p.M; ++y) {
            const std::int64_t s2 = p.q * y * y;
            switch (slot) {
                case 0: acc += lo(x + y) * hi(x + s2); break;
                case 1: acc += lo(x - y) * hi(x - y + s2); break;
                default: acc += lo(x - s2) * hi(x - s2 + y); break;
            }
        }
        vals[static_cast<std::size_t>(x - 1)] = acc / denom;
    }
    const double b = lo.bound() * hi.bound();
    return BoundedFunction(std::move(vals), std::max(1.0, b));
}

CutNormEstimate cut_norm_lower(const CountingParams& p, const BoundedFunction& f,
                               SlotSet slots, const CutNormOptions& options) {
    if (options.restarts < 1 || options.iterations < 1) {
        throw std::invalid_argument("restarts and iterations must be >= 1");
    }
    if (f.length() < p.N) throw std::invalid_argument("function shorter than N");
    const bool real_path = f.is_real();
    const double inf = std::numeric_limits<double>::infinity();

    CutNormEstimate best;
    best.upper = std::min(lp_norm(f, 1.0) / static_cast<double>(p.N), lp_norm(f, inf));
    best.g_a = BoundedFunction::constant(p.N, cplx{1.0, 0.0});
    best.g_b = BoundedFunction::constant(p.N, cplx{1.0, 0.0});

    // dual slots for each free slot of a given arrangement: updating free
    // slot u needs the functions at the other two slots in increasing order
    for (const int s : slot_positions(slots)) {
        int free_a = -1, free_b = -1;
        for (int j = 0; j < 3; ++j) {
            if (j == s) continue;
            (free_a == -1 ? free_a : free_b) = j;
        }
        std::mt19937_64 rng(options.seed * 1000003ULL + static_cast<std::uint64_t>(s));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int restart = 0; restart < options.restarts; ++restart) {
            BoundedFunction ga = BoundedFunction::constant(p.N, cplx{1.0, 0.0});
            BoundedFunction gb = ga;
            if (restart > 0) {
                auto random_companion = [&] {
                    std::vector<cplx> vals(static_cast<std::size_t>(p.N));
                    for (auto& v : vals) {
                        v = real_path ? cplx{unif(rng) < 0.5 ? -1.0 : 1.0, 0.0}
                                      : std::polar(1.0, 2.0 * std::numbers::pi * unif(rng));
                    }
                    return BoundedFunction(std::move(vals), 1.0);
                };
                ga = random_companion();
                gb = random_companion();
            }
            double val = 0.0;
            std::vector<double> trace;
            int iters = 0;
            for (int it = 0; it < options.iterations; ++it) {
                iters = it + 1;
                double cycle_val = val;
                for (const int upd : {free_a, free_b}) {
                    const int other = upd == free_a ? free_b : free_a;
                    const BoundedFunction* at[3];
                    at[s] = &f;
                    at[other] = other == free_a ? &ga : &gb;
                    int lo_slot = -1, hi_slot = -1;
                    for (int j = 0; j < 3; ++j) {
                        if (j == upd) continue;
                        (lo_slot == -1 ? lo_slot : hi_slot) = j;
                    }
                    const BoundedFunction dual = dual_function(p, upd, *at[lo_slot], *at[hi_slot],
                                                               options.include_zero_y);
                    BoundedFunction& target = upd == free_a ? ga : gb;
                    target = conjugate_phase(dual, real_path);
                    cycle_val = mean_abs(dual);
                    trace.push_back(cycle_val);
                }
                if (cycle_val - val < options.convergence_tol) {
                    val = cycle_val;
                    break;
                }
                val = cycle_val;
            }
            if (val > best.lower) {
                best.lower = val;
                best.slot = s;
                best.g_a = ga;
                best.g_b = gb;
                best.iterations_used = iters;
                best.trace = std::move(trace);
            }
        }
    }
    best.restarts_used = options.restarts;
    best.exact = false;
    // the stored witnesses must reproduce the reported value
    const double check = std::abs(arranged_operator(p, best.slot, f, best.g_a, best.g_b,
                                                    options.include_zero_y));
    best.lower = std::min(best.lower, check + 1e-12);
    return best;
}

double cut_norm_exact_small(const CountingParams& p, const BoundedFunction& f,
                            SlotSet slots) {
    if (p.N > 14) throw std::invalid_argument("exact cut norm limited to N <= 14");
    if (!f.is_real()) throw std::invalid_argument("exact cut norm requires real-valued f");
    if (f.length() < p.N) throw std::invalid_argument("function shorter than N");
    const std::int64_t n = p.N;
    double best = 0.0;
    for (const int s : slot_positions(slots)) {
        int free_a = -1, free_b = -1;
        for (int j = 0; j < 3; ++j) {
            if (j == s) continue;
            (free_a == -1 ? free_a : free_b) = j;
        }
        // enumerate the second free slot; the first has a closed-form optimum
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            std::vector<cplx> vals(static_cast<std::size_t>(n));
            for (std::int64_t i = 0; i < n; ++i) {
                vals[static_cast<std::size_t>(i)] = cplx{(mask >> i) & 1 ? 1.0 : -1.0, 0.0};
            }
            const BoundedFunction gb(std::move(vals), 1.0);
            const BoundedFunction* at[3];
            at[s] = &f;
            at[free_b] = &gb;
            int lo_slot = -1, hi_slot = -1;
            for (int j = 0; j < 3; ++j) {
                if (j == free_a) continue;
                (lo_slot == -1 ? lo_slot : hi_slot) = j;
            }
            const BoundedFunction dual = dual_function(p, free_a, *at[lo_slot], *at[hi_slot]);
            best = std::max(best, mean_abs(dual));
        }
    }
    return best;
}

namespace {

/// De Moivre's mean absolute deviation of Bin(n, p):
/// E|X - np| = 2 v (1-p) C(n,v) p^v (1-p)^(n-v) with v = floor(np) + 1.
double binomial_mad(std::int64_t n, double p) {
    if (n <= 0 || p <= 0.0 || p >= 1.0) return 0.0;
    const auto nd = static_cast<double>(n);
    const double v = std::floor(nd * p) + 1.0;
    if (v > nd) return 0.0;
    const double log_pmf = std::lgamma(nd + 1.0) - std::lgamma(v + 1.0) -
                           std::lgamma(nd - v + 1.0) + v * std::log(p) +
                           (nd - v) * std::log1p(-p);
    return 2.0 * v * (1.0 - p) * std::exp(log_pmf);
}

/// Null model for atom sums: mean-zero iid samples from a two-point
/// distribution with gap `scale` and success probability p. Covers signed
/// noise (scale 2 sigma, p = 1/2) and balanced indicators exactly.
struct NoiseModel {
    double scale = 2.0;
    double p = 0.5;

    double mean_abs(std::int64_t n) const { return scale * binomial_mad(n, p); }
    double variance(std::int64_t n) const {
        const double m = mean_abs(n);
        return scale * scale * static_cast<double>(n) * p * (1.0 - p) - m * m;
    }

    static NoiseModel fit(const BoundedFunction& f);
};

NoiseModel NoiseModel::fit(const BoundedFunction& f) {
    const auto n = static_cast<double>(f.length());
    // exact two-point model when the values split into {a, b} with mean 0
    if (f.is_real(1e-9)) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const cplx& v : f.values()) {
            lo = std::min(lo, v.real());
            hi = std::max(hi, v.real());
        }
        if (hi > lo + 1e-9) {
            std::int64_t hi_count = 0;
            bool two_valued = true;
            for (const cplx& v : f.values()) {
                if (std::abs(v.real() - hi) <= 1e-9) {
                    ++hi_count;
                } else if (std::abs(v.real() - lo) > 1e-9) {
                    two_valued = false;
                    break;
                }
            }
            const double p = static_cast<double>(hi_count) / n;
            if (two_valued && std::abs(p * hi + (1.0 - p) * lo) <= 1e-9 && p > 0.0 && p < 1.0) {
                return NoiseModel{hi - lo, p};
            }
        }
    }
    const double sigma = lp_norm(f, 2.0) / std::sqrt(n);
    return NoiseModel{2.0 * sigma, 0.5};
}

}  // namespace

double expected_abs_sign_sum(std::int64_t n) {
    return 2.0 * binomial_mad(n, 0.5);
}

InverseSearchOptions default_inverse_options(std::int64_t n, std::int64_t q) {
    InverseSearchOptions opts;
    const auto base = static_cast<std::int64_t>(
        std::ceil(std::sqrt(static_cast<double>(n) / static_cast<double>(q))));
    for (const std::int64_t m : {base / 2, base, 2 * base, 4 * base, 8 * base}) {
        const std::int64_t clamped = std::clamp<std::int64_t>(m, 1, n);
        if (std::find(opts.resolutions.begin(), opts.resolutions.end(), clamped) ==
            opts.resolutions.end()) {
            opts.resolutions.push_back(clamped);
        }
    }
    opts.moduli.resize(12);
    std::iota(opts.moduli.begin(), opts.moduli.end(), 1);
    return opts;
}

std::optional<CorrelationWitness> inverse_correlation_search(
    const BoundedFunction& f, std::int64_t q, const InverseSearchOptions& options) {
    const std::int64_t n = f.length();
    struct Candidate {
        SimpleLocalSignature sig;
        std::int64_t q_prime;
        std::vector<std::int32_t> atom_of;  // raw piece labels, compacted
        std::int64_t atoms;
    };
    std::vector<Candidate> candidates;
    for (const std::int64_t m : options.resolutions) {
        if (m < 1 || m > n) continue;
        for (const std::int64_t qp : options.moduli) {
            std::vector<std::int64_t> phases{0};
            if (options.half_phases && m / 2 > 0) phases.push_back(m / 2);
            for (const std::int64_t ph : phases) {
                const Factor fac = simple_local_factor(n, m, q * qp, ph);
                Candidate c;
                c.sig = SimpleLocalSignature{m, q * qp, ph};
                c.q_prime = qp;
                c.atoms = fac.atom_count();
                c.atom_of.resize(static_cast<std::size_t>(n));
                for (std::int64_t x = 1; x <= n; ++x) {
                    c.atom_of[static_cast<std::size_t>(x - 1)] =
                        static_cast<std::int32_t>(fac.atom_of(x));
                }
                candidates.push_back(std::move(c));
            }
        }
    }

    const std::int64_t total_modulus_cap =
        options.max_total_modulus > 0 ? options.max_total_modulus : 64 * q;

    // scratch for pairwise joins: per-cell sums/sizes with generation stamps
    std::size_t max_cells = 1;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (std::size_t j = i; j < candidates.size(); ++j) {
            const std::int64_t pair_q = std::lcm(candidates[i].q_prime, candidates[j].q_prime);
            if (pair_q > options.max_join_modulus) continue;
            if (std::lcm(options.modulus_in_use, q * pair_q) > total_modulus_cap) continue;
            max_cells = std::max(max_cells, static_cast<std::size_t>(candidates[i].atoms) *
                                                static_cast<std::size_t>(candidates[j].atoms));
        }
    }
    std::vector<cplx> cell_sum(max_cells, cplx{0.0, 0.0});
    std::vector<std::int32_t> cell_size(max_cells, 0);
    std::vector<std::uint32_t> stamp(max_cells, 0);
    std::uint32_t generation = 0;

    // calibrate the yardstick to f's own value distribution so that
    // score(cf) = score(f) and balanced indicators are scored exactly
    if (lp_norm(f, 2.0) == 0.0) return std::nullopt;
    const NoiseModel null_model = NoiseModel::fit(f);
    std::vector<std::pair<double, double>> null_cache(static_cast<std::size_t>(n) + 1,
                                                      {-1.0, 0.0});
    auto null_of = [&](std::int64_t size) -> const std::pair<double, double>& {
        auto& slot = null_cache[static_cast<std::size_t>(size)];
        if (slot.first < 0.0) {
            slot = {null_model.mean_abs(size), null_model.variance(size)};
        }
        return slot;
    };

    double best_score = -std::numeric_limits<double>::infinity();
    double best_corr = 0.0;
    std::size_t best_i = 0, best_j = 0;
    bool found = false;

    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (std::size_t j = i; j < candidates.size(); ++j) {
            const std::int64_t join_q = std::lcm(candidates[i].q_prime, candidates[j].q_prime);
            if (join_q > options.max_join_modulus) continue;
            if (std::lcm(options.modulus_in_use, q * join_q) > total_modulus_cap) continue;
            ++generation;
            const auto span_j = static_cast<std::size_t>(candidates[j].atoms);
            for (std::int64_t x = 1; x <= n; ++x) {
                const auto cell =
                    static_cast<std::size_t>(candidates[i].atom_of[static_cast<std::size_t>(x - 1)]) * span_j +
                    static_cast<std::size_t>(candidates[j].atom_of[static_cast<std::size_t>(x - 1)]);
                if (stamp[cell] != generation) {
                    stamp[cell] = generation;
                    cell_sum[cell] = f(x);
                    cell_size[cell] = 1;
                } else {
                    cell_sum[cell] += f(x);
                    ++cell_size[cell];
                }
            }
            long double corr_acc = 0.0L, mean_acc = 0.0L, var_acc = 0.0L;
            for (std::int64_t x = 1; x <= n; ++x) {
                const auto cell =
                    static_cast<std::size_t>(candidates[i].atom_of[static_cast<std::size_t>(x - 1)]) * span_j +
                    static_cast<std::size_t>(candidates[j].atom_of[static_cast<std::size_t>(x - 1)]);
                if (stamp[cell] == generation) {
                    corr_acc += std::abs(cell_sum[cell]);
                    const auto& [m, var] = null_of(cell_size[cell]);
                    mean_acc += m;
                    var_acc += var;
                    stamp[cell] = generation - 1;  // count each cell once
                }
            }
            const auto corr = static_cast<double>(corr_acc);
            const double sd = std::sqrt(std::max(static_cast<double>(var_acc), 1e-12));
            const double score = (corr - static_cast<double>(mean_acc)) / sd;
            if (score > best_score) {
                best_score = score;
                best_corr = corr;
                best_i = i;
                best_j = j;
                found = true;
            }
        }
    }
    if (!found || best_score < options.min_z || best_corr < options.min_correlation) {
        return std::nullopt;
    }

    const Candidate& ci = candidates[best_i];
    const Candidate& cj = candidates[best_j];
    CorrelationWitness w;
    w.first = ci.sig;
    w.second = cj.sig;
    w.join = join_factors(simple_local_factor(n, ci.sig.resolution, ci.sig.modulus, ci.sig.phase),
                          simple_local_factor(n, cj.sig.resolution, cj.sig.modulus, cj.sig.phase));
    const BoundedFunction proj = project(f, w.join);
    w.phi = conjugate_phase(proj, false);
    // |sum f phi| recomputed from the stored witness
    long double re = 0.0L, im = 0.0L;
    for (std::int64_t x = 1; x <= n; ++x) {
        const cplx t = f(x) * w.phi(x);
        re += t.real();
        im += t.imag();
    }
    w.correlation = std::abs(cplx{static_cast<double>(re), static_cast<double>(im)});
    w.score = best_score;
    return w;
}

}  // namespace nlroth
