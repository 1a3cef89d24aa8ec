#include "nlroth/regularity.hpp"

#include <cmath>
#include <stdexcept>

namespace nlroth {

namespace {

BoundedFunction subtract(const BoundedFunction& f, const BoundedFunction& g) {
    std::vector<cplx> vals(static_cast<std::size_t>(f.length()));
    for (std::int64_t x = 1; x <= f.length(); ++x) {
        vals[static_cast<std::size_t>(x - 1)] = f(x) - g(x);
    }
    return BoundedFunction(std::move(vals), 2.0 * f.bound());
}

}  // namespace

const char* to_string(RegularityStatus s) {
    switch (s) {
        case RegularityStatus::converged: return "converged";
        case RegularityStatus::dimension_cap: return "dimension_cap";
        default: return "search_gap";
    }
}

double energy(const BoundedFunction& f, const Factor& b) {
    const double l2 = lp_norm(project(f, b), 2.0);
    return l2 * l2;
}

RegularityOutput weak_regularize(const CountingParams& p, const BoundedFunction& f,
                                 double delta, const RegularityCaps& caps) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
    if (f.length() != p.N) throw std::invalid_argument("function length must equal N");
    if (!caps.allow_one_bounded) {
        for (const cplx& v : f.values()) {
            if (v.imag() != 0.0 || v.real() < -1e-12 || v.real() > 1.0 + 1e-12) {
                throw std::invalid_argument(
                    "weak_regularize expects values in [0,1]; set allow_one_bounded to relax");
            }
        }
    }

    InverseSearchOptions grid = caps.grid;
    if (grid.resolutions.empty()) grid = default_inverse_options(p.N, p.q);
    const double step_floor =
        caps.step_coefficient * delta * delta * delta * static_cast<double>(p.N);
    grid.min_correlation = std::max(grid.min_correlation, step_floor);

    RegularityOutput out;
    out.factor = Factor::trivial(p.N);
    out.structured = project(f, out.factor);
    out.residual = subtract(f, out.structured);
    out.energy_trace.push_back(energy(f, out.factor));

    while (true) {
        out.residual_estimate = cut_norm_lower(p, out.residual, SlotSet::full, caps.estimator);
        if (out.residual_estimate.lower <= delta) {
            out.status = RegularityStatus::converged;
            break;
        }
        const std::int64_t dim = out.factor.local_meta() ? out.factor.local_meta()->dimension : 0;
        if (dim + 2 > caps.max_dimension) {
            out.status = RegularityStatus::dimension_cap;
            break;
        }
        grid.modulus_in_use =
            out.factor.local_meta() ? std::max<std::int64_t>(out.factor.local_meta()->modulus, 1) : 1;
        const auto witness = inverse_correlation_search(out.residual, p.q, grid);
        if (!witness) {
            out.status = RegularityStatus::search_gap;
            break;
        }
        out.factor = join_factors(out.factor, witness->join);
        out.structured = project(f, out.factor);
        out.residual = subtract(f, out.structured);
        out.energy_trace.push_back(energy(f, out.factor));
        out.step_correlations.push_back(witness->correlation);
        ++out.steps;
    }
    return out;
}

}  // namespace nlroth
