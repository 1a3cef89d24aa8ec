#include "nlroth/factors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nlroth {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t mod_positive(std::int64_t a, std::int64_t b) {
    std::int64_t r = a % b;
    return r < 0 ? r + b : r;
}

}  // namespace

Factor Factor::from_labels(std::int64_t n, std::span<const std::int64_t> labels,
                           std::optional<LocalMeta> meta) {
    if (n < 1) throw std::invalid_argument("factor length must be positive");
    if (static_cast<std::int64_t>(labels.size()) != n) {
        throw std::invalid_argument("label array must have one entry per point");
    }
    Factor f;
    f.n_ = n;
    f.atom_of_.resize(static_cast<std::size_t>(n));
    std::unordered_map<std::int64_t, std::int32_t> remap;
    remap.reserve(labels.size());
    for (std::int64_t x = 0; x < n; ++x) {
        auto [it, inserted] = remap.emplace(labels[static_cast<std::size_t>(x)],
                                            static_cast<std::int32_t>(remap.size()));
        f.atom_of_[static_cast<std::size_t>(x)] = it->second;
        if (inserted) f.atom_sizes_.push_back(0);
        ++f.atom_sizes_[static_cast<std::size_t>(it->second)];
    }
    f.atom_count_ = static_cast<std::int64_t>(f.atom_sizes_.size());
    f.local_ = std::move(meta);
    return f;
}

Factor Factor::trivial(std::int64_t n) {
    std::vector<std::int64_t> labels(static_cast<std::size_t>(n), 0);
    return from_labels(n, labels, LocalMeta{0, n, 1, {}});
}

Factor Factor::singletons(std::int64_t n) {
    std::vector<std::int64_t> labels(static_cast<std::size_t>(n));
    std::iota(labels.begin(), labels.end(), 0);
    return from_labels(n, labels);
}

std::vector<std::int64_t> Factor::atom_elements(std::int64_t id) const {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(atom_size(id)));
    for (std::int64_t x = 1; x <= n_; ++x) {
        if (atom_of(x) == id) out.push_back(x);
    }
    return out;
}

bool Factor::refines(const Factor& coarser) const {
    if (n_ != coarser.n_) return false;
    // each fine atom must sit inside a single coarse atom
    std::vector<std::int64_t> image(static_cast<std::size_t>(atom_count_), -1);
    for (std::int64_t x = 1; x <= n_; ++x) {
        const auto fine = static_cast<std::size_t>(atom_of(x));
        const std::int64_t coarse = coarser.atom_of(x);
        if (image[fine] == -1) {
            image[fine] = coarse;
        } else if (image[fine] != coarse) {
            return false;
        }
    }
    return true;
}

std::int64_t Factor::first_non_progression_atom() const {
    const std::int64_t step = local_ ? local_->modulus : 1;
    std::vector<std::int64_t> last(static_cast<std::size_t>(atom_count_), -1);
    std::vector<bool> seen(static_cast<std::size_t>(atom_count_), false);
    std::vector<bool> bad(static_cast<std::size_t>(atom_count_), false);
    for (std::int64_t x = 1; x <= n_; ++x) {
        const auto id = static_cast<std::size_t>(atom_of(x));
        if (seen[id] && x - last[id] != step) bad[id] = true;
        seen[id] = true;
        last[id] = x;
    }
    for (std::size_t id = 0; id < bad.size(); ++id) {
        if (bad[id] && atom_sizes_[id] > 1) return static_cast<std::int64_t>(id);
    }
    return -1;
}

Progression Factor::atom_progression(std::int64_t id) const {
    const auto elems = atom_elements(id);
    if (elems.empty()) throw std::invalid_argument("empty atom");
    std::int64_t step = local_ ? local_->modulus : 1;
    if (elems.size() >= 2) step = elems[1] - elems[0];
    for (std::size_t i = 1; i < elems.size(); ++i) {
        if (elems[i] - elems[i - 1] != step) {
            throw std::runtime_error("atom is not an arithmetic progression");
        }
    }
    return Progression{elems.front() - step, step, static_cast<std::int64_t>(elems.size())};
}

Factor simple_real_factor(std::int64_t n, std::int64_t m, std::int64_t phase) {
    if (m < 1) throw std::invalid_argument("resolution must be positive");
    if (phase < 0 || phase >= m) throw std::invalid_argument("phase must lie in [0, M)");
    std::vector<std::int64_t> labels(static_cast<std::size_t>(n));
    for (std::int64_t x = 1; x <= n; ++x) {
        labels[static_cast<std::size_t>(x - 1)] = floor_div(x - 1 + phase, m);
    }
    return Factor::from_labels(n, labels, LocalMeta{1, m, 1, {phase}});
}

Factor simple_congruence_factor(std::int64_t n, std::int64_t q) {
    if (q < 1) throw std::invalid_argument("modulus must be positive");
    std::vector<std::int64_t> labels(static_cast<std::size_t>(n));
    for (std::int64_t x = 1; x <= n; ++x) {
        labels[static_cast<std::size_t>(x - 1)] = mod_positive(x, q);
    }
    return Factor::from_labels(n, labels, LocalMeta{1, n, q, {0}});
}

Factor simple_local_factor(std::int64_t n, std::int64_t m, std::int64_t q,
                           std::int64_t phase) {
    const Factor real = simple_real_factor(n, m, phase);
    const Factor cong = simple_congruence_factor(n, q);
    std::vector<std::int64_t> labels(static_cast<std::size_t>(n));
    for (std::int64_t x = 1; x <= n; ++x) {
        labels[static_cast<std::size_t>(x - 1)] = real.atom_of(x) * q + cong.atom_of(x);
    }
    return Factor::from_labels(n, labels, LocalMeta{1, m, q, {phase}});
}

Factor join_factors(std::span<const Factor> factors) {
    if (factors.empty()) throw std::invalid_argument("join of zero factors");
    const std::int64_t n = factors[0].length();
    std::optional<LocalMeta> meta = LocalMeta{0, n, 1, {}};
    for (const Factor& f : factors) {
        if (f.length() != n) throw std::invalid_argument("join requires equal lengths");
        if (!f.local_meta()) {
            meta.reset();
            continue;
        }
        if (!meta) continue;
        meta->dimension += f.local_meta()->dimension;
        meta->resolution = std::min(meta->resolution, f.local_meta()->resolution);
        const std::int64_t g = std::gcd(meta->modulus, f.local_meta()->modulus);
        const std::int64_t other = f.local_meta()->modulus / g;
        if (meta->modulus > (std::int64_t{1} << 62) / std::max<std::int64_t>(other, 1)) {
            throw std::overflow_error("join modulus lcm overflow");
        }
        meta->modulus *= other;
        for (std::int64_t p : f.local_meta()->phases) meta->phases.push_back(p);
    }
    // fold pairwise, compacting ids each round so labels stay small
    std::vector<std::int64_t> labels(static_cast<std::size_t>(n), 0);
    for (const Factor& f : factors) {
        for (std::int64_t x = 1; x <= n; ++x) {
            auto& l = labels[static_cast<std::size_t>(x - 1)];
            l = l * f.atom_count() + f.atom_of(x);
        }
        const Factor compact = Factor::from_labels(n, labels);
        for (std::int64_t x = 1; x <= n; ++x) {
            labels[static_cast<std::size_t>(x - 1)] = compact.atom_of(x);
        }
    }
    return Factor::from_labels(n, labels, std::move(meta));
}

Factor join_factors(const Factor& a, const Factor& b) {
    const Factor fs[2] = {a, b};
    return join_factors(std::span<const Factor>(fs, 2));
}

BoundedFunction project(const BoundedFunction& f, const Factor& b) {
    if (f.length() != b.length()) throw std::invalid_argument("length mismatch in projection");
    const std::size_t atoms = static_cast<std::size_t>(b.atom_count());
    std::vector<cplx> means(atoms, cplx{0.0, 0.0});
    for (std::int64_t x = 1; x <= b.length(); ++x) {
        means[static_cast<std::size_t>(b.atom_of(x))] += f(x);
    }
    for (std::size_t id = 0; id < atoms; ++id) {
        means[id] /= static_cast<double>(b.atom_size(static_cast<std::int64_t>(id)));
    }
    std::vector<cplx> vals(static_cast<std::size_t>(b.length()));
    for (std::int64_t x = 1; x <= b.length(); ++x) {
        vals[static_cast<std::size_t>(x - 1)] = means[static_cast<std::size_t>(b.atom_of(x))];
    }
    return BoundedFunction(std::move(vals), f.bound());
}

std::int64_t factor_size_bound(std::int64_t d, std::int64_t m, std::int64_t q,
                               std::int64_t n) {
    if (d < 1 || m < 1 || q < 1 || n < 1) throw std::invalid_argument("parameters must be positive");
    const double raw = static_cast<double>(q) * static_cast<double>(d) *
                       (static_cast<double>(n) / static_cast<double>(m) + 2.0);
    return static_cast<std::int64_t>(std::ceil(raw - 1e-9));
}

LocalFunction::LocalFunction(std::int64_t resolution, std::int64_t modulus,
                             std::int64_t phase, double bound)
    : resolution_(resolution), modulus_(modulus), phase_(phase), bound_(bound) {
    if (resolution < 1 || modulus < 1) throw std::invalid_argument("resolution and modulus must be positive");
    if (phase < 0 || phase >= resolution) throw std::invalid_argument("phase must lie in [0, M)");
}

LocalFunction LocalFunction::from_samples(std::int64_t resolution, std::int64_t modulus,
                                          std::int64_t phase, std::int64_t n,
                                          const std::function<cplx(std::int64_t)>& fn,
                                          double bound) {
    LocalFunction phi(resolution, modulus, phase, bound);
    for (std::int64_t x = 1; x <= n; ++x) {
        const std::int64_t k = phi.interval_index(x);
        const std::int64_t r = mod_positive(x, modulus);
        if (!phi.table_.count(phi.key(k, r))) phi.set_piece(k, r, fn(x));
    }
    return phi;
}

std::int64_t LocalFunction::interval_index(std::int64_t x) const {
    return floor_div(x - 1 + phase_, resolution_);
}

void LocalFunction::set_piece(std::int64_t interval_index, std::int64_t residue, cplx value) {
    if (std::abs(value) > bound_ + 1e-12) throw std::invalid_argument("piece value exceeds bound");
    table_[key(interval_index, residue)] = value;
}

cplx LocalFunction::operator()(std::int64_t x) const {
    const auto it = table_.find(key(interval_index(x), mod_positive(x, modulus_)));
    return it == table_.end() ? cplx{0.0, 0.0} : it->second;
}

BoundedFunction LocalFunction::to_bounded_function(std::int64_t n) const {
    std::vector<cplx> vals(static_cast<std::size_t>(n));
    for (std::int64_t x = 1; x <= n; ++x) vals[static_cast<std::size_t>(x - 1)] = (*this)(x);
    return BoundedFunction(std::move(vals), bound_);
}

Factor local_function_levels(const LocalFunction& phi, std::int64_t n) {
    return simple_local_factor(n, phi.resolution(), phi.modulus(), phi.phase());
}

}  // namespace nlroth
