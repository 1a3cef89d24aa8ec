#include "nlroth/core.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlroth {

namespace {

void check_length(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("length N must be positive");
}

}  // namespace

BoundedFunction::BoundedFunction(std::int64_t n, double bound) : bound_(bound) {
    check_length(n);
    if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
    values_.assign(static_cast<std::size_t>(n), cplx{0.0, 0.0});
}

BoundedFunction::BoundedFunction(std::vector<cplx> values, double bound)
    : values_(std::move(values)), bound_(bound) {
    check_length(static_cast<std::int64_t>(values_.size()));
    if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
    for (const cplx& v : values_) {
        if (std::abs(v) > bound_ + 1e-12) {
            throw std::invalid_argument("function value exceeds declared bound");
        }
    }
}

BoundedFunction BoundedFunction::constant(std::int64_t n, cplx value) {
    check_length(n);
    return BoundedFunction(std::vector<cplx>(static_cast<std::size_t>(n), value),
                           std::max(1.0, std::abs(value)));
}

BoundedFunction BoundedFunction::from_samples(std::int64_t n,
                                              const std::function<cplx(std::int64_t)>& fn,
                                              double bound) {
    check_length(n);
    std::vector<cplx> vals(static_cast<std::size_t>(n));
    for (std::int64_t x = 1; x <= n; ++x) vals[static_cast<std::size_t>(x - 1)] = fn(x);
    return BoundedFunction(std::move(vals), bound);
}

bool BoundedFunction::is_real(double tol) const {
    for (const cplx& v : values_) {
        if (std::abs(v.imag()) > tol) return false;
    }
    return true;
}

IntegerSet::IntegerSet(std::int64_t n) : n_(n) {
    check_length(n);
    words_.assign(static_cast<std::size_t>((n + 63) / 64), 0u);
}

IntegerSet IntegerSet::from_elements(std::int64_t n, std::span<const std::int64_t> xs) {
    IntegerSet s(n);
    for (std::int64_t x : xs) s.insert(x);
    return s;
}

IntegerSet IntegerSet::full(std::int64_t n) {
    IntegerSet s(n);
    for (std::int64_t x = 1; x <= n; ++x) s.insert(x);
    return s;
}

void IntegerSet::insert(std::int64_t x) {
    if (x < 1 || x > n_) throw std::out_of_range("element outside [1, N]");
    const auto i = static_cast<std::uint64_t>(x - 1);
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (!(words_[i >> 6] & mask)) {
        words_[i >> 6] |= mask;
        ++cardinality_;
    }
}

void IntegerSet::erase(std::int64_t x) {
    if (x < 1 || x > n_) throw std::out_of_range("element outside [1, N]");
    const auto i = static_cast<std::uint64_t>(x - 1);
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (words_[i >> 6] & mask) {
        words_[i >> 6] &= ~mask;
        --cardinality_;
    }
}

std::vector<std::int64_t> IntegerSet::elements() const {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(cardinality_));
    for (std::int64_t x = 1; x <= n_; ++x) {
        if (contains(x)) out.push_back(x);
    }
    return out;
}

BoundedFunction indicator(const IntegerSet& a) {
    std::vector<cplx> vals(static_cast<std::size_t>(a.length()));
    for (std::int64_t x = 1; x <= a.length(); ++x) {
        vals[static_cast<std::size_t>(x - 1)] = a.contains(x) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
    }
    return BoundedFunction(std::move(vals), 1.0);
}

BoundedFunction balanced_part(const IntegerSet& a) {
    const double delta = a.density();
    std::vector<cplx> vals(static_cast<std::size_t>(a.length()));
    for (std::int64_t x = 1; x <= a.length(); ++x) {
        vals[static_cast<std::size_t>(x - 1)] = cplx{(a.contains(x) ? 1.0 : 0.0) - delta, 0.0};
    }
    return BoundedFunction(std::move(vals), 1.0);
}

cplx inner_product(const BoundedFunction& f, const BoundedFunction& g) {
    if (f.length() != g.length()) throw std::invalid_argument("length mismatch in inner product");
    // long double accumulation keeps repeated runs stable to 1e-12
    long double re = 0.0L, im = 0.0L;
    const auto fv = f.values();
    const auto gv = g.values();
    for (std::size_t i = 0; i < fv.size(); ++i) {
        const cplx t = fv[i] * std::conj(gv[i]);
        re += t.real();
        im += t.imag();
    }
    return cplx{static_cast<double>(re), static_cast<double>(im)};
}

double lp_norm(const BoundedFunction& f, double p) {
    if (p == std::numeric_limits<double>::infinity()) {
        double m = 0.0;
        for (const cplx& v : f.values()) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) throw std::invalid_argument("lp norm requires p >= 1");
    long double acc = 0.0L;
    for (const cplx& v : f.values()) {
        const long double a = std::abs(v);
        if (p == 1.0) {
            acc += a;
        } else if (p == 2.0) {
            acc += a * a;
        } else {
            acc += std::pow(a, static_cast<long double>(p));
        }
    }
    return static_cast<double>(std::pow(acc, 1.0L / static_cast<long double>(p)));
}

}  // namespace nlroth
