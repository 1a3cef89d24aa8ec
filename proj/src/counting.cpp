#include "nlroth/counting.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace nlroth {

namespace {

using u64 = std::uint64_t;
using i128 = __int128;

/// Largest M with q*M^2 <= n.
std::int64_t derive_resolution(std::int64_t q, std::int64_t n) {
    auto fits = [&](std::int64_t m) {
        return static_cast<i128>(q) * m * m <= static_cast<i128>(n);
    };
    std::int64_t m = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(n) / static_cast<double>(q))));
    m = std::max<std::int64_t>(m, 0);
    while (!fits(m)) --m;
    while (fits(m + 1)) ++m;
    return m;
}

/// Word w of the bitset shifted down by s (bit i of result = bit i+s of a).
inline u64 shift_down_word(std::span<const u64> a, std::int64_t s, std::size_t w) {
    const std::size_t nw = a.size();
    const std::size_t k = w + static_cast<std::size_t>(s >> 6);
    const unsigned r = static_cast<unsigned>(s & 63);
    if (k >= nw) return 0;
    u64 lo = a[k] >> r;
    if (r != 0 && k + 1 < nw) lo |= a[k + 1] << (64 - r);
    return lo;
}

/// Word w of the bitset shifted up by s (bit i of result = bit i-s of a).
inline u64 shift_up_word(std::span<const u64> a, std::int64_t s, std::size_t w) {
    const auto k = static_cast<std::int64_t>(w) - (s >> 6);
    const unsigned r = static_cast<unsigned>(s & 63);
    if (k < 0) return 0;
    u64 hi = a[static_cast<std::size_t>(k)] << r;
    if (r != 0 && k >= 1) hi |= a[static_cast<std::size_t>(k - 1)] >> (64 - r);
    return hi;
}

std::int64_t count_pairs_bitset(const IntegerSet& a, std::int64_t q,
                                std::int64_t y_lo, std::int64_t y_hi) {
    const auto words = a.words();
    i128 total = 0;
    for (std::int64_t y = y_lo; y <= y_hi; ++y) {
        const std::int64_t s1 = y;
        const std::int64_t s2 = q * y * y;
        if (s2 >= a.length()) break;  // x + q y^2 <= N impossible for x >= 1
        i128 partial = 0;
        for (std::size_t w = 0; w < words.size(); ++w) {
            const u64 m = words[w] & shift_down_word(words, s1, w) & shift_down_word(words, s2, w);
            partial += std::popcount(m);
        }
        total += partial;
    }
    return static_cast<std::int64_t>(total);
}

bool has_small_integer_values(const BoundedFunction& f) {
    for (const cplx& v : f.values()) {
        if (v.imag() != 0.0) return false;
        const double re = v.real();
        if (re != std::rint(re) || std::abs(re) > 8.0) return false;
    }
    return true;
}

}  // namespace

CountingParams CountingParams::make(std::int64_t q, std::int64_t n) {
    if (q < 1) throw std::invalid_argument("q must be positive");
    if (n < 1) throw std::invalid_argument("N must be positive");
    if (q > n) throw std::invalid_argument("q must not exceed N");
    CountingParams p;
    p.q = q;
    p.N = n;
    p.M = derive_resolution(q, n);
    return p;
}

cplx count_operator(const CountingParams& p, const BoundedFunction& f0,
                    const BoundedFunction& f1, const BoundedFunction& f2,
                    bool include_zero_y) {
    for (const BoundedFunction* f : {&f0, &f1, &f2}) {
        if (f->length() < p.N) throw std::invalid_argument("function shorter than N");
    }
    const std::int64_t y_lo = include_zero_y ? 0 : 1;
    const double denom = static_cast<double>(p.N) * static_cast<double>(p.M - y_lo + 1);

    if (has_small_integer_values(f0) && has_small_integer_values(f1) &&
        has_small_integer_values(f2)) {
        // integer accumulation: exact whenever all values are small integers
        auto iv = [](const BoundedFunction& f, std::int64_t x) -> std::int64_t {
            return static_cast<std::int64_t>(std::rint(f(x).real()));
        };
        i128 total = 0;
        for (std::int64_t y = y_lo; y <= p.M; ++y) {
            const std::int64_t s2 = p.q * y * y;
            for (std::int64_t x = 1; x <= p.N; ++x) {
                const std::int64_t a = iv(f0, x);
                if (a == 0) continue;
                const std::int64_t b = iv(f1, x + y);
                if (b == 0) continue;
                total += static_cast<i128>(a) * b * iv(f2, x + s2);
            }
        }
        return cplx{static_cast<double>(static_cast<long double>(total)) / denom, 0.0};
    }

    long double re = 0.0L, im = 0.0L;
    for (std::int64_t y = y_lo; y <= p.M; ++y) {
        const std::int64_t s2 = p.q * y * y;
        for (std::int64_t x = 1; x <= p.N; ++x) {
            const cplx t = f0(x) * f1(x + y) * f2(x + s2);
            re += t.real();
            im += t.imag();
        }
    }
    return cplx{static_cast<double>(re) / denom, static_cast<double>(im) / denom};
}

std::int64_t count_configurations(const IntegerSet& a, const CountingParams& p) {
    if (a.length() != p.N) throw std::invalid_argument("set length does not match params");
    return count_pairs_bitset(a, p.q, 1, p.M);
}

ConfigurationCounts count_configurations_all(const IntegerSet& a, std::int64_t q) {
    if (q < 1) throw std::invalid_argument("q must be positive");
    const std::int64_t n = a.length();
    ConfigurationCounts counts;
    // forward: y >= 1 needs q y^2 <= N-1
    const std::int64_t y_max = n > 1 ? derive_resolution(q, n - 1) : 0;
    counts.forward = count_pairs_bitset(a, q, 1, y_max);
    // backward: y = -z gives x, x-z, x+q z^2; needs q z^2 + z + 1 <= N
    const auto words = a.words();
    i128 back = 0;
    for (std::int64_t z = 1; q * z * z + z + 1 <= n; ++z) {
        const std::int64_t s2 = q * z * z;
        for (std::size_t w = 0; w < words.size(); ++w) {
            const u64 m = words[w] & shift_up_word(words, z, w) & shift_down_word(words, s2, w);
            back += std::popcount(m);
        }
    }
    counts.backward = static_cast<std::int64_t>(back);
    return counts;
}

std::optional<ConfigurationWitness> find_configuration(const IntegerSet& a, std::int64_t q) {
    const std::int64_t n = a.length();
    for (std::int64_t y = 1; q * y * y < n; ++y) {
        const std::int64_t s2 = q * y * y;
        for (std::int64_t x = 1; x + s2 <= n; ++x) {
            if (a.contains(x) && a.contains(x + y) && a.contains(x + s2)) {
                return ConfigurationWitness{x, y};
            }
        }
    }
    return std::nullopt;
}

bool is_configuration_free(const IntegerSet& a, const CountingParams& p) {
    if (a.length() != p.N) throw std::invalid_argument("set length does not match params");
    return !find_configuration(a, p.q).has_value();
}

double l1_control_bound(const CountingParams& p, const BoundedFunction& f0,
                        const BoundedFunction& f1, const BoundedFunction& f2, int slot) {
    if (slot < 0 || slot > 2) throw std::invalid_argument("slot must be 0, 1 or 2");
    const BoundedFunction* fs[3] = {&f0, &f1, &f2};
    const double inf = std::numeric_limits<double>::infinity();
    double bound = lp_norm(*fs[slot], 1.0) / static_cast<double>(p.N);
    for (int j = 0; j < 3; ++j) {
        if (j != slot) bound *= lp_norm(*fs[j], inf);
    }
    return bound;
}

Polynomial::Polynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty() || coeffs_[0] != 0) {
        throw std::invalid_argument("polynomial must have zero constant term");
    }
    degree_ = 0;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (coeffs_[j] != 0) degree_ = static_cast<int>(j);
    }
    if (degree_ == 0) throw std::invalid_argument("polynomial must be nonzero");
}

Polynomial Polynomial::monomial(int degree, std::int64_t coeff) {
    if (degree < 1) throw std::invalid_argument("monomial degree must be >= 1");
    std::vector<std::int64_t> c(static_cast<std::size_t>(degree) + 1, 0);
    c.back() = coeff;
    return Polynomial(std::move(c));
}

std::int64_t Polynomial::operator()(std::int64_t y) const {
    i128 acc = 0;
    for (std::size_t j = coeffs_.size(); j-- > 0;) {
        acc = acc * y + coeffs_[j];
    }
    return static_cast<std::int64_t>(acc);
}

PolynomialFamily::PolynomialFamily(std::vector<Polynomial> polys) : polys_(std::move(polys)) {
    if (polys_.empty()) throw std::invalid_argument("polynomial family must be nonempty");
    for (std::size_t i = 1; i < polys_.size(); ++i) {
        if (polys_[i - 1].degree() >= polys_[i].degree()) {
            throw std::invalid_argument("polynomial degrees must be strictly increasing");
        }
    }
}

std::int64_t integer_root(std::int64_t n, int d) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (d < 1) throw std::invalid_argument("root degree must be positive");
    auto pow_le = [&](std::int64_t k) {
        i128 acc = 1;
        for (int j = 0; j < d; ++j) {
            acc *= k;
            if (acc > static_cast<i128>(n)) return false;
        }
        return true;
    };
    std::int64_t k = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(n), 1.0 / d)));
    k = std::max<std::int64_t>(k, 1);
    while (!pow_le(k)) --k;
    while (pow_le(k + 1)) ++k;
    return k;
}

cplx polynomial_counting_operator(std::int64_t n, const PolynomialFamily& fam,
                                  std::span<const BoundedFunction> fs) {
    if (n < 1) throw std::invalid_argument("N must be positive");
    if (fs.size() != fam.size() + 1) {
        throw std::invalid_argument("need one function per polynomial plus f0");
    }
    const std::int64_t y_max = integer_root(n, fam.max_degree());
    long double re = 0.0L, im = 0.0L;
    std::vector<std::int64_t> shifts(fam.size());
    for (std::int64_t y = 1; y <= y_max; ++y) {
        for (std::size_t i = 0; i < fam.size(); ++i) shifts[i] = fam[i](y);
        for (std::int64_t x = 1; x <= n; ++x) {
            cplx t = fs[0](x);
            for (std::size_t i = 0; i < fam.size() && t != cplx{0.0, 0.0}; ++i) {
                t *= fs[i + 1](x + shifts[i]);
            }
            re += t.real();
            im += t.imag();
        }
    }
    const double denom = static_cast<double>(n) * static_cast<double>(y_max);
    return cplx{static_cast<double>(re) / denom, static_cast<double>(im) / denom};
}

}  // namespace nlroth
