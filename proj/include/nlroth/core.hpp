#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

// Shared substrate: complex-valued functions on [N] = {1,...,N}, subsets of
// [N], arithmetic progressions, inner products and lp norms.
//
// Indexing convention: the public interface is 1-based ({1..N}); storage is
// 0-based internally (value of x lives at values_[x-1]). Evaluation outside
// [N] returns 0, matching functions supported in [N].

namespace nlroth {

using cplx = std::complex<double>;

/// A complex-valued function on [N] with a uniform bound. Immutable after
/// construction; evaluation outside [1, N] returns 0.
class BoundedFunction {
public:
    BoundedFunction() = default;

    /// Zero function of the given length.
    explicit BoundedFunction(std::int64_t n, double bound = 1.0);

    /// Takes ownership of values (0-based storage for x = 1..N).
    /// Throws if any |value| exceeds bound + 1e-12.
    BoundedFunction(std::vector<cplx> values, double bound = 1.0);

    static BoundedFunction constant(std::int64_t n, cplx value);

    /// Builds from a callable evaluated at x = 1..n.
    static BoundedFunction from_samples(std::int64_t n,
                                        const std::function<cplx(std::int64_t)>& fn,
                                        double bound = 1.0);

    std::int64_t length() const { return static_cast<std::int64_t>(values_.size()); }
    double bound() const { return bound_; }

    /// 1-based evaluation; 0 outside [1, N].
    cplx operator()(std::int64_t x) const {
        if (x < 1 || x > length()) return cplx{0.0, 0.0};
        return values_[static_cast<std::size_t>(x - 1)];
    }

    std::span<const cplx> values() const { return values_; }

    /// True when every imaginary part is at most tol in magnitude.
    bool is_real(double tol = 1e-12) const;

private:
    std::vector<cplx> values_;
    double bound_ = 1.0;
};

/// A subset of [N] stored as a bitset with cached cardinality.
class IntegerSet {
public:
    IntegerSet() = default;
    explicit IntegerSet(std::int64_t n);

    static IntegerSet from_elements(std::int64_t n, std::span<const std::int64_t> xs);
    static IntegerSet full(std::int64_t n);

    std::int64_t length() const { return n_; }
    std::int64_t cardinality() const { return cardinality_; }
    double density() const { return n_ == 0 ? 0.0 : static_cast<double>(cardinality_) / static_cast<double>(n_); }

    bool contains(std::int64_t x) const {
        if (x < 1 || x > n_) return false;
        const auto i = static_cast<std::uint64_t>(x - 1);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void insert(std::int64_t x);
    void erase(std::int64_t x);

    std::vector<std::int64_t> elements() const;

    /// Word-level access for counting kernels. Bit i (0-based) is element i+1.
    std::span<const std::uint64_t> words() const { return words_; }

private:
    std::int64_t n_ = 0;
    std::int64_t cardinality_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Arithmetic progression {a + Q*k : k = 1..L}. The 1-based element
/// convention matches rescaling maps of the form a + qq'*[N'].
struct Progression {
    std::int64_t start = 0;   // a
    std::int64_t step = 1;    // Q >= 1
    std::int64_t length = 0;  // L >= 0

    std::int64_t element(std::int64_t k) const { return start + step * k; }
    std::int64_t first() const { return element(1); }
    std::int64_t last() const { return element(length); }
    bool contains(std::int64_t x) const {
        if (length == 0) return false;
        const std::int64_t d = x - start;
        if (d < step || d > step * length) return false;
        return d % step == 0;
    }
};

BoundedFunction indicator(const IntegerSet& a);

/// 1_A - |A|/N, the mean-zero part of the indicator.
BoundedFunction balanced_part(const IntegerSet& a);

/// <f,g> = sum_x f(x) conj(g(x)). Throws on length mismatch.
cplx inner_product(const BoundedFunction& f, const BoundedFunction& g);

/// (sum |f(x)|^p)^(1/p); p = infinity gives the max modulus. Requires p >= 1.
double lp_norm(const BoundedFunction& f, double p);

}  // namespace nlroth
