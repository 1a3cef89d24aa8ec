#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlroth/core.hpp"

// The counting operator
//
//   Lambda_{q,N}(f0,f1,f2) = E_{x in [N]} E_{y in [M]} f0(x) f1(x+y) f2(x+q y^2),
//
// with M = floor(sqrt(N/q)), plus exact configuration counting for sets,
// the l1 control bound, and the generalized polynomial counting operator.

namespace nlroth {

/// The pair (q, N) with the derived y-range M = floor(sqrt(N/q)),
/// i.e. the unique M with q*M^2 <= N < q*(M+1)^2.
struct CountingParams {
    std::int64_t q = 1;
    std::int64_t N = 1;
    std::int64_t M = 1;

    static CountingParams make(std::int64_t q, std::int64_t n);
};

/// A configuration x, x+y, x+q*y^2 inside a set, reported when found.
struct ConfigurationWitness {
    std::int64_t x = 0;
    std::int64_t y = 0;
};

/// Thrown when an operation requires a configuration-free set but the
/// input contains a configuration.
class configuration_error : public std::runtime_error {
public:
    configuration_error(std::int64_t x, std::int64_t y)
        : std::runtime_error("set contains configuration x=" + std::to_string(x) +
                             " y=" + std::to_string(y)),
          witness{x, y} {}
    ConfigurationWitness witness;
};

/// Exact counts of configurations over the full admissible y-range
/// (all three points in [N]); forward is y >= 1, backward is y <= -1.
/// The two signs are reported separately.
struct ConfigurationCounts {
    std::int64_t forward = 0;
    std::int64_t backward = 0;
};

/// The counting operator. Functions shorter than N are rejected; values at
/// arguments beyond a function's length contribute 0. When include_zero_y
/// is set the inner average runs over y in {0} u [M] (the summing-over-y>=0
/// variant that makes the cut norm a genuine norm).
cplx count_operator(const CountingParams& p, const BoundedFunction& f0,
                    const BoundedFunction& f1, const BoundedFunction& f2,
                    bool include_zero_y = false);

/// Exact number of pairs (x, y), y in [M], with x, x+y, x+q*y^2 all in A.
/// Equals Lambda_{q,N}(1_A) * N * M as an integer.
std::int64_t count_configurations(const IntegerSet& a, const CountingParams& p);

/// Exact forward/backward counts over every y with all three points in [N].
ConfigurationCounts count_configurations_all(const IntegerSet& a, std::int64_t q);

/// First forward configuration in (y, x) lexicographic order, if any.
std::optional<ConfigurationWitness> find_configuration(const IntegerSet& a, std::int64_t q);

/// True iff A has no configuration x, x+y, x+q*y^2 with y >= 1 and
/// x+q*y^2 <= N. This scans the full range y <= sqrt((N-1)/q), beyond the
/// operator's y in [M]; backward (y <= -1) configurations are counted
/// separately by count_configurations_all.
bool is_configuration_free(const IntegerSet& a, const CountingParams& p);

/// N^{-1} ||f_i||_1 * prod_{j != i} ||f_j||_inf, which dominates |Lambda|.
double l1_control_bound(const CountingParams& p, const BoundedFunction& f0,
                        const BoundedFunction& f1, const BoundedFunction& f2, int slot);

/// Integer-coefficient polynomial with zero constant term.
class Polynomial {
public:
    /// coeffs[j] is the coefficient of y^j; coeffs[0] must be 0.
    explicit Polynomial(std::vector<std::int64_t> coeffs);

    static Polynomial monomial(int degree, std::int64_t coeff = 1);

    int degree() const { return degree_; }
    std::int64_t operator()(std::int64_t y) const;

private:
    std::vector<std::int64_t> coeffs_;
    int degree_ = 0;
};

/// P_1, ..., P_m with strictly increasing degrees.
class PolynomialFamily {
public:
    explicit PolynomialFamily(std::vector<Polynomial> polys);

    std::size_t size() const { return polys_.size(); }
    const Polynomial& operator[](std::size_t i) const { return polys_[i]; }
    int max_degree() const { return polys_.back().degree(); }

private:
    std::vector<Polynomial> polys_;
};

/// floor(N^{1/d}) computed with exact integer arithmetic.
std::int64_t integer_root(std::int64_t n, int d);

/// E_{x in [N]} E_{y in [floor(N^{1/deg P_m})]} f_0(x) prod_i f_i(x + P_i(y)).
/// fs must hold m+1 functions (f_0 first). Specializes to count_operator
/// for the family (y, y^2) with q = 1.
cplx polynomial_counting_operator(std::int64_t n, const PolynomialFamily& fam,
                                  std::span<const BoundedFunction> fs);

}  // namespace nlroth
