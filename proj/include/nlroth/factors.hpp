#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "nlroth/core.hpp"

// Factors (partitions of [N]), local functions, the projection operator
// Pi_B (atom-wise conditional expectation), and the atom-count bound.
//
// A simple local factor of resolution M, modulus q and phase p partitions
// [N] into the pieces (interval of the length-M grid shifted by p) cap
// (congruence class mod q). Every atom of a local factor of modulus q is
// an arithmetic progression of step q.

namespace nlroth {

/// Metadata carried by local factors: dimension d (number of simple local
/// factors joined), resolution floor M (min over components), modulus q
/// (lcm over components), and the component phases.
struct LocalMeta {
    std::int64_t dimension = 0;
    std::int64_t resolution = 0;
    std::int64_t modulus = 1;
    std::vector<std::int64_t> phases;
};

/// A partition of [N] into atoms with contiguous ids (0-based, ordered by
/// first occurrence). Immutable after construction.
class Factor {
public:
    Factor() = default;

    /// Builds from an arbitrary labelling; atom ids are compacted to
    /// first-occurrence order.
    static Factor from_labels(std::int64_t n, std::span<const std::int64_t> labels,
                              std::optional<LocalMeta> meta = std::nullopt);

    static Factor trivial(std::int64_t n);
    static Factor singletons(std::int64_t n);

    std::int64_t length() const { return n_; }
    std::int64_t atom_count() const { return atom_count_; }

    /// Atom id of x (1-based x).
    std::int64_t atom_of(std::int64_t x) const { return atom_of_[static_cast<std::size_t>(x - 1)]; }
    std::int64_t atom_size(std::int64_t id) const { return atom_sizes_[static_cast<std::size_t>(id)]; }

    std::vector<std::int64_t> atom_elements(std::int64_t id) const;

    const std::optional<LocalMeta>& local_meta() const { return local_; }

    /// True if every atom of other is a union of atoms of *this.
    bool refines(const Factor& coarser) const;

    /// For a local factor: every atom must be an arithmetic progression of
    /// step equal to the modulus (singletons count). Returns the offending
    /// atom id or -1.
    std::int64_t first_non_progression_atom() const;

    /// Atom id as Progression {start, step, length}; step is the local
    /// modulus when metadata is present (1 otherwise), after checking the
    /// atom really is such a progression.
    Progression atom_progression(std::int64_t id) const;

private:
    std::int64_t n_ = 0;
    std::int64_t atom_count_ = 0;
    std::vector<std::int32_t> atom_of_;
    std::vector<std::int64_t> atom_sizes_;
    std::optional<LocalMeta> local_;
};

/// Partition of [N] induced by the length-M interval grid anchored at
/// -phase, i.e. atoms [kM+1-phase, (k+1)M-phase] cap [N]. 0 <= phase < M.
Factor simple_real_factor(std::int64_t n, std::int64_t m, std::int64_t phase = 0);

/// Partition of [N] into congruence classes mod q (min(q, N) atoms).
Factor simple_congruence_factor(std::int64_t n, std::int64_t q);

/// Simple local factor: real(M, phase) joined with congruence(q).
Factor simple_local_factor(std::int64_t n, std::int64_t m, std::int64_t q,
                           std::int64_t phase = 0);

/// Common refinement: atoms are the nonempty intersections. Metadata
/// combines when all inputs carry it (dimension sums, resolution min,
/// modulus lcm with overflow check).
Factor join_factors(std::span<const Factor> factors);
Factor join_factors(const Factor& a, const Factor& b);

/// Pi_B f: atom-wise mean of f. Constant on atoms, preserves the bound,
/// idempotent.
BoundedFunction project(const BoundedFunction& f, const Factor& b);

/// ceil(q * d * (N/M + 2)), an upper bound for the atom count of any local
/// factor with these parameters.
std::int64_t factor_size_bound(std::int64_t d, std::int64_t m, std::int64_t q,
                               std::int64_t n);

/// A function on Z constant on (length-M interval) cap (class mod q)
/// pieces. Values are stored per piece; unset pieces evaluate to 0.
class LocalFunction {
public:
    LocalFunction(std::int64_t resolution, std::int64_t modulus, std::int64_t phase = 0,
                  double bound = 1.0);

    /// Samples fn on [N]; within each piece the value at the piece's
    /// smallest point of [N] is used. fn must be piece-constant for the
    /// result to reproduce it.
    static LocalFunction from_samples(std::int64_t resolution, std::int64_t modulus,
                                      std::int64_t phase, std::int64_t n,
                                      const std::function<cplx(std::int64_t)>& fn,
                                      double bound = 1.0);

    std::int64_t resolution() const { return resolution_; }
    std::int64_t modulus() const { return modulus_; }
    std::int64_t phase() const { return phase_; }
    double bound() const { return bound_; }

    void set_piece(std::int64_t interval_index, std::int64_t residue, cplx value);
    cplx operator()(std::int64_t x) const;

    /// Interval index of x in the anchored grid: floor((x-1+phase)/M).
    std::int64_t interval_index(std::int64_t x) const;

    BoundedFunction to_bounded_function(std::int64_t n) const;

private:
    std::int64_t key(std::int64_t interval_index, std::int64_t residue) const {
        return interval_index * modulus_ + residue;
    }
    std::int64_t resolution_;
    std::int64_t modulus_;
    std::int64_t phase_;
    double bound_;
    std::unordered_map<std::int64_t, cplx> table_;
};

/// The simple local factor of phi's (M, q, phase) grid restricted to [N].
/// phi is measurable with respect to the result: project(phi, result) == phi.
Factor local_function_levels(const LocalFunction& phi, std::int64_t n);

}  // namespace nlroth
