#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "freeze/lattice.hpp"
#include "freeze/maps.hpp"

namespace freeze {

/// Raised when the node budget runs out before the search is decided.
/// Deliberately distinct from validation errors: the answer is unknown,
/// never wrong.
class BudgetExceededError : public std::runtime_error {
public:
    explicit BudgetExceededError(std::uint64_t budget)
        : std::runtime_error("node budget of " + std::to_string(budget) +
                             " exhausted; result is inconclusive"),
          budget_(budget) {}
    std::uint64_t budget() const { return budget_; }

private:
    std::uint64_t budget_;
};

/// Individually toggleable pruning rules. With everything off the search
/// degenerates to plain continuity-checked backtracking, which is what the
/// brute-force oracle does.
struct PruneRules {
    bool arc = true;       // arc consistency on the adjacent-or-equal constraint
    bool distance = true;  // images cannot move farther from any fixed anchor
    bool geodesic = true;  // unique shortest paths between fixed points are fixed
    bool pulling = true;   // a moved point pulls the point behind it
    bool interior = true;  // a cube with fixed boundary is fixed throughout
    bool mandatory = true; // close-neighbor witnesses short-circuit the search

    static std::optional<bool PruneRules::*> field_by_name(const std::string& name);
};

struct VerifyOptions {
    std::uint64_t node_budget = 10'000'000;
    int threads = 1;
    PruneRules rules;
};

enum class FreezeStatus { Frozen, NotFrozen };

struct SearchStats {
    std::uint64_t nodes = 0;            // decision nodes expanded
    std::uint64_t seeds_tried = 0;      // seed pairs (x, v) examined
    std::uint64_t arc_removed = 0;      // values pruned by arc/forward filtering
    std::uint64_t distance_removed = 0; // values pruned by the distance rule
    std::uint64_t geodesic_fixed = 0;   // points forced fixed by unique geodesics
    std::uint64_t pulling_removed = 0;  // values pruned by the pulling rule
    std::uint64_t interior_fixed = 0;   // points forced fixed by the interior rule

    void merge(const SearchStats& o);
};

struct VerifyOutcome {
    FreezeStatus status = FreezeStatus::Frozen;
    std::optional<SelfMap> witness; // present iff NotFrozen
    SearchStats stats;

    bool frozen() const { return status == FreezeStatus::Frozen; }
};

/// Decides whether A freezes X: Frozen when the identity is the only
/// continuous self-map fixing A pointwise, otherwise NotFrozen with a
/// verified witness map.
VerifyOutcome verify_freezing(const DigitalImage& X, const PointSet& A, const VerifyOptions& opts = {});

/// Same contract, implemented solely by exhaustive enumeration of
/// continuous self-maps; the independent check for verify_freezing.
VerifyOutcome oracle_verify(const DigitalImage& X, const PointSet& A, const EnumerationOptions& opts = {});

struct RemovalCheck {
    Point removed;
    VerifyOutcome outcome;         // NotFrozen = the point was necessary
    std::string certificate;       // "boundary-witness", "close-neighbor" or "search"
};

struct MinimalityResult {
    bool minimal = false;
    std::vector<RemovalCheck> removals;
};

/// True iff removing any single point of A breaks freezing; each removal
/// carries its witness. Removals are certified without search where one of
/// the constructive witnesses applies.
MinimalityResult is_minimal_freezing(const DigitalImage& X, const PointSet& A,
                                     const VerifyOptions& opts = {});

/// Inclusion-minimal frozen subset of A, removing points in canonical order.
PointSet greedy_minimize(const DigitalImage& X, const PointSet& A, const VerifyOptions& opts = {});

/// Constraint-propagation snapshot: the per-point candidate sets after
/// fixing A, applying the partial assignment, and running every enabled
/// rule to fixpoint.
struct DomainReport {
    bool consistent = true;
    std::vector<PointSet> domains; // per point of X, canonical order
    SearchStats stats;

    const PointSet& domain_of(const DigitalImage& X, const Point& p) const;
    bool all_fixed() const;
};

DomainReport propagate(const DigitalImage& X, const PointSet& A,
                       const std::vector<std::pair<Point, Point>>& partial = {},
                       const VerifyOptions& opts = {});

} // namespace freeze
