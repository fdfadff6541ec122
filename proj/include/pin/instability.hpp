#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pin/netcore.hpp"
#include "pin/types.hpp"

namespace pin {

/// A group lifts the instability when removing it raises lambda1 above
/// lift_level; in partial mode for at least one year of the series, in
/// complete mode for all of them.
struct LiftCriterion {
    double lift_level = 0.5;
    enum class Mode { partial, complete };
    Mode mode = Mode::partial;
};

struct FoundGroup {
    std::vector<NodeId> group;       // sorted ascending
    std::vector<int> lifted_years;
};

struct SearchReport {
    int n = 0;
    double p_lambda = 0;  // lifting fraction in step two, averaged over rounds
    // (country, mean occurrence count among lifting step-two groups), ordered
    // by frequency descending then id; only countries with positive frequency.
    std::vector<std::pair<NodeId, double>> ranking;
    int rounds = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    int top_k = 10;
    std::vector<std::vector<NodeId>> lifting_groups;  // distinct step-two hits, sorted

    struct Round {
        double p_lambda = 0;
        std::vector<std::pair<NodeId, double>> ranking;
    };
    std::vector<Round> rounds_detail;
};

struct OfcQuotient {
    int n = 0;
    double f_found = 0;    // occurrence-weighted OFC share among found nodes
    double f_network = 0;  // OFC share of snapshot nodes, averaged over years
    double q = 0;
    double f_found_distinct = 0;  // distinct-node variant, reported alongside
    double q_distinct = 0;
};

/**
 * lambda1 of the largest strongly-connected component that survives removing
 * `group` (country ids) from the snapshot. Returns nullopt ("core destroyed")
 * when fewer than 3 nodes survive. Throws invariant_error when the group is
 * empty, not a subset of the snapshot or covers all of it.
 */
std::optional<double> lambda_after_removal(const PinSnapshot& s,
                                           std::span<const NodeId> group);

/// Per-year lifting flags for a group against a series of snapshots. A year
/// counts as lifted when the intact lambda1 sits at or below lift_level and
/// the removal raises it above. Groups covering a whole snapshot count as
/// non-lifting ("core destroyed") for that year.
std::vector<bool> lifted_years(std::span<const PinSnapshot> series,
                               std::span<const NodeId> group, double lift_level);

/**
 * All groups of size 1..n_max meeting the criterion, smallest sizes first.
 * Groups containing an already-found smaller group are excluded, matching
 * the reporting convention for the exhaustive search.
 */
std::vector<FoundGroup> exhaustive_search(std::span<const PinSnapshot> series, int n_max,
                                          const LiftCriterion& crit);

/**
 * Statistical two-step breadth-first search for group size n. Step one draws
 * `samples` uniform n-subsets of the non-excluded pool and ranks countries
 * by their frequency in lifting groups. Step two draws ceil(n/2) members
 * from the top_k most frequent countries and the rest from the remaining
 * (not yet drawn) pool, then re-ranks; p_lambda is the lifting fraction of
 * step two. Everything is averaged over `rounds` full repetitions and is
 * deterministic for a given seed.
 */
SearchReport two_step_search(std::span<const PinSnapshot> series, int n, int samples,
                             int rounds, const LiftCriterion& crit,
                             std::vector<NodeId> exclude, std::uint64_t seed, int top_k = 10);

/// Q_OFC(n) = f_OFC(found) / f_OFC(network). Occurrence-weighted over the
/// report's frequencies; absent when the search found nothing.
std::optional<OfcQuotient> ofc_quotient(const SearchReport& report,
                                        const CountryRegistry& registry,
                                        std::span<const PinSnapshot> series);

}  // namespace pin
