#include "pin/instability.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>

#include "parallel.hpp"
#include "pin/rng.hpp"
#include "pin/spectral.hpp"

namespace pin {

std::optional<double> lambda_after_removal(const PinSnapshot& s,
                                           std::span<const NodeId> group) {
    if (group.empty()) throw invariant_error("removal group is empty");
    std::vector<int> keep;
    keep.reserve(s.node_ids.size());
    std::set<NodeId> removed(group.begin(), group.end());
    for (NodeId id : removed)
        if (s.index_of(id) < 0)
            throw invariant_error("removal group contains node " + std::to_string(id) +
                                  " outside the snapshot");
    for (int i = 0; i < s.size(); ++i)
        if (!removed.count(s.node_ids[static_cast<std::size_t>(i)])) keep.push_back(i);
    if (keep.empty()) throw invariant_error("removal group covers the whole snapshot");

    const int m = static_cast<int>(keep.size());
    Eigen::MatrixXd sub(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            sub(a, b) = s.weights(keep[static_cast<std::size_t>(a)],
                                  keep[static_cast<std::size_t>(b)]);

    std::vector<int> core = largest_scc_nodes(sub);
    if (core.size() < 3) return std::nullopt;  // core destroyed

    PinSnapshot survivor;
    survivor.year = s.year;
    survivor.asset_class = s.asset_class;
    survivor.threshold_applied = s.threshold_applied;
    const int k = static_cast<int>(core.size());
    survivor.node_ids.resize(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a)
        survivor.node_ids[static_cast<std::size_t>(a)] =
            s.node_ids[static_cast<std::size_t>(keep[static_cast<std::size_t>(core[static_cast<std::size_t>(a)])])];
    survivor.weights.resize(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            survivor.weights(a, b) = sub(core[static_cast<std::size_t>(a)],
                                         core[static_cast<std::size_t>(b)]);
    return spectrum_summary(survivor).lambda1;
}

namespace {

std::vector<double> base_lambdas(std::span<const PinSnapshot> series) {
    std::vector<double> base;
    base.reserve(series.size());
    for (const auto& s : series) base.push_back(spectrum_summary(s).lambda1);
    return base;
}

// a group lifts a year only when the intact network sits at or below the
// level and the removal pushes lambda1 above it
std::vector<bool> lifted_years_with_base(std::span<const PinSnapshot> series,
                                         std::span<const double> base,
                                         std::span<const NodeId> group, double lift_level) {
    std::vector<bool> lifted;
    lifted.reserve(series.size());
    for (std::size_t y = 0; y < series.size(); ++y) {
        const auto& snapshot = series[y];
        if (base[y] > lift_level) {
            lifted.push_back(false);
            continue;
        }
        std::vector<NodeId> effective;
        for (NodeId id : group)
            if (snapshot.index_of(id) >= 0) effective.push_back(id);
        std::optional<double> lambda;
        if (effective.empty())
            lambda = base[y];
        else if (static_cast<int>(effective.size()) == snapshot.size())
            lambda = std::nullopt;  // nothing survives
        else
            lambda = lambda_after_removal(snapshot, effective);
        lifted.push_back(lambda.has_value() && *lambda > lift_level);
    }
    return lifted;
}

}  // namespace

std::vector<bool> lifted_years(std::span<const PinSnapshot> series,
                               std::span<const NodeId> group, double lift_level) {
    return lifted_years_with_base(series, base_lambdas(series), group, lift_level);
}

namespace {

bool meets_criterion(const std::vector<bool>& lifted, LiftCriterion::Mode mode) {
    if (lifted.empty()) return false;
    if (mode == LiftCriterion::Mode::complete)
        return std::all_of(lifted.begin(), lifted.end(), [](bool b) { return b; });
    return std::any_of(lifted.begin(), lifted.end(), [](bool b) { return b; });
}

// the level must be attainable: 0 < level < N/(N-1) for every year
void validate_level(std::span<const PinSnapshot> series, double lift_level) {
    if (lift_level <= 0) throw input_error("lift level must be positive");
    for (const auto& s : series) {
        double bound = static_cast<double>(s.size()) / (s.size() - 1);
        if (lift_level >= bound)
            throw input_error("lift level " + std::to_string(lift_level) +
                              " is unreachable for a " + std::to_string(s.size()) +
                              "-node snapshot");
    }
}

std::vector<NodeId> pool_of(std::span<const PinSnapshot> series,
                            std::span<const NodeId> exclude) {
    std::set<NodeId> ids;
    for (const auto& s : series) ids.insert(s.node_ids.begin(), s.node_ids.end());
    for (NodeId id : exclude) ids.erase(id);
    return {ids.begin(), ids.end()};
}

struct GroupHash {
    std::size_t operator()(const std::vector<NodeId>& g) const {
        std::size_t h = 0xcbf29ce484222325ull;
        for (NodeId id : g) {
            h ^= static_cast<std::size_t>(id) + 0x9e3779b97f4a7c15ull;
            h *= 0x100000001b3ull;
        }
        return h;
    }
};

}  // namespace

std::vector<FoundGroup> exhaustive_search(std::span<const PinSnapshot> series, int n_max,
                                          const LiftCriterion& crit) {
    if (n_max < 1 || n_max > 3) throw input_error("exhaustive search covers sizes 1..3");
    if (series.empty()) throw input_error("exhaustive search needs at least one snapshot");
    validate_level(series, crit.lift_level);
    std::vector<NodeId> pool = pool_of(series, {});
    std::vector<double> base = base_lambdas(series);

    std::vector<FoundGroup> found;
    for (int n = 1; n <= n_max; ++n) {
        const int p = static_cast<int>(pool.size());
        if (p < n) break;

        // groups containing a smaller found group are skipped up front;
        // within one size the candidates are independent
        std::vector<std::vector<NodeId>> candidates;
        std::vector<int> pick(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pick[static_cast<std::size_t>(i)] = i;
        for (;;) {
            std::vector<NodeId> group(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                group[static_cast<std::size_t>(i)] =
                    pool[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
            bool contains_found = false;
            for (const auto& f : found) {
                if (f.group.size() >= group.size()) continue;
                if (std::includes(group.begin(), group.end(), f.group.begin(), f.group.end())) {
                    contains_found = true;
                    break;
                }
            }
            if (!contains_found) candidates.push_back(std::move(group));

            int i = n - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == p - n + i) --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < n; ++j)
                pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }

        std::vector<std::vector<bool>> lifted(candidates.size());
        detail::parallel_for(candidates.size(), [&](std::size_t i) {
            lifted[i] = lifted_years_with_base(series, base, candidates[i], crit.lift_level);
        });
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (!meets_criterion(lifted[i], crit.mode)) continue;
            FoundGroup fg;
            fg.group = candidates[i];
            for (std::size_t y = 0; y < lifted[i].size(); ++y)
                if (lifted[i][y]) fg.lifted_years.push_back(series[y].year);
            found.push_back(std::move(fg));
        }
    }
    return found;
}

SearchReport two_step_search(std::span<const PinSnapshot> series, int n, int samples,
                             int rounds, const LiftCriterion& crit,
                             std::vector<NodeId> exclude, std::uint64_t seed, int top_k) {
    if (n < 1) throw input_error("group size must be positive");
    if (samples < 1 || rounds < 1) throw input_error("samples and rounds must be positive");
    if (top_k < 1) throw input_error("top_k must be positive");
    std::sort(exclude.begin(), exclude.end());
    std::vector<NodeId> pool = pool_of(series, exclude);
    if (static_cast<int>(pool.size()) < n)
        throw invariant_error("fewer than " + std::to_string(n) + " non-excluded nodes");
    if (static_cast<int>(pool.size()) == n)
        throw invariant_error("pool of size n leaves nothing to sample");

    std::vector<double> base = base_lambdas(series);
    std::unordered_map<std::vector<NodeId>, bool, GroupHash> memo;
    // fan the unevaluated distinct groups of one step out across workers;
    // the memo then serves the sequential, sample-ordered reduction
    auto evaluate_batch = [&](const std::vector<std::vector<NodeId>>& groups) {
        std::vector<std::vector<NodeId>> pending;
        std::unordered_map<std::vector<NodeId>, std::size_t, GroupHash> seen;
        for (const auto& g : groups)
            if (!memo.count(g) && seen.emplace(g, pending.size()).second) pending.push_back(g);
        std::vector<char> hit(pending.size(), 0);
        detail::parallel_for(pending.size(), [&](std::size_t i) {
            hit[i] = meets_criterion(
                lifted_years_with_base(series, base, pending[i], crit.lift_level),
                LiftCriterion::Mode::partial);
        });
        for (std::size_t i = 0; i < pending.size(); ++i) memo.emplace(pending[i], hit[i] != 0);
    };
    auto stream_id = [](int round, int step, int sample) {
        return (static_cast<std::uint64_t>(round) << 40) |
               (static_cast<std::uint64_t>(step) << 32) |
               static_cast<std::uint64_t>(sample);
    };

    const int half = (n + 1) / 2;  // round-up share drawn from the top list
    std::map<NodeId, double> freq_total;
    std::set<std::vector<NodeId>> groups_found;
    std::vector<SearchReport::Round> round_details;
    double p_total = 0;

    for (int round = 0; round < rounds; ++round) {
        // step one: uniform samples from the pool
        std::vector<std::vector<NodeId>> step1(static_cast<std::size_t>(samples));
        for (int s = 0; s < samples; ++s) {
            Philox rng(seed, stream_id(round, 1, s));
            step1[static_cast<std::size_t>(s)] = sample_without_replacement(rng, pool, n);
        }
        evaluate_batch(step1);
        std::map<NodeId, long> freq1;
        for (const auto& group : step1)
            if (memo.at(group))
                for (NodeId id : group) ++freq1[id];

        std::vector<NodeId> order(pool);
        std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
            long fa = freq1.count(a) ? freq1[a] : 0;
            long fb = freq1.count(b) ? freq1[b] : 0;
            if (fa != fb) return fa > fb;
            return a < b;
        });
        const int t = std::min<int>(top_k, static_cast<int>(order.size()));
        std::vector<NodeId> top(order.begin(), order.begin() + t);
        std::sort(top.begin(), top.end());

        // step two: half (round-up) from the top list, the rest from the
        // remaining pool, overlaps impossible by construction
        const int from_top = std::min(half, t);
        std::vector<std::vector<NodeId>> step2(static_cast<std::size_t>(samples));
        for (int s = 0; s < samples; ++s) {
            Philox rng(seed, stream_id(round, 2, s));
            std::vector<NodeId> group = sample_without_replacement(rng, top, from_top);
            std::vector<NodeId> rest;
            rest.reserve(pool.size());
            for (NodeId id : pool)
                if (!std::binary_search(group.begin(), group.end(), id)) rest.push_back(id);
            std::vector<NodeId> second = sample_without_replacement(rng, rest, n - from_top);
            group.insert(group.end(), second.begin(), second.end());
            std::sort(group.begin(), group.end());
            step2[static_cast<std::size_t>(s)] = std::move(group);
        }
        evaluate_batch(step2);
        long hits = 0;
        std::map<NodeId, long> freq2;
        for (const auto& group : step2) {
            if (!memo.at(group)) continue;
            ++hits;
            for (NodeId id : group) ++freq2[id];
            groups_found.insert(group);
        }
        p_total += static_cast<double>(hits) / samples;
        SearchReport::Round detail;
        detail.p_lambda = static_cast<double>(hits) / samples;
        for (const auto& [id, f] : freq2) {
            freq_total[id] += static_cast<double>(f);
            detail.ranking.emplace_back(id, static_cast<double>(f));
        }
        std::stable_sort(detail.ranking.begin(), detail.ranking.end(),
                         [](const auto& a, const auto& b) {
                             if (a.second != b.second) return a.second > b.second;
                             return a.first < b.first;
                         });
        round_details.push_back(std::move(detail));
    }

    SearchReport report;
    report.n = n;
    report.rounds = rounds;
    report.samples = samples;
    report.seed = seed;
    report.top_k = top_k;
    report.p_lambda = p_total / rounds;
    for (const auto& [id, f] : freq_total)
        report.ranking.emplace_back(id, f / rounds);
    std::stable_sort(report.ranking.begin(), report.ranking.end(),
                     [](const auto& a, const auto& b) {
                         if (a.second != b.second) return a.second > b.second;
                         return a.first < b.first;
                     });
    report.lifting_groups.assign(groups_found.begin(), groups_found.end());
    report.rounds_detail = std::move(round_details);
    return report;
}

std::optional<OfcQuotient> ofc_quotient(const SearchReport& report,
                                        const CountryRegistry& registry,
                                        std::span<const PinSnapshot> series) {
    double total = 0, ofc = 0;
    double distinct_total = 0, distinct_ofc = 0;
    for (const auto& [id, freq] : report.ranking) {
        total += freq;
        distinct_total += 1;
        if (registry.at(id).is_ofc) {
            ofc += freq;
            distinct_ofc += 1;
        }
    }
    if (total <= 0) return std::nullopt;

    if (series.empty()) throw input_error("ofc_quotient needs the snapshot series");
    double network = 0;
    for (const auto& s : series) {
        int count = 0;
        for (NodeId id : s.node_ids)
            if (registry.at(id).is_ofc) ++count;
        network += static_cast<double>(count) / s.size();
    }
    network /= static_cast<double>(series.size());
    if (network <= 0) throw invariant_error("no OFC nodes in any snapshot; quotient undefined");

    OfcQuotient q;
    q.n = report.n;
    q.f_found = ofc / total;
    q.f_network = network;
    q.q = q.f_found / q.f_network;
    q.f_found_distinct = distinct_ofc / distinct_total;
    q.q_distinct = q.f_found_distinct / q.f_network;
    return q;
}

}  // namespace pin
