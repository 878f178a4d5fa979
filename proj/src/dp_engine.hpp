#ifndef VRPTREE_DP_ENGINE_HPP
#define VRPTREE_DP_ENGINE_HPP

#include "vrptree/clustering.hpp"
#include "vrptree/dp.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace vrpt::detail {

enum class DpMode { Makespan, Capacity };

// Buckets of width W = num / den.
struct Bucketer {
    std::int64_t num = 1;
    std::int64_t den = 1;

    Bucketer(const Ratio& theta, std::int64_t base);
    std::uint32_t ceil_index(std::int64_t x) const;
    std::int64_t floor_index(std::int64_t x) const;
    Ratio value(std::uint32_t index) const { return Ratio(num) * Ratio(index) / Ratio(den); }
};

struct Back {
    std::uint32_t child = UINT32_MAX;
    std::uint32_t child2 = UINT32_MAX;
    std::uint32_t split = 0;             // grow: leaves [0, split) go to a new ending tour
    std::uint32_t collect = UINT32_MAX;  // grow: bucket of the collecting tour before it collects
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs; // merge: matched buckets
};

struct Entry {
    Config tours;
    std::int64_t value = 0; // exact total length of the open tours
    Back back;
};

struct BuiltTour {
    std::uint32_t bucket = 0;
    std::vector<VertexId> clients;
    std::size_t roundups = 0;
    std::size_t clusters = 0;
    std::size_t merges = 0;
};

class ConfigDp {
public:
    ConfigDp(const Decomposition& d, DpMode mode, const SolverParams& params, std::size_t max_tours);

    void run();
    const std::vector<Entry>& root_entries() const { return tables_[table_of_[d_.tstar.root]]; }
    std::vector<BuiltTour> reconstruct(std::size_t root_entry) const;
    const Bucketer& bucketer() const { return bucket_; }
    const DecideStats& stats() const { return stats_; }

private:
    void base(std::size_t node);
    void grow(std::size_t node);
    void merge(std::size_t node);
    void finish(std::vector<Entry>& table);
    std::vector<BuiltTour> rebuild(std::size_t node, std::size_t entry) const;
    void add_leaf_clients(std::size_t pendant, std::vector<VertexId>& out) const;

    const Decomposition& d_;
    DpMode mode_;
    SolverParams params_;
    std::size_t max_tours_;
    Bucketer bucket_;
    std::uint32_t cap_;
    std::vector<std::vector<Entry>> tables_;
    std::vector<std::size_t> table_of_;
    std::size_t stored_ = 0;
    DecideStats stats_;
};

Solution assemble(const RoutingTree& tree, const Decomposition& d, const ConfigDp& dp,
                  const std::vector<BuiltTour>& built, DpMode mode);

} // namespace vrpt::detail

#endif
