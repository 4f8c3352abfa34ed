#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "tkg/kg/types.hpp"

namespace tkg {

// Append-only temporal knowledge graph. Entities are canonicalized by name,
// facts are timestamped quads deduplicated on (s, p, o, t). The fact set only
// grows within a run; there is no deletion or decay.
//
// Concurrency: many readers, single writer. All public methods lock
// internally, so one instance can be shared across episode threads.
class TemporalGraph {
public:
    TemporalGraph() = default;

    // Graphs are handed around by reference; copying would fork the seq
    // counter and break the monotone-update contract.
    TemporalGraph(const TemporalGraph&) = delete;
    TemporalGraph& operator=(const TemporalGraph&) = delete;

    struct InsertOutcome {
        Fact fact;
        bool inserted = false; // false when the quad was already present
    };

    // Returns the existing id when the canonical name matches, otherwise
    // allocates. The etype of an existing entity is never changed; a
    // conflicting tag is logged and ignored.
    EntityId upsert_entity(const std::string& raw_name, EntityType etype);

    InsertOutcome insert_fact(EntityId subject, const std::string& predicate, EntityId object,
                              std::int64_t t, const std::string& episode);

    std::optional<EntityId> find_entity(const std::string& raw_name) const;
    Entity entity(EntityId id) const;
    Fact fact(std::uint32_t index) const;
    std::optional<Fact> fact_by_seq(std::uint64_t seq) const;

    std::size_t entity_count() const;
    std::size_t fact_count() const;

    std::vector<std::pair<EntityId, std::string>>
    entities_of_types(const std::set<EntityType>& types) const;

    // Frontier expansion: each round adds every fact incident to the current
    // entity set plus the facts' endpoints, until fixpoint or `max_hops`
    // rounds. Unbounded expansion returns the union of the connected
    // components reachable from the seeds.
    Subgraph expand_subgraph(const std::vector<EntityId>& seeds,
                             std::optional<int> max_hops = std::nullopt) const;

    // Facts of the subgraph sorted by (t ascending, seq ascending).
    std::vector<Fact> temporal_order(const Subgraph& sub) const;

    // Newline-delimited persistence: entity records first, then facts in
    // insertion order. load(save(g)) reproduces ids and seq exactly.
    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;
    static std::unique_ptr<TemporalGraph> load(std::istream& in);
    static std::unique_ptr<TemporalGraph> load_file(const std::string& path);

    // Referential-integrity check used by tests after mutations.
    void validate() const;

    static std::string canonical_name(const std::string& raw);

private:
    EntityId upsert_entity_locked(const std::string& raw_name, EntityType etype);
    InsertOutcome insert_fact_locked(EntityId subject, const std::string& predicate,
                                     EntityId object, std::int64_t t,
                                     const std::string& episode);

    mutable std::shared_mutex mutex_;
    std::vector<Entity> entities_;
    std::unordered_map<std::string, EntityId> name_to_id_;
    std::vector<Fact> facts_;
    std::vector<std::vector<std::uint32_t>> adjacency_; // entity -> incident fact indices
    std::set<std::tuple<EntityId, std::string, EntityId, std::int64_t>> quad_keys_;
    std::uint64_t next_seq_ = 0;
};

} // namespace tkg
