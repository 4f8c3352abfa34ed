#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tkg/common/error.hpp"

namespace tkg {

using EntityId = std::uint32_t;

// Closed entity-type taxonomy used for type-filtered retrieval.
enum class EntityType { PER, LOC, OBJ, ACTION, SUBSTANCE, CONCEPT };

inline const char* entity_type_name(EntityType t) {
    switch (t) {
        case EntityType::PER: return "PER";
        case EntityType::LOC: return "LOC";
        case EntityType::OBJ: return "OBJ";
        case EntityType::ACTION: return "ACTION";
        case EntityType::SUBSTANCE: return "SUBSTANCE";
        case EntityType::CONCEPT: return "CONCEPT";
    }
    return "OBJ";
}

inline std::optional<EntityType> entity_type_from(const std::string& s) {
    if (s == "PER") return EntityType::PER;
    if (s == "LOC") return EntityType::LOC;
    if (s == "OBJ") return EntityType::OBJ;
    if (s == "ACTION") return EntityType::ACTION;
    if (s == "SUBSTANCE") return EntityType::SUBSTANCE;
    if (s == "CONCEPT") return EntityType::CONCEPT;
    return std::nullopt;
}

inline const std::vector<EntityType>& all_entity_types() {
    static const std::vector<EntityType> all = {EntityType::PER,    EntityType::LOC,
                                                EntityType::OBJ,    EntityType::ACTION,
                                                EntityType::SUBSTANCE, EntityType::CONCEPT};
    return all;
}

struct Entity {
    std::string name; // canonical: lowercased, trimmed
    EntityType etype = EntityType::OBJ;
};

// Timestamped relation quad. `t` is the global environment step counter at
// which the fact was introduced; `seq` is the insertion sequence number that
// breaks ties between facts sharing a timestamp.
struct Fact {
    EntityId subject = 0;
    std::string predicate;
    EntityId object = 0;
    std::int64_t t = 0;
    std::string episode;
    std::uint64_t seq = 0;

    bool operator==(const Fact& other) const {
        return subject == other.subject && predicate == other.predicate &&
               object == other.object && t == other.t && episode == other.episode &&
               seq == other.seq;
    }
};

// Entity ids plus indices into the owning graph's fact list, both sorted.
struct Subgraph {
    std::vector<EntityId> entities;
    std::vector<std::uint32_t> fact_indices;
};

} // namespace tkg
