#include "tkg/kg/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tkg/common/log.hpp"
#include "tkg/common/text.hpp"

namespace tkg {

using nlohmann::json;

std::string TemporalGraph::canonical_name(const std::string& raw) {
    return text::lower(text::trim(raw));
}

EntityId TemporalGraph::upsert_entity(const std::string& raw_name, EntityType etype) {
    std::unique_lock lock(mutex_);
    return upsert_entity_locked(raw_name, etype);
}

EntityId TemporalGraph::upsert_entity_locked(const std::string& raw_name, EntityType etype) {
    std::string name = canonical_name(raw_name);
    if (name.empty()) throw Error(ErrKind::graph, "entity name empty after trimming");

    auto it = name_to_id_.find(name);
    if (it != name_to_id_.end()) {
        const Entity& existing = entities_[it->second];
        if (existing.etype != etype) {
            log::warn("entity type conflict for '" + name + "': keeping " +
                      entity_type_name(existing.etype) + ", ignoring " + entity_type_name(etype));
        }
        return it->second;
    }

    EntityId id = static_cast<EntityId>(entities_.size());
    entities_.push_back(Entity{name, etype});
    adjacency_.emplace_back();
    name_to_id_[name] = id;
    return id;
}

TemporalGraph::InsertOutcome TemporalGraph::insert_fact(EntityId subject,
                                                        const std::string& predicate,
                                                        EntityId object, std::int64_t t,
                                                        const std::string& episode) {
    std::unique_lock lock(mutex_);
    return insert_fact_locked(subject, predicate, object, t, episode);
}

TemporalGraph::InsertOutcome TemporalGraph::insert_fact_locked(EntityId subject,
                                                               const std::string& predicate,
                                                               EntityId object, std::int64_t t,
                                                               const std::string& episode) {
    if (subject >= entities_.size())
        throw Error(ErrKind::unknown_entity, "fact subject id " + std::to_string(subject));
    if (object >= entities_.size())
        throw Error(ErrKind::unknown_entity, "fact object id " + std::to_string(object));
    if (predicate.empty()) throw Error(ErrKind::graph, "empty predicate");
    if (t < 0) throw Error(ErrKind::graph, "negative timestamp");
    if (subject == object && predicate != "is")
        throw Error(ErrKind::graph, "reflexive fact with predicate '" + predicate + "'");

    auto key = std::make_tuple(subject, predicate, object, t);
    if (quad_keys_.count(key)) {
        for (auto idx_it = facts_.rbegin(); idx_it != facts_.rend(); ++idx_it) {
            if (idx_it->subject == subject && idx_it->object == object && idx_it->t == t &&
                idx_it->predicate == predicate) {
                return InsertOutcome{*idx_it, false};
            }
        }
    }

    Fact f;
    f.subject = subject;
    f.predicate = predicate;
    f.object = object;
    f.t = t;
    f.episode = episode;
    f.seq = next_seq_++;

    auto index = static_cast<std::uint32_t>(facts_.size());
    facts_.push_back(f);
    quad_keys_.insert(key);
    adjacency_[subject].push_back(index);
    if (object != subject) adjacency_[object].push_back(index);
    return InsertOutcome{f, true};
}

std::optional<EntityId> TemporalGraph::find_entity(const std::string& raw_name) const {
    std::shared_lock lock(mutex_);
    auto it = name_to_id_.find(canonical_name(raw_name));
    if (it == name_to_id_.end()) return std::nullopt;
    return it->second;
}

Entity TemporalGraph::entity(EntityId id) const {
    std::shared_lock lock(mutex_);
    if (id >= entities_.size())
        throw Error(ErrKind::unknown_entity, "entity id " + std::to_string(id));
    return entities_[id];
}

Fact TemporalGraph::fact(std::uint32_t index) const {
    std::shared_lock lock(mutex_);
    if (index >= facts_.size())
        throw Error(ErrKind::graph, "fact index " + std::to_string(index));
    return facts_[index];
}

std::optional<Fact> TemporalGraph::fact_by_seq(std::uint64_t seq) const {
    std::shared_lock lock(mutex_);
    for (const Fact& f : facts_) {
        if (f.seq == seq) return f;
    }
    return std::nullopt;
}

std::size_t TemporalGraph::entity_count() const {
    std::shared_lock lock(mutex_);
    return entities_.size();
}

std::size_t TemporalGraph::fact_count() const {
    std::shared_lock lock(mutex_);
    return facts_.size();
}

std::vector<std::pair<EntityId, std::string>>
TemporalGraph::entities_of_types(const std::set<EntityType>& types) const {
    std::shared_lock lock(mutex_);
    std::vector<std::pair<EntityId, std::string>> out;
    for (EntityId id = 0; id < entities_.size(); ++id) {
        if (types.count(entities_[id].etype)) out.emplace_back(id, entities_[id].name);
    }
    return out;
}

Subgraph TemporalGraph::expand_subgraph(const std::vector<EntityId>& seeds,
                                        std::optional<int> max_hops) const {
    std::shared_lock lock(mutex_);
    if (seeds.empty()) throw Error(ErrKind::graph, "empty seed set");
    for (EntityId s : seeds) {
        if (s >= entities_.size())
            throw Error(ErrKind::unknown_entity, "seed id " + std::to_string(s));
    }

    std::vector<bool> entity_in(entities_.size(), false);
    std::vector<bool> fact_in(facts_.size(), false);
    std::vector<EntityId> frontier;
    for (EntityId s : seeds) {
        if (!entity_in[s]) {
            entity_in[s] = true;
            frontier.push_back(s);
        }
    }

    int rounds = 0;
    while (!frontier.empty()) {
        if (max_hops && rounds >= *max_hops) break;
        ++rounds;
        std::vector<EntityId> next;
        for (EntityId e : frontier) {
            for (std::uint32_t fi : adjacency_[e]) {
                if (fact_in[fi]) continue;
                fact_in[fi] = true;
                const Fact& f = facts_[fi];
                for (EntityId endpoint : {f.subject, f.object}) {
                    if (!entity_in[endpoint]) {
                        entity_in[endpoint] = true;
                        next.push_back(endpoint);
                    }
                }
            }
        }
        frontier = std::move(next);
    }

    Subgraph sub;
    for (EntityId id = 0; id < entity_in.size(); ++id) {
        if (entity_in[id]) sub.entities.push_back(id);
    }
    for (std::uint32_t fi = 0; fi < fact_in.size(); ++fi) {
        if (fact_in[fi]) sub.fact_indices.push_back(fi);
    }
    return sub;
}

std::vector<Fact> TemporalGraph::temporal_order(const Subgraph& sub) const {
    std::shared_lock lock(mutex_);
    std::vector<Fact> out;
    out.reserve(sub.fact_indices.size());
    for (std::uint32_t fi : sub.fact_indices) {
        if (fi >= facts_.size())
            throw Error(ErrKind::graph, "fact index " + std::to_string(fi));
        out.push_back(facts_[fi]);
    }
    std::stable_sort(out.begin(), out.end(), [](const Fact& a, const Fact& b) {
        if (a.t != b.t) return a.t < b.t;
        return a.seq < b.seq;
    });
    return out;
}

namespace {

std::string json_str(const std::string& s) { return json(s).dump(); }

} // namespace

void TemporalGraph::save(std::ostream& out) const {
    std::shared_lock lock(mutex_);
    for (EntityId id = 0; id < entities_.size(); ++id) {
        const Entity& e = entities_[id];
        out << "{\"kind\":\"entity\",\"id\":" << id << ",\"name\":" << json_str(e.name)
            << ",\"etype\":\"" << entity_type_name(e.etype) << "\"}\n";
    }
    for (const Fact& f : facts_) {
        out << "{\"kind\":\"fact\",\"s\":" << f.subject << ",\"p\":" << json_str(f.predicate)
            << ",\"o\":" << f.object << ",\"t\":" << f.t << ",\"ep\":" << json_str(f.episode)
            << ",\"seq\":" << f.seq << "}\n";
    }
}

void TemporalGraph::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrKind::config, "cannot open graph file for writing: " + path);
    save(out);
}

std::unique_ptr<TemporalGraph> TemporalGraph::load(std::istream& in) {
    auto g = std::make_unique<TemporalGraph>();
    std::string line;
    std::size_t line_no = 0;
    std::uint64_t max_seq = 0;
    bool any_fact = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::exception& e) {
            throw Error(ErrKind::parse,
                        "graph line " + std::to_string(line_no) + ": " + e.what());
        }
        const std::string kind = rec.value("kind", "");
        if (kind == "entity") {
            if (!rec.contains("id") || !rec.contains("name") || !rec.contains("etype"))
                throw Error(ErrKind::parse,
                            "graph line " + std::to_string(line_no) + ": incomplete entity");
            auto id = rec["id"].get<std::uint64_t>();
            if (id != g->entities_.size())
                throw Error(ErrKind::parse, "graph line " + std::to_string(line_no) +
                                                ": entity id out of order");
            auto etype = entity_type_from(rec["etype"].get<std::string>());
            if (!etype)
                throw Error(ErrKind::parse, "graph line " + std::to_string(line_no) +
                                                ": unknown etype " +
                                                rec["etype"].get<std::string>());
            std::string name = canonical_name(rec["name"].get<std::string>());
            if (name.empty())
                throw Error(ErrKind::parse,
                            "graph line " + std::to_string(line_no) + ": empty entity name");
            if (g->name_to_id_.count(name))
                throw Error(ErrKind::parse,
                            "graph line " + std::to_string(line_no) + ": duplicate entity name");
            g->entities_.push_back(Entity{name, *etype});
            g->adjacency_.emplace_back();
            g->name_to_id_[name] = static_cast<EntityId>(id);
        } else if (kind == "fact") {
            for (const char* key : {"s", "p", "o", "t", "ep", "seq"}) {
                if (!rec.contains(key))
                    throw Error(ErrKind::parse, "graph line " + std::to_string(line_no) +
                                                    ": fact missing key '" + key + "'");
            }
            auto s = rec["s"].get<std::uint64_t>();
            auto o = rec["o"].get<std::uint64_t>();
            if (s >= g->entities_.size() || o >= g->entities_.size())
                throw Error(ErrKind::parse, "graph line " + std::to_string(line_no) +
                                                ": fact references unknown entity");
            Fact f;
            f.subject = static_cast<EntityId>(s);
            f.predicate = rec["p"].get<std::string>();
            f.object = static_cast<EntityId>(o);
            f.t = rec["t"].get<std::int64_t>();
            f.episode = rec["ep"].get<std::string>();
            f.seq = rec["seq"].get<std::uint64_t>();
            if (f.t < 0)
                throw Error(ErrKind::parse,
                            "graph line " + std::to_string(line_no) + ": negative timestamp");

            auto index = static_cast<std::uint32_t>(g->facts_.size());
            g->facts_.push_back(f);
            g->quad_keys_.insert(std::make_tuple(f.subject, f.predicate, f.object, f.t));
            g->adjacency_[f.subject].push_back(index);
            if (f.object != f.subject) g->adjacency_[f.object].push_back(index);
            max_seq = std::max(max_seq, f.seq);
            any_fact = true;
        } else {
            throw Error(ErrKind::parse, "graph line " + std::to_string(line_no) +
                                            ": unknown record kind '" + kind + "'");
        }
    }
    g->next_seq_ = any_fact ? max_seq + 1 : 0;
    return g;
}

std::unique_ptr<TemporalGraph> TemporalGraph::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrKind::config, "cannot open graph file: " + path);
    return load(in);
}

void TemporalGraph::validate() const {
    std::shared_lock lock(mutex_);
    for (const Fact& f : facts_) {
        if (f.subject >= entities_.size() || f.object >= entities_.size())
            throw Error(ErrKind::graph, "dangling fact endpoint at seq " + std::to_string(f.seq));
    }
    if (adjacency_.size() != entities_.size())
        throw Error(ErrKind::graph, "adjacency table size mismatch");
    std::uint64_t prev_seq = 0;
    bool first = true;
    for (const Fact& f : facts_) {
        if (!first && f.seq <= prev_seq)
            throw Error(ErrKind::graph, "seq not strictly increasing");
        prev_seq = f.seq;
        first = false;
    }
    for (EntityId id = 0; id < entities_.size(); ++id) {
        for (std::uint32_t fi : adjacency_[id]) {
            if (fi >= facts_.size()) throw Error(ErrKind::graph, "adjacency index out of range");
            const Fact& f = facts_[fi];
            if (f.subject != id && f.object != id)
                throw Error(ErrKind::graph, "adjacency entry not incident");
        }
    }
}

} // namespace tkg
