#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "support/oracles.hpp"
#include "tkg/kg/graph.hpp"

using namespace tkg;

namespace {

// Random graph builder shared by the oracle checks.
struct RandomGraph {
    std::unique_ptr<TemporalGraph> g = std::make_unique<TemporalGraph>();
    std::vector<oracle::Quad> quads;
    std::size_t entities = 0;
};

RandomGraph make_random_graph(std::mt19937& rng, std::size_t max_nodes, std::size_t max_facts) {
    RandomGraph out;
    std::uniform_int_distribution<std::size_t> node_dist(1, max_nodes);
    out.entities = node_dist(rng);
    for (std::size_t i = 0; i < out.entities; ++i) {
        out.g->upsert_entity("node" + std::to_string(i),
                             all_entity_types()[i % all_entity_types().size()]);
    }
    std::uniform_int_distribution<std::size_t> fact_dist(0, max_facts);
    std::uniform_int_distribution<std::uint32_t> id_dist(
        0, static_cast<std::uint32_t>(out.entities - 1));
    std::uniform_int_distribution<int> t_dist(0, 20);
    std::uniform_int_distribution<int> p_dist(0, 3);
    const char* preds[] = {"contains", "is in", "near", "touches"};
    std::size_t n_facts = fact_dist(rng);
    for (std::size_t i = 0; i < n_facts; ++i) {
        auto s = id_dist(rng);
        auto o = id_dist(rng);
        if (s == o) continue; // reflexive quads only legal for "is"
        std::string p = preds[p_dist(rng)];
        auto t = static_cast<std::int64_t>(t_dist(rng));
        auto res = out.g->insert_fact(s, p, o, t, "fuzz");
        if (res.inserted) out.quads.push_back({s, p, o, t});
    }
    return out;
}

} // namespace

TEST_CASE("entity canonicalization is idempotent across case and whitespace") {
    TemporalGraph g;
    auto a = g.upsert_entity("Kitchen ", EntityType::LOC);
    auto b = g.upsert_entity("kitchen", EntityType::LOC);
    CHECK(a == b);
    CHECK(g.entity_count() == 1);
    CHECK(g.entity(a).name == "kitchen");
}

TEST_CASE("first entity allocation gets id 0") {
    TemporalGraph g;
    CHECK(g.upsert_entity("water", EntityType::SUBSTANCE) == 0);
}

TEST_CASE("empty entity name is rejected") {
    TemporalGraph g;
    CHECK_THROWS_AS(g.upsert_entity("   ", EntityType::OBJ), Error);
}

TEST_CASE("entity type conflicts keep the first write") {
    TemporalGraph g;
    auto id = g.upsert_entity("pot", EntityType::OBJ);
    auto again = g.upsert_entity("pot", EntityType::SUBSTANCE);
    CHECK(id == again);
    CHECK(g.entity(id).etype == EntityType::OBJ);
}

TEST_CASE("random-cased duplicates collapse to the dedupe-set count") {
    std::mt19937 rng(7);
    std::vector<std::string> base;
    for (int i = 0; i < 50; ++i) base.push_back("entity-name-" + std::to_string(i));

    TemporalGraph g;
    std::set<std::string> oracle_names;
    std::uniform_int_distribution<std::size_t> pick(0, base.size() - 1);
    std::bernoulli_distribution flip(0.5);
    for (int i = 0; i < 1000; ++i) {
        std::string name = base[pick(rng)];
        for (auto& c : name) {
            if (flip(rng)) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        }
        if (flip(rng)) name = " " + name + "  ";
        g.upsert_entity(name, EntityType::CONCEPT);
        oracle_names.insert(TemporalGraph::canonical_name(name));
    }
    CHECK(oracle_names.size() == 50);
    CHECK(g.entity_count() == 50);
}

TEST_CASE("insert_fact appends and indexes the fact") {
    TemporalGraph g;
    auto sink = g.upsert_entity("sink", EntityType::OBJ);
    auto water = g.upsert_entity("water", EntityType::SUBSTANCE);
    auto res = g.insert_fact(sink, "contains", water, 3, "ep0");
    CHECK(res.inserted);
    CHECK(g.fact_count() == 1);
    auto sub = g.expand_subgraph({sink});
    REQUIRE(sub.fact_indices.size() == 1);
    CHECK(g.fact(sub.fact_indices[0]).predicate == "contains");
    g.validate();
}

TEST_CASE("duplicate quads are stored once") {
    TemporalGraph g;
    auto a = g.upsert_entity("a", EntityType::OBJ);
    auto b = g.upsert_entity("b", EntityType::OBJ);
    auto first = g.insert_fact(a, "near", b, 1, "ep0");
    auto second = g.insert_fact(a, "near", b, 1, "ep1"); // episode not part of the key
    CHECK(first.inserted);
    CHECK_FALSE(second.inserted);
    CHECK(second.fact.seq == first.fact.seq);
    CHECK(g.fact_count() == 1);
}

TEST_CASE("unknown endpoints are rejected") {
    TemporalGraph g;
    auto a = g.upsert_entity("a", EntityType::OBJ);
    CHECK_THROWS_AS(g.insert_fact(a, "near", 42, 0, "ep"), Error);
}

TEST_CASE("reflexive facts are only legal for predicate 'is'") {
    TemporalGraph g;
    auto a = g.upsert_entity("thing", EntityType::OBJ);
    CHECK_THROWS_AS(g.insert_fact(a, "contains", a, 0, "ep"), Error);
    CHECK(g.insert_fact(a, "is", a, 0, "ep").inserted);
}

TEST_CASE("random quad inserts match the hash-set oracle") {
    std::mt19937 rng(11);
    TemporalGraph g;
    for (int i = 0; i < 10; ++i) g.upsert_entity("n" + std::to_string(i), EntityType::OBJ);
    std::vector<oracle::Quad> all;
    std::uniform_int_distribution<std::uint32_t> id_dist(0, 9);
    std::uniform_int_distribution<int> t_dist(0, 5);
    for (int i = 0; i < 200; ++i) {
        auto s = id_dist(rng);
        auto o = id_dist(rng);
        if (s == o) continue;
        oracle::Quad q{s, "rel", o, t_dist(rng)};
        all.push_back(q);
        g.insert_fact(q.s, q.p, q.o, q.t, "ep");
    }
    CHECK(g.fact_count() == oracle::distinct_quads(all));
    g.validate();
}

TEST_CASE("entities_of_types filters by tag") {
    TemporalGraph g;
    auto kitchen = g.upsert_entity("kitchen", EntityType::LOC);
    g.upsert_entity("water", EntityType::SUBSTANCE);

    auto locs = g.entities_of_types({EntityType::LOC});
    REQUIRE(locs.size() == 1);
    CHECK(locs[0].first == kitchen);
    CHECK(locs[0].second == "kitchen");

    CHECK(g.entities_of_types({}).empty());
}

TEST_CASE("entities_of_types matches a linear-scan oracle on random graphs") {
    std::mt19937 rng(13);
    auto rg = make_random_graph(rng, 40, 60);
    auto got = rg.g->entities_of_types({EntityType::PER, EntityType::LOC});

    std::vector<std::pair<EntityId, std::string>> expect;
    for (EntityId id = 0; id < rg.g->entity_count(); ++id) {
        auto e = rg.g->entity(id);
        if (e.etype == EntityType::PER || e.etype == EntityType::LOC)
            expect.emplace_back(id, e.name);
    }
    CHECK(got == expect);
}

TEST_CASE("expand_subgraph walks a path graph to fixpoint") {
    TemporalGraph g;
    auto a = g.upsert_entity("a", EntityType::OBJ);
    auto b = g.upsert_entity("b", EntityType::OBJ);
    auto c = g.upsert_entity("c", EntityType::OBJ);
    auto d = g.upsert_entity("d", EntityType::OBJ);
    g.insert_fact(a, "next", b, 0, "ep");
    g.insert_fact(b, "next", c, 1, "ep");
    g.insert_fact(c, "next", d, 2, "ep");

    auto sub = g.expand_subgraph({a});
    CHECK(sub.entities.size() == 4);
    CHECK(sub.fact_indices.size() == 3);

    auto one_hop = g.expand_subgraph({a}, 1);
    CHECK(one_hop.entities == std::vector<EntityId>{a, b});
    CHECK(one_hop.fact_indices.size() == 1);
}

TEST_CASE("expand_subgraph excludes disconnected components") {
    TemporalGraph g;
    auto a = g.upsert_entity("a", EntityType::OBJ);
    auto b = g.upsert_entity("b", EntityType::OBJ);
    auto x = g.upsert_entity("x", EntityType::OBJ);
    auto y = g.upsert_entity("y", EntityType::OBJ);
    g.insert_fact(a, "next", b, 0, "ep");
    g.insert_fact(x, "next", y, 1, "ep");

    auto sub = g.expand_subgraph({a});
    CHECK(sub.entities == std::vector<EntityId>{a, b});
    CHECK(sub.fact_indices.size() == 1);
}

TEST_CASE("unknown seeds are rejected") {
    TemporalGraph g;
    g.upsert_entity("a", EntityType::OBJ);
    CHECK_THROWS_AS(g.expand_subgraph({9}), Error);
    CHECK_THROWS_AS(g.expand_subgraph({}), Error);
}

TEST_CASE("expand_subgraph equals the BFS-closure oracle on random graphs") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        auto rg = make_random_graph(rng, 50, 120);
        std::uniform_int_distribution<std::uint32_t> id_dist(
            0, static_cast<std::uint32_t>(rg.entities - 1));
        std::uniform_int_distribution<int> seed_count(1, 3);
        std::vector<EntityId> seeds;
        int n = seed_count(rng);
        for (int i = 0; i < n; ++i) seeds.push_back(id_dist(rng));

        std::optional<int> hops;
        std::uniform_int_distribution<int> hop_dist(0, 5);
        if (trial % 2 == 0) hops = hop_dist(rng);

        auto got = rg.g->expand_subgraph(seeds, hops);
        auto want = oracle::bfs_closure(rg.entities, rg.quads,
                                        std::vector<std::uint32_t>(seeds.begin(), seeds.end()),
                                        hops);

        std::set<EntityId> got_entities(got.entities.begin(), got.entities.end());
        CHECK(got_entities == want.entities);

        // Oracle indexes into its own quad list, which contains exactly the
        // inserted (deduplicated) facts in insertion order, so indices align.
        std::set<std::size_t> got_facts;
        for (auto fi : got.fact_indices) got_facts.insert(fi);
        CHECK(got_facts == want.fact_indices);
    }
}

TEST_CASE("expansion closure: no external fact touches two internal entities") {
    std::mt19937 rng(19);
    auto rg = make_random_graph(rng, 30, 80);
    if (rg.entities == 0) return;
    auto sub = rg.g->expand_subgraph({0});
    std::set<EntityId> inside(sub.entities.begin(), sub.entities.end());
    std::set<std::uint32_t> in_facts(sub.fact_indices.begin(), sub.fact_indices.end());
    for (std::uint32_t fi = 0; fi < rg.g->fact_count(); ++fi) {
        if (in_facts.count(fi)) continue;
        auto f = rg.g->fact(fi);
        CHECK_FALSE((inside.count(f.subject) || inside.count(f.object)));
    }
}

TEST_CASE("temporal_order sorts by timestamp") {
    TemporalGraph g;
    auto a = g.upsert_entity("a", EntityType::OBJ);
    auto b = g.upsert_entity("b", EntityType::OBJ);
    g.insert_fact(a, "r5", b, 5, "ep");
    g.insert_fact(a, "r1", b, 1, "ep");
    g.insert_fact(a, "r3", b, 3, "ep");

    auto ordered = g.temporal_order(g.expand_subgraph({a}));
    REQUIRE(ordered.size() == 3);
    CHECK(ordered[0].t == 1);
    CHECK(ordered[1].t == 3);
    CHECK(ordered[2].t == 5);
}

TEST_CASE("equal timestamps preserve insertion order") {
    TemporalGraph g;
    auto a = g.upsert_entity("a", EntityType::OBJ);
    auto b = g.upsert_entity("b", EntityType::OBJ);
    auto first = g.insert_fact(a, "first", b, 7, "ep");
    auto second = g.insert_fact(a, "second", b, 7, "ep");

    auto ordered = g.temporal_order(g.expand_subgraph({a}));
    REQUIRE(ordered.size() == 2);
    CHECK(ordered[0].seq == first.fact.seq);
    CHECK(ordered[1].seq == second.fact.seq);
}

TEST_CASE("temporal_order matches the stable-sort oracle on fuzzed lists") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        TemporalGraph g;
        auto a = g.upsert_entity("a", EntityType::OBJ);
        auto b = g.upsert_entity("b", EntityType::OBJ);
        std::uniform_int_distribution<int> t_dist(0, 9);
        std::uniform_int_distribution<int> n_dist(0, 500);
        int n = n_dist(rng);
        std::vector<Fact> inserted;
        for (int i = 0; i < n; ++i) {
            // Unique predicate keeps every quad distinct so nothing dedupes.
            auto res = g.insert_fact(a, "p" + std::to_string(i), b, t_dist(rng), "ep");
            inserted.push_back(res.fact);
        }
        auto want = oracle::stable_sort_by_t(inserted);
        auto got = g.temporal_order(g.expand_subgraph({a}));
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
    }
}

TEST_CASE("empty graph round-trips") {
    TemporalGraph g;
    std::ostringstream out;
    g.save(out);
    std::istringstream in(out.str());
    auto loaded = TemporalGraph::load(in);
    CHECK(loaded->entity_count() == 0);
    CHECK(loaded->fact_count() == 0);
}

TEST_CASE("3-fact fixture re-serializes byte-identically") {
    TemporalGraph g;
    auto sink = g.upsert_entity("sink", EntityType::OBJ);
    auto water = g.upsert_entity("water", EntityType::SUBSTANCE);
    auto kitchen = g.upsert_entity("kitchen", EntityType::LOC);
    g.insert_fact(sink, "contains", water, 3, "train-4-1-v2");
    g.insert_fact(sink, "is in", kitchen, 4, "train-4-1-v2");
    g.insert_fact(water, "is", water, 5, "train-4-1-v2");

    std::ostringstream first;
    g.save(first);
    std::istringstream in(first.str());
    auto loaded = TemporalGraph::load(in);
    std::ostringstream second;
    loaded->save(second);
    CHECK(first.str() == second.str());
}

TEST_CASE("random graphs round-trip with deep equality") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        auto rg = make_random_graph(rng, 30, 80);
        std::ostringstream out;
        rg.g->save(out);
        std::istringstream in(out.str());
        auto loaded = TemporalGraph::load(in);

        REQUIRE(loaded->entity_count() == rg.g->entity_count());
        REQUIRE(loaded->fact_count() == rg.g->fact_count());
        for (EntityId id = 0; id < rg.g->entity_count(); ++id) {
            auto e0 = rg.g->entity(id);
            auto e1 = loaded->entity(id);
            CHECK(e0.name == e1.name);
            CHECK(e0.etype == e1.etype);
        }
        for (std::uint32_t fi = 0; fi < rg.g->fact_count(); ++fi) {
            CHECK(rg.g->fact(fi) == loaded->fact(fi));
        }
        loaded->validate();

        // Inserting after a reload keeps seq strictly increasing.
        if (loaded->entity_count() >= 2) {
            auto res = loaded->insert_fact(0, "post-load", 1, 999, "ep");
            if (res.inserted && loaded->fact_count() >= 2) {
                CHECK(res.fact.seq > loaded->fact(static_cast<std::uint32_t>(
                                                      loaded->fact_count() - 2)).seq);
            }
        }
    }
}

TEST_CASE("malformed records report the line number") {
    std::istringstream in("{\"kind\":\"entity\",\"id\":0,\"name\":\"a\",\"etype\":\"OBJ\"}\n"
                          "not json\n");
    try {
        TemporalGraph::load(in);
        FAIL("expected parse error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::parse);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("facts referencing unknown entities fail to load") {
    std::istringstream in(
        "{\"kind\":\"fact\",\"s\":0,\"p\":\"x\",\"o\":1,\"t\":0,\"ep\":\"e\",\"seq\":0}\n");
    CHECK_THROWS_AS(TemporalGraph::load(in), Error);
}

TEST_CASE("fact set grows monotonically across operations") {
    std::mt19937 rng(31);
    TemporalGraph g;
    for (int i = 0; i < 8; ++i) g.upsert_entity("e" + std::to_string(i), EntityType::OBJ);
    std::size_t prev = 0;
    std::uniform_int_distribution<std::uint32_t> id_dist(0, 7);
    for (int i = 0; i < 100; ++i) {
        auto s = id_dist(rng);
        auto o = id_dist(rng);
        if (s != o) g.insert_fact(s, "r", o, i % 10, "ep");
        CHECK(g.fact_count() >= prev);
        prev = g.fact_count();
        g.validate();
    }
}
