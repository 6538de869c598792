#include "doctest.h"

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "testutil.hpp"
#include "vcsp/digraph.hpp"

using namespace vcsp;

TEST_CASE("oriented path shapes and counts")
{
    // straight path: m=2, both segments single edges
    OrientedPath straight = oriented_path(2, {1, 2});
    CHECK(straight.edge_count() == 4);
    CHECK(straight.vertex_count() == 5);
    CHECK(straight.levels.back() == 4);

    // all zigzags: edge, zigzag, zigzag, edge
    OrientedPath zz = oriented_path(2, {});
    CHECK(zz.edge_count() == 8);
    CHECK(zz.vertex_count() == 9);
    CHECK(zz.levels.back() == 4);

    OrientedPath one = oriented_path(3, {2});
    CHECK(one.edge_count() == 9); // 2 + 1 + 3*2
    CHECK(one.levels.back() == 5);

    CHECK_THROWS_AS(oriented_path(2, {3}), IndexOutOfRange);
}

TEST_CASE("oriented path edge count formula, exhaustively to m = 5")
{
    for (unsigned m = 1; m <= 5; ++m) {
        for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
            std::set<unsigned> s;
            for (unsigned i = 1; i <= m; ++i)
                if (mask & (std::size_t(1) << (i - 1)))
                    s.insert(i);
            OrientedPath q = oriented_path(m, s);
            CHECK(q.edge_count() == 2 + s.size() + 3 * (m - s.size()));
            CHECK(q.vertex_count() == q.edge_count() + 1);
            CHECK(q.levels.back() == static_cast<long>(m) + 2);
            CHECK(q.levels.front() == 0);
        }
    }
}

TEST_CASE("levels of simple digraphs")
{
    LeveledDigraph edge;
    edge.add_vertex(DigraphVertex{"a", VertexRole::Internal, 0, std::nullopt, std::nullopt});
    edge.add_vertex(DigraphVertex{"b", VertexRole::Internal, 0, std::nullopt, std::nullopt});
    edge.add_edge("a", "b");
    LevelResult lr = compute_levels(edge);
    CHECK(lr.balanced);
    CHECK(lr.levels == std::vector<long>{0, 1});
    CHECK(lr.height == 1);

    LeveledDigraph triangle;
    triangle.add_vertex(DigraphVertex{"a", VertexRole::Internal, 0, std::nullopt, std::nullopt});
    triangle.add_vertex(DigraphVertex{"b", VertexRole::Internal, 0, std::nullopt, std::nullopt});
    triangle.add_vertex(DigraphVertex{"c", VertexRole::Internal, 0, std::nullopt, std::nullopt});
    triangle.add_edge("a", "b");
    triangle.add_edge("b", "c");
    triangle.add_edge("c", "a");
    CHECK(!compute_levels(triangle).balanced);
}

TEST_CASE("levels are invariant under relabeling and edge reordering")
{
    testutil::Rng rng(99);
    OrientedPath q = oriented_path(3, {1, 3});
    // realize the path as a digraph twice, with shuffled vertex insertion
    auto realize = [&](const std::vector<std::size_t>& order,
                       std::vector<std::pair<std::size_t, std::size_t>> edges) {
        LeveledDigraph g;
        std::vector<std::string> names(q.vertex_count());
        for (std::size_t i : order) {
            names[i] = "v" + std::to_string(i);
            g.add_vertex(DigraphVertex{names[i], VertexRole::Internal, 0, std::nullopt, std::nullopt});
        }
        for (auto [a, b] : edges)
            g.add_edge(names[a], names[b]);
        LevelResult lr = compute_levels(g);
        REQUIRE(lr.balanced);
        std::map<std::string, long> by_name;
        for (std::size_t v = 0; v < g.size(); ++v)
            by_name[g.vertex(v).id] = lr.levels[v];
        return by_name;
    };

    std::vector<std::size_t> order(q.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    auto base = realize(order, q.edges);

    for (int round = 0; round < 5; ++round) {
        auto shuffled_order = order;
        auto shuffled_edges = q.edges;
        std::shuffle(shuffled_order.begin(), shuffled_order.end(), rng);
        std::shuffle(shuffled_edges.begin(), shuffled_edges.end(), rng);
        CHECK(realize(shuffled_order, shuffled_edges) == base);
    }
}

TEST_CASE("components are found and ordered deterministically")
{
    LeveledDigraph g;
    g.add_vertex(DigraphVertex{"d", VertexRole::Internal, 0, std::nullopt, std::nullopt});
    g.add_vertex(DigraphVertex{"c", VertexRole::Internal, 0, std::nullopt, std::nullopt});
    g.add_vertex(DigraphVertex{"b", VertexRole::Internal, 0, std::nullopt, std::nullopt});
    g.add_vertex(DigraphVertex{"a", VertexRole::Internal, 0, std::nullopt, std::nullopt});
    g.add_edge("d", "c");
    g.add_edge("b", "a");
    auto comps = connected_components(g);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].vertex(0).id == "a"); // smallest id first
    CHECK(comps[1].vertex(0).id == "c");

    LeveledDigraph empty;
    CHECK(connected_components(empty).empty());
}

TEST_CASE("extended dual digraph of the binary worked example")
{
    CombinedLanguage c = combine_language(fixtures::rho_language());
    ExtDualLanguage e = extended_dual_language(c);

    CHECK(e.digraph.size() == 24);
    CHECK(e.digraph.edge_count() == 24);
    CHECK(expected_extdual_vertices(2, 2, 2) == 24);
    CHECK(expected_extdual_edges(2, 2, 2) == 24);

    LevelResult lr = compute_levels(e.digraph);
    CHECK(lr.balanced);
    CHECK(lr.height == 4);
    CHECK(component_vertex_sets(e.digraph).size() == 1);

    // built levels agree with recomputed ones
    for (std::size_t v = 0; v < e.digraph.size(); ++v)
        CHECK(e.digraph.vertex(v).level == lr.levels[v]);

    // unary cost: phi values on the tuple vertices, zero elsewhere
    const CostFunction& mu = e.mu();
    for (std::size_t v = 0; v < e.digraph.size(); ++v) {
        if (e.digraph.vertex(v).id == "(0,1)")
            CHECK(mu.at_index(v) == ExtValue(2));
        else if (e.digraph.vertex(v).id == "(1,0)")
            CHECK(mu.at_index(v) == ExtValue(1));
        else
            CHECK(mu.at_index(v) == ExtValue(0));
    }

    // every base-to-tuple path realizes the forced-segment path
    for (std::size_t t = 0; t < e.tuple_vertex.size(); ++t)
        for (std::size_t b = 0; b < e.base_vertex.size(); ++b) {
            OrientedPath q = oriented_path(e.m(), e.forced_segments(t, b));
            const auto& chain = e.path_vertices[t][b];
            REQUIRE(chain.size() == q.vertex_count());
            for (const auto& [x, y] : q.edges)
                CHECK(e.digraph.has_edge(chain[x], chain[y]));
            for (std::size_t k = 0; k < chain.size(); ++k)
                CHECK(e.digraph.vertex(chain[k]).level == q.levels[k]);
        }
}

TEST_CASE("count formulas hold on random languages")
{
    testutil::Rng rng(60601);
    for (int round = 0; round < 12; ++round) {
        LanguagePtr lang = testutil::random_language(rng);
        CombinedLanguage c = combine_language(lang);
        ExtDualLanguage e = extended_dual_language(c);
        std::size_t dprime = e.dprime_tuples.size();
        CHECK(static_cast<long>(e.digraph.size())
            == expected_extdual_vertices(lang->domain.size(), dprime, c.total_arity()));
        CHECK(static_cast<long>(e.digraph.edge_count())
            == expected_extdual_edges(lang->domain.size(), dprime, c.total_arity()));
        LevelResult lr = compute_levels(e.digraph);
        CHECK(lr.balanced);
        CHECK(lr.height == static_cast<long>(c.total_arity()) + 2);
    }
}

TEST_CASE("max-cut cost function produces the hard-digraph shape")
{
    LanguagePtr lang = make_language("cut", fixtures::boolean_domain(), {fixtures::maxcut_phi()});
    CombinedLanguage c = combine_language(lang);
    ExtDualLanguage e = extended_dual_language(c);
    // |D| = 2, |D'| = 4, m = 2
    CHECK(e.digraph.size() == 46);
    CHECK(e.digraph.edge_count() == 48);

    // straight paths 0 -> (0,0) and 1 -> (1,1); all-zigzag paths 0 -> (1,1), 1 -> (0,0)
    auto seg = [&](const char* tuple, const char* base) {
        std::size_t t = 0;
        for (; t < e.dprime_tuples.size(); ++t)
            if (e.digraph.vertex(e.tuple_vertex[t]).id == tuple)
                break;
        std::size_t b = e.combined.source->domain.index_of(base);
        return e.forced_segments(t, b);
    };
    CHECK(seg("(0,0)", "0") == std::set<unsigned>{1, 2});
    CHECK(seg("(1,1)", "1") == std::set<unsigned>{1, 2});
    CHECK(seg("(1,1)", "0") == std::set<unsigned>{});
    CHECK(seg("(0,0)", "1") == std::set<unsigned>{});
    CHECK(seg("(0,1)", "0") == std::set<unsigned>{1});
    CHECK(seg("(0,1)", "1") == std::set<unsigned>{2});
}
