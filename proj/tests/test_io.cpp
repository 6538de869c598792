#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "testutil.hpp"
#include "vcsp/io.hpp"

using namespace vcsp;

static const char* kRhoText = R"(# worked example
language ex1
domain 0 1
function rho arity 2
  0 1 : 2
  1 0 : 1
  default : inf
end
)";

TEST_CASE("language parsing matches the hand-built table")
{
    LanguagePtr lang = parse_language(kRhoText);
    CHECK(lang->name == "ex1");
    CHECK(lang->domain.labels == std::vector<std::string>{"0", "1"});
    CHECK(lang->functions.size() == 1);
    CHECK(lang->functions[0] == fixtures::rho());
}

TEST_CASE("value tokens inside tables")
{
    LanguagePtr lang = parse_language(
        "language t\ndomain a b\nfunction f arity 1\n a : 3/2\n b : inf\nend\n");
    CHECK(lang->functions[0].at_index(0) == ExtValue::ratio(3, 2));
    CHECK(lang->functions[0].at_index(1).is_infinite());
}

TEST_CASE("language parser rejections")
{
    CHECK_THROWS_AS(parse_language("domain 0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_language("language x\n"), ParseError);
    // missing end
    CHECK_THROWS_AS(parse_language("language x\ndomain 0 1\nfunction f arity 1\n 0 : 1\n 1 : 2\n"),
        ParseError);
    // tuple outside the domain
    CHECK_THROWS_AS(parse_language(
        "language x\ndomain 0 1\nfunction f arity 1\n 2 : 1\n default : 0\nend\n"), SemanticError);
    // incomplete table without default
    CHECK_THROWS_AS(parse_language("language x\ndomain 0 1\nfunction f arity 1\n 0 : 1\nend\n"),
        SemanticError);
    // identically infinite function
    CHECK_THROWS_AS(parse_language("language x\ndomain 0 1\nfunction f arity 1\n default : inf\nend\n"),
        SemanticError);
    // duplicate function name
    CHECK_THROWS_AS(parse_language("language x\ndomain 0 1\n"
        "function f arity 1\n default : 0\nend\nfunction f arity 1\n default : 0\nend\n"),
        SemanticError);
    // duplicate tuple
    CHECK_THROWS_AS(parse_language(
        "language x\ndomain 0 1\nfunction f arity 1\n 0 : 1\n 0 : 2\n default : 0\nend\n"),
        SemanticError);
}

TEST_CASE("instance parsing and arity checks")
{
    LanguagePtr lang = parse_language(kRhoText);
    Instance inst = parse_instance("instance i\nvars x y\nconstraint rho x y\nconstraint rho y x\n", lang);
    CHECK(inst.variables == std::vector<std::string>{"x", "y"});
    CHECK(inst.constraints.size() == 2);
    CHECK(inst.constraints[1].scope == std::vector<std::size_t>{1, 0});

    CHECK_THROWS_AS(parse_instance("instance i\nvars x\nconstraint rho x\n", lang), SemanticError);
    CHECK_THROWS_AS(parse_instance("instance i\nvars x\nconstraint nosuch x\n", lang), SemanticError);
    CHECK_THROWS_AS(parse_instance("instance i\nvars x x\n", lang), SemanticError);
    CHECK_THROWS_AS(parse_instance("instance i\nvars x\nconstraint rho x z\n", lang), SemanticError);
}

TEST_CASE("digraph parsing")
{
    const char* text = "digraph g\n"
                       "vertex a level 0 role base label 0 cost 0\n"
                       "vertex b level 1 role internal\n"
                       "vertex c level 2 role tuple cost 3/2\n"
                       "edge a b\nedge b c\n";
    LeveledDigraph g = parse_digraph(text);
    CHECK(g.size() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.vertex(0).role == VertexRole::Base);
    CHECK(g.vertex(0).label == "0");
    CHECK(g.vertex(2).cost == ExtValue::ratio(3, 2));

    CHECK_THROWS_AS(parse_digraph("digraph g\nvertex a level 0 role nothing\n"), SemanticError);
    CHECK_THROWS_AS(parse_digraph("digraph g\nvertex a level 0 role base\nedge a a\n"), SemanticError);
    CHECK_THROWS_AS(parse_digraph(
        "digraph g\nvertex a level 0 role base\nvertex b level 1 role base\nedge a b\nedge a b\n"),
        SemanticError);
    CHECK_THROWS_AS(parse_digraph("digraph g\nedge a b\n"), SemanticError);
}

TEST_CASE("operation parsing infers the domain in argument order")
{
    auto ops = parse_operations("operation neg arity 1\n 0 : 1\n 1 : 0\nend\n");
    CHECK(ops.size() == 1);
    CHECK(ops[0].domain.labels == std::vector<std::string>{"0", "1"});
    CHECK(ops[0].table == std::vector<std::size_t>{1, 0});

    CHECK_THROWS_AS(parse_operations("operation f arity 2\n 0 0 : 0\nend\n"), SemanticError);
}

TEST_CASE("fpol parsing validates the weights")
{
    auto doc = parse_fpol("fpol\nweight 1/2 operation min\nweight 1/2 operation max\n");
    CHECK(doc.size() == 2);
    CHECK(doc[0].first == Rational(1, 2));

    CHECK_THROWS_AS(parse_fpol("fpol\nweight 1/2 operation min\n"), SemanticError);
    CHECK_THROWS_AS(parse_fpol("fpol\nweight 0 operation min\nweight 1 operation max\n"),
        SemanticError);
    CHECK_THROWS_AS(parse_fpol("fpol\nweight 1/2 operation min\nweight 1/2 operation min\n"),
        SemanticError);
}

TEST_CASE("solutions round-trip")
{
    Domain d = fixtures::boolean_domain();
    std::vector<std::string> vars{"x", "y"};
    Solution s{true, ExtValue::ratio(5, 3), {1, 0}};
    std::string text = serialize_solution(s, vars, d);
    Solution back = parse_solution(text, vars, d);
    CHECK(back.feasible);
    CHECK(back.optimum == s.optimum);
    CHECK(back.assignment == s.assignment);

    Solution inf;
    CHECK(serialize_solution(inf, vars, d) == "infeasible\n");
    CHECK(!parse_solution("infeasible\n", vars, d).feasible);
}

TEST_CASE("parse after serialize is the identity on random documents")
{
    testutil::Rng rng(90125);
    for (int round = 0; round < 40; ++round) {
        LanguagePtr lang = testutil::random_language(rng);
        std::string text = serialize_language(*lang);
        LanguagePtr back = parse_language(text);
        CHECK(same_language(*lang, *back));
        CHECK(back->name == lang->name);
        CHECK(serialize_language(*back) == text);

        Instance inst = testutil::random_instance(rng, lang);
        Instance inst_back = parse_instance(serialize_instance(inst), back);
        CHECK(inst_back.variables == inst.variables);
        CHECK(inst_back.constraints == inst.constraints);
    }
}

TEST_CASE("operation and digraph round-trips")
{
    testutil::Rng rng(4441);
    std::uniform_int_distribution<std::size_t> dsize(2, 3), result(0, 1);
    for (int round = 0; round < 25; ++round) {
        Domain d = testutil::random_domain(rng);
        std::uniform_int_distribution<std::size_t> pick(0, d.size() - 1);
        Operation op{"op" + std::to_string(round), d, 2,
            std::vector<std::size_t>(d.size() * d.size())};
        for (auto& t : op.table)
            t = pick(rng);
        auto back = parse_operations(serialize_operation(op));
        CHECK(back.size() == 1);
        CHECK(back[0].same_map(op));
        CHECK(serialize_operation(back[0]) == serialize_operation(op));
    }

    // digraph with optional fields
    LeveledDigraph g;
    g.name = "rt";
    g.add_vertex(DigraphVertex{"a", VertexRole::Base, 0, "0", ExtValue(0)});
    g.add_vertex(DigraphVertex{"b", VertexRole::Internal, 1, std::nullopt, std::nullopt});
    g.add_vertex(DigraphVertex{"c", VertexRole::Tuple, 2, "(0,1)", ExtValue::ratio(7, 2)});
    g.add_edge("a", "b");
    g.add_edge("b", "c");
    std::string text = serialize_digraph(g);
    LeveledDigraph back = parse_digraph(text);
    CHECK(serialize_digraph(back) == text);
    CHECK(back.size() == g.size());
    CHECK(back.vertex(2).cost == g.vertex(2).cost);
}
