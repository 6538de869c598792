#include "doctest.h"

#include "fixtures.hpp"
#include "vcsp/core.hpp"

using namespace vcsp;

TEST_CASE("cost function lookup matches the table")
{
    CostFunction rho = fixtures::rho();
    std::vector<std::string> t01{"0", "1"}, t10{"1", "0"}, t00{"0", "0"};
    CHECK(evaluate(rho, std::span<const std::string>(t01)) == ExtValue(2));
    CHECK(evaluate(rho, std::span<const std::string>(t10)) == ExtValue(1));
    CHECK(evaluate(rho, std::span<const std::string>(t00)).is_infinite());

    std::vector<std::string> bad{"0"};
    CHECK_THROWS_AS(evaluate(rho, std::span<const std::string>(bad)), ArityMismatch);
    std::vector<std::string> unk{"0", "2"};
    CHECK_THROWS_AS(evaluate(rho, std::span<const std::string>(unk)), UnknownLabel);
}

TEST_CASE("instance evaluation sums constraints, infinity absorbs")
{
    auto lang = fixtures::rho_language();
    Instance single{lang, "single", {"x", "y"}, {}};
    single.add_constraint("rho", std::vector<std::size_t>{0, 1});

    CHECK(evaluate(single, Assignment{1, 0}) == ExtValue(1));
    CHECK(evaluate(single, Assignment{0, 0}).is_infinite());

    Instance both{lang, "both", {"x", "y"}, {}};
    both.add_constraint("rho", std::vector<std::size_t>{0, 1});
    both.add_constraint("rho", std::vector<std::size_t>{1, 0});
    CHECK(evaluate(both, Assignment{0, 1}) == ExtValue(3));
}

TEST_CASE("feasibility relation")
{
    CostFunction rho = fixtures::rho();
    CostFunction feas = feasibility_relation(rho);
    CHECK(feas.is_crisp());
    CHECK(feas.feasible_indices() == std::vector<std::size_t>{0b01, 0b10});

    CostFunction fs = feasibility_relation(fixtures::phi_sum());
    CHECK(fs.feasible_indices() == std::vector<std::size_t>{0b001, 0b010, 0b100});

    // idempotent on crisp functions
    CHECK(feasibility_relation(feas).table() == feas.table());
    CHECK(feasibility_relation(fs).table() == fs.table());
}

TEST_CASE("evaluate is infinite exactly when some scope leaves Feas")
{
    auto lang = fixtures::phi_sum_language();
    Instance inst{lang, "i", {"x", "y", "z", "w"}, {}};
    inst.add_constraint("phi_sum", std::vector<std::size_t>{0, 1, 2});
    inst.add_constraint("phi_sum", std::vector<std::size_t>{2, 1, 3});

    const auto& f = lang->functions[0];
    for (std::size_t code = 0; code < 16; ++code) {
        Assignment a(4);
        unpack_tuple(code, 2, a);
        bool outside = false;
        for (const auto& c : inst.constraints) {
            std::vector<std::size_t> t{a[c.scope[0]], a[c.scope[1]], a[c.scope[2]]};
            if (f.at(t).is_infinite())
                outside = true;
        }
        CHECK(evaluate(inst, a).is_infinite() == outside);
    }
}

TEST_CASE("language validation")
{
    auto d = fixtures::boolean_domain();
    CHECK_THROWS_AS(make_language("bad", Domain{{}}, {}), SemanticError);
    CHECK_THROWS_AS(make_language("bad", Domain{{"0", "0"}}, {}), SemanticError);
    CHECK_THROWS_AS(
        make_language("bad", d, {fixtures::rho(), fixtures::rho()}), SemanticError);
    CHECK_THROWS_AS(
        make_language("bad", d,
            {CostFunction::filled("allinf", d, 1, ExtValue::infinity())}),
        SemanticError);
    CHECK_THROWS_AS(
        make_language("bad", d, {fixtures::phi_eq(3)}), DomainMismatch);
}

TEST_CASE("constraint construction checks")
{
    auto lang = fixtures::rho_language();
    Instance inst{lang, "i", {"x"}, {}};
    CHECK_THROWS_AS(inst.add_constraint("rho", std::vector<std::size_t>{0}), ArityMismatch);
    CHECK_THROWS_AS(inst.add_constraint("nope", std::vector<std::size_t>{0, 0}), UnknownFunction);
    CHECK_THROWS_AS(inst.add_constraint("rho", std::vector<std::size_t>{0, 5}), UnknownVariable);
    inst.add_constraint("rho", std::vector<std::size_t>{0, 0});
    CHECK(inst.constraints.size() == 1);
}

TEST_CASE("tuple packing is lexicographic")
{
    std::vector<std::size_t> t{1, 0, 2};
    CHECK(pack_tuple(t, 3) == 11);
    std::vector<std::size_t> out(3);
    unpack_tuple(11, 3, out);
    CHECK(out == t);
    CHECK(pack_tuple(std::vector<std::size_t>{0, 0, 0}, 3) == 0);
    CHECK(pack_tuple(std::vector<std::size_t>{2, 2, 2}, 3) == 26);
}
