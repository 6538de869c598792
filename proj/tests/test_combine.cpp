#include "doctest.h"

#include "fixtures.hpp"
#include "testutil.hpp"
#include "vcsp/combine.hpp"
#include "vcsp/solve.hpp"

using namespace vcsp;

TEST_CASE("single-function language combines to itself")
{
    auto lang = fixtures::rho_language();
    CombinedLanguage c = combine_language(lang);
    CHECK(c.phi().arity() == 2);
    CHECK(c.phi().table() == fixtures::rho().table());
    CHECK(c.layout == std::vector<BlockLayout>{{"rho", 0, 2}});

    Instance inst{lang, "i", {"x", "y"}, {}};
    inst.add_constraint("rho", std::vector<std::size_t>{0, 1});
    auto [converted, offset] = to_combined_instance(c, inst);
    CHECK(offset == ExtValue(0));
    CHECK(converted.variables == inst.variables);
    CHECK(converted.constraints.size() == 1);
}

TEST_CASE("two-function combination: blocks add up")
{
    auto lang = make_language("two", fixtures::boolean_domain(), {fixtures::unary_u(), fixtures::rho()});
    CombinedLanguage c = combine_language(lang);
    CHECK(c.total_arity() == 3);
    CHECK(c.layout == std::vector<BlockLayout>{{"u", 0, 1}, {"rho", 1, 2}});
    // u(0) + rho(0,1) = 0 + 2
    CHECK(c.phi().at(std::vector<std::size_t>{0, 0, 1}) == ExtValue(2));
    // u(1) + rho(1,0) = 5 + 1
    CHECK(c.phi().at(std::vector<std::size_t>{1, 1, 0}) == ExtValue(6));
    CHECK(c.phi().at(std::vector<std::size_t>{0, 0, 0}).is_infinite());
    CHECK(c.block_minima == std::vector<ExtValue>{ExtValue(0), ExtValue(1)});

    // brute check of the defining sum on the whole table
    for (std::size_t idx = 0; idx < c.phi().table_size(); ++idx) {
        std::vector<std::size_t> t(3);
        unpack_tuple(idx, 2, t);
        ExtValue want = lang->functions[0].at(std::span<const std::size_t>(t.data(), 1))
            + lang->functions[1].at(std::span<const std::size_t>(t.data() + 1, 2));
        CHECK(c.phi().at_index(idx) == want);
    }
}

TEST_CASE("instance conversion pads with fresh variables and tracks the offset")
{
    auto lang = make_language("two", fixtures::boolean_domain(), {fixtures::unary_u(), fixtures::rho()});
    CombinedLanguage c = combine_language(lang);

    Instance rho_only{lang, "i", {"x", "y"}, {}};
    rho_only.add_constraint("rho", std::vector<std::size_t>{0, 1});
    auto [conv1, off1] = to_combined_instance(c, rho_only);
    CHECK(off1 == ExtValue(0)); // min u = 0
    CHECK(conv1.variables.size() == 3);
    CHECK(conv1.variables[2] == "_pad1_1");
    CHECK(conv1.constraints[0].scope == std::vector<std::size_t>{2, 0, 1});

    Instance u_only{lang, "j", {"x"}, {}};
    u_only.add_constraint("u", std::vector<std::size_t>{0});
    auto [conv2, off2] = to_combined_instance(c, u_only);
    CHECK(off2 == ExtValue(1)); // min finite of rho
    CHECK(conv2.variables.size() == 3);

    // empty language is rejected
    CHECK_THROWS_AS(combine_language(make_language("e", fixtures::boolean_domain(), {})),
        EmptyLanguage);
}

TEST_CASE("splitting a combined instance preserves the objective pointwise")
{
    auto lang = make_language("two", fixtures::boolean_domain(), {fixtures::unary_u(), fixtures::rho()});
    CombinedLanguage c = combine_language(lang);

    Instance inst{c.combined, "i", {"a", "b", "c"}, {}};
    inst.add_constraint("phi_gamma", std::vector<std::size_t>{0, 1, 2});
    Instance split = from_combined_instance(c, inst);
    CHECK(split.constraints.size() == 2);
    CHECK(split.language == lang);
    CHECK(split.constraints[0].scope == std::vector<std::size_t>{0});
    CHECK(split.constraints[1].scope == std::vector<std::size_t>{1, 2});

    for (std::size_t code = 0; code < 8; ++code) {
        Assignment a(3);
        unpack_tuple(code, 2, a);
        CHECK(evaluate(inst, a) == evaluate(split, a));
    }
}

TEST_CASE("optimum transfers through combination on random instances")
{
    testutil::Rng rng(5150);
    for (int round = 0; round < 30; ++round) {
        LanguagePtr lang = testutil::random_language(rng);
        Instance inst = testutil::random_instance(rng, lang);
        CombinedLanguage c = combine_language(lang);
        auto [conv, offset] = to_combined_instance(c, inst);

        Solution a = brute_force(inst);
        Solution b = brute_force(conv);
        CHECK(a.feasible == b.feasible);
        if (a.feasible) {
            CHECK(b.optimum == a.optimum + offset);
            // restriction of the optimal converted assignment is optimal
            Assignment restricted(a.assignment.size());
            for (std::size_t v = 0; v < inst.variables.size(); ++v)
                restricted[v] = b.assignment[conv.variable_index(inst.variables[v])];
            CHECK(evaluate(inst, restricted) == a.optimum);
        }

        // splitting back is pointwise-exact on the combined variables
        Instance split = from_combined_instance(c, conv);
        Solution s = brute_force(split);
        CHECK(s.feasible == b.feasible);
        if (s.feasible)
            CHECK(s.optimum == b.optimum);
    }
}
