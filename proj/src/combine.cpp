#include "vcsp/combine.hpp"

#include <cstdint>

namespace vcsp {

CombinedLanguage combine_language(const LanguagePtr& gamma)
{
    if (!gamma || gamma->functions.empty())
        throw EmptyLanguage("cannot combine an empty language");

    CombinedLanguage out;
    out.source = gamma;

    unsigned total = 0;
    for (const auto& f : gamma->functions) {
        out.layout.push_back(BlockLayout{f.name(), total, f.arity()});
        out.block_minima.push_back(f.min_finite());
        total += f.arity();
    }

    const std::size_t d = gamma->domain.size();
    const std::size_t size = checked_pow(d, total, std::uint64_t(1) << 27);
    std::vector<ExtValue> table(size);

    const std::int64_t n = static_cast<std::int64_t>(size);
#pragma omp parallel for schedule(static)
    for (std::int64_t idx = 0; idx < n; ++idx) {
        std::vector<std::size_t> tuple(total);
        unpack_tuple(static_cast<std::size_t>(idx), d, tuple);
        ExtValue sum(0);
        for (std::size_t b = 0; b < out.layout.size(); ++b) {
            const auto& block = out.layout[b];
            std::span<const std::size_t> slice(tuple.data() + block.offset, block.arity);
            sum += gamma->functions[b].at(slice);
            if (sum.is_infinite())
                break;
        }
        table[idx] = sum;
    }

    CostFunction phi("phi_gamma", gamma->domain, total, std::move(table));
    out.combined = make_language(gamma->name + "_combined", gamma->domain, {std::move(phi)});
    return out;
}

std::pair<Instance, ExtValue> to_combined_instance(const CombinedLanguage& c, const Instance& instance)
{
    if (instance.language != c.source
        && !(instance.language && c.source && same_language(*instance.language, *c.source)))
        throw WrongLanguage("instance is not over the combined language's source");

    Instance out{c.combined, instance.name + "_combined", instance.variables, {}};
    ExtValue offset(0);

    for (std::size_t ci = 0; ci < instance.constraints.size(); ++ci) {
        const auto& con = instance.constraints[ci];
        const std::size_t block = con.function;
        std::vector<std::size_t> scope;
        scope.reserve(c.total_arity());
        for (std::size_t b = 0; b < c.layout.size(); ++b) {
            if (b == block) {
                scope.insert(scope.end(), con.scope.begin(), con.scope.end());
            } else {
                for (unsigned k = 0; k < c.layout[b].arity; ++k) {
                    std::string pad = "_pad" + std::to_string(ci + 1) + "_"
                        + std::to_string(c.layout[b].offset + k + 1);
                    out.variables.push_back(pad);
                    scope.push_back(out.variables.size() - 1);
                }
                offset += c.block_minima[b];
            }
        }
        out.add_constraint("phi_gamma", scope);
    }
    return {std::move(out), offset};
}

Instance from_combined_instance(const CombinedLanguage& c, const Instance& instance)
{
    Instance out{c.source, instance.name + "_split", instance.variables, {}};
    for (const auto& con : instance.constraints) {
        if (instance.language->functions[con.function].name() != "phi_gamma")
            throw UnknownFunction("constraint does not use phi_gamma");
        for (const auto& block : c.layout) {
            std::vector<std::size_t> slice(con.scope.begin() + block.offset,
                con.scope.begin() + block.offset + block.arity);
            out.add_constraint(block.function_name, slice);
        }
    }
    return out;
}

} // namespace vcsp
