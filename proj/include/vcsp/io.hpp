#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vcsp/algebra.hpp"
#include "vcsp/core.hpp"
#include "vcsp/digraph.hpp"
#include "vcsp/solve.hpp"

namespace vcsp {

// Line-oriented text formats; '#' starts a comment. Serialization is
// canonical (most frequent table value becomes the default line, explicit
// rows in lexicographic tuple order), so identical inputs always produce
// byte-identical files, and parse(serialize(x)) = x for every kind.

LanguagePtr parse_language(const std::string& text);
std::string serialize_language(const Language& lang);

Instance parse_instance(const std::string& text, const LanguagePtr& language);
std::string serialize_instance(const Instance& instance);

LeveledDigraph parse_digraph(const std::string& text);
std::string serialize_digraph(const LeveledDigraph& g);

std::vector<Operation> parse_operations(const std::string& text);
std::string serialize_operation(const Operation& op);
std::string serialize_operations(const std::vector<Operation>& ops);

// weights by operation name; positive, summing to one
using FpolDocument = std::vector<std::pair<Rational, std::string>>;
FpolDocument parse_fpol(const std::string& text);
std::string serialize_fpol(const FpolDocument& doc);

// bind a parsed fpol document to operation tables
FractionalPolymorphism bind_fpol(const FpolDocument& doc, const std::vector<Operation>& ops);

std::string serialize_solution(const Solution& s, const std::vector<std::string>& variables,
    const Domain& domain);
Solution parse_solution(const std::string& text, const std::vector<std::string>& variables,
    const Domain& domain);

} // namespace vcsp
