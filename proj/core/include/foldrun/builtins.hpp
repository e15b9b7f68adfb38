#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "foldrun/dfa.hpp"

namespace foldrun::aut {

// Padding-closed automata for the arithmetic atoms of the formula language.
// Binary relations read tracks (x, y); addition reads (x, y, z) with x+y=z.

Dfa equality();
Dfa less_than();      // x < y
Dfa less_equal();     // x <= y
Dfa greater_than();   // x > y
Dfa greater_equal();  // x >= y
Dfa addition();       // x + y = z
Dfa subtraction();    // x - y = z over naturals, i.e. z + y = x

Dfa constant(std::uint64_t c);             // unary {c}
Dfa constant_multiple(std::uint64_t c);    // (x, z): z = c*x, c >= 1
Dfa floor_division(std::uint64_t c);       // (x, z): z = floor(x/c), c >= 1

/// The named set, for table-driven tests and tooling.
std::vector<std::pair<std::string, Dfa>> builtin_relations();

}  // namespace foldrun::aut
