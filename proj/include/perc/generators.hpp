#pragma once

#include <cstdint>
#include <string>

#include "perc/lattice.hpp"

namespace perc {

enum class GeneratorKind { foliation_horizontal, foliation_vertical, spanning_tree, comb };

std::string generator_name(GeneratorKind kind);
GeneratorKind generator_from_name(const std::string& name);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::foliation_horizontal;
    int spacing = 1;        // comb tooth spacing; 1 puts a tooth on every column
    std::uint64_t seed = 0; // used by spanning_tree only
};

// Deterministic given (spec, window). foliation_* fill every row (resp.
// column); comb is the full bottom row plus vertical teeth; spanning_tree is a
// uniform spanning tree sampled by Wilson's loop-erased random walk.
EdgeSet generate(const GeneratorSpec& spec, const LatticeWindow& window);

// Finite-volume proxy: every vertex lies in a cluster that touches the window
// boundary.
bool is_everywhere_percolating(const EdgeSet& configuration);

// Every L1-ball of radius `radius` meets a boundary-touching cluster.
bool is_densely_percolating(const EdgeSet& configuration, int radius);

}  // namespace perc
