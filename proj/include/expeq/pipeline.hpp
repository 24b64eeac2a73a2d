#pragma once

/* End-to-end composition of the reductions and the finiteness engine:
 * expand -> rescale -> extract sublattice -> per-class translate -> 2-pi-i
 * split -> specialize -> height constants -> bound -> enumerate -> certify,
 * with the univariate special case and the n0-recovery step.
 */

#include "expeq/finite.hpp"

namespace expeq {

struct PipelineOptions {
    Integer denominator_N{1};
    std::vector<std::vector<Integer>> class_translates; // over the rescaled integer lattice
    Prec precision_bits = 128;
    Guards guards;
};

FinitenessCertificate run_pipeline(const ExpPolyEquation& eq, const PipelineOptions& opts);

} // namespace expeq
