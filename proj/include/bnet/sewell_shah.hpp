#pragma once

#include "bnet/dataset.hpp"
#include "bnet/search.hpp"

namespace bnet {

// The Sewall and Shah (1968) college-plans contingency table over
// SEX(2), SES(4), IQ(4), PE(2), CP(2), embedded so the reproduction
// pipeline runs without external inputs. 128 entries, total 10318.
const CountsTable& sewell_shah_counts();

// The study's analysis constraints: SEX and SES take no parents, CP takes
// no children.
StructureConstraints sewell_shah_constraints();

}  // namespace bnet
