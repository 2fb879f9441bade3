#ifndef TREESHIFT_TESTS_GENERATORS_HPP
#define TREESHIFT_TESTS_GENERATORS_HPP

// Deterministic random-spec generators for property tests.  Every generator
// takes the caller's RNG so a test's sequence is fixed by its seed and
// independent of other tests.

#include <random>

#include "treeshift/snre.hpp"
#include "treeshift/tree_spec.hpp"

namespace treeshift::testsupport {

// A random pruned spec over the first `symbols` letters with the given arity.
// Each child tuple is kept with probability `density`; every root keeps at
// least one tuple, and the result is pruned (so it may have fewer symbols
// than requested, but never zero).
TreeShiftSpec random_pruned_spec(std::mt19937_64& rng, int arity, int symbols,
                                 double density = 0.4);

// A random pruned spec in which every symbol is essential (rejection-sampled;
// throws after too many failed attempts, which no fixed seed in this suite
// hits).
TreeShiftSpec random_all_essential_spec(std::mt19937_64& rng, int arity, int symbols,
                                        double density = 0.5);

}  // namespace treeshift::testsupport

#endif  // TREESHIFT_TESTS_GENERATORS_HPP
