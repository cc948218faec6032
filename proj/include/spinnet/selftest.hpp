#ifndef SPINNET_SELFTEST_HPP
#define SPINNET_SELFTEST_HPP

#include <iosfwd>

#include "spinnet/types.hpp"

namespace spinnet {

/// Built-in invariant catalog: operator identities, decomposition
/// bookkeeping, permutation-invariant algebra counts, Dynkin maximality
/// probes and the split-coupling example pair. Prints one line per check.
bool run_selftest(std::ostream& os, double tol = kClosureTol);

}  // namespace spinnet

#endif
