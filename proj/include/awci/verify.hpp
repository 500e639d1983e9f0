#pragma once

// Differential check of the fast path against the oracle on one seeded
// random instance.

#include <cstdint>
#include <string>

#include "awci/generate.hpp"
#include "awci/model.hpp"

namespace awci {

struct VerifyOutcome {
  bool ok = true;
  std::string detail;  // first mismatch, empty when ok
  std::size_t pairs = 0;
  std::size_t sets = 0;
};

/// Parameters drawn for `seed`: delta in {0, 1, 2}, minimum size in {1, 3},
/// quorum in [2, m].
SearchParams verify_params(std::uint64_t seed, const Dataset& data);

/// Small instance used by verify_instance (m <= 4, n <= 10, |alphabet| <= 8).
RandomSpec verify_spec();

/// Compares pairs (with and without quorum grouping and filtering) and
/// maximal closed sets (with and without filtering and pruning) against
/// the oracle.
VerifyOutcome verify_instance(std::uint64_t seed, int threads = 1);

}  // namespace awci
