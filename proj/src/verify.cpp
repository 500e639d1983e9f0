#include "awci/verify.hpp"

#include "awci/assembler.hpp"
#include "awci/macsi.hpp"
#include "awci/oracle.hpp"

namespace awci {

RandomSpec verify_spec() {
  RandomSpec spec;
  spec.max_m = 4;
  spec.max_n = 10;
  spec.max_alphabet = 8;
  return spec;
}

SearchParams verify_params(std::uint64_t seed, const Dataset& data) {
  SearchParams params;
  params.delta = static_cast<int>(seed % 3);
  params.min_size = (seed / 3) % 2 ? 3 : 1;
  params.quorum = 2 + static_cast<int>((seed / 6) % (data.size() - 1));
  return params;
}

VerifyOutcome verify_instance(std::uint64_t seed, int threads) {
  VerifyOutcome outcome;
  const auto data = random_instance(seed, verify_spec());
  const auto params = verify_params(seed, data);
  auto fail = [&](std::string what) {
    outcome.ok = false;
    outcome.detail = std::move(what);
    return outcome;
  };

  for (bool grouping : {false, true}) {
    const auto expected = brute_force_pairs(data, params, grouping);
    for (bool filter : {true, false}) {
      EnumerateOptions options;
      options.quorum_grouping = grouping;
      options.use_filter = filter;
      options.threads = threads;
      if (enumerate_pairs(data, params, options) != expected)
        return fail(std::string("pairs differ") +
                    (grouping ? " (quorum grouping)" : "") +
                    (filter ? "" : " (no filter)"));
    }
    if (!grouping) outcome.pairs = expected.size();
  }

  const auto expected = brute_force_maximal_closed_sets(data, params);
  outcome.sets = expected.size();
  for (bool filter : {true, false})
    for (bool prune : {true, false}) {
      PipelineOptions options;
      options.use_filter = filter;
      options.prune = prune;
      options.threads = threads;
      if (find_maximal_closed_sets(data, params, options).sets != expected)
        return fail(std::string("sets differ") + (filter ? "" : " (no filter)") +
                    (prune ? "" : " (no prune)"));
    }
  return outcome;
}

}  // namespace awci
