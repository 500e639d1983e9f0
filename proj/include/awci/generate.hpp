#pragma once

// Synthetic datasets: planted conserved blocks, and small random instances
// for differential testing.

#include <cstdint>
#include <vector>

#include "awci/model.hpp"

namespace awci {

struct PlantedSpec {
  int m = 3;
  int n = 200;
  int alphabet_size = 50;  // background character pool
  int block_count = 3;
  int block_length = 10;
  int planted_delta = 0;  // extra unshared positions inside one copy
  double background_sharing = 0.2;
  int contig_breaks = 0;  // per genome, placed between background positions
  std::uint64_t seed = 1;

  /// Throws ValidationError when the blocks cannot fit.
  void validate() const;
};

struct PlantedDataset {
  Dataset data;
  /// One entry per block: its copy in every string, sorted by string.
  std::vector<std::vector<AnchoredInterval>> truth;
};

/// Every position holds a private character. Block b owns block_length
/// family characters; each string carries one copy of the block as a
/// shuffled run of family positions, and one string per block receives
/// planted_delta private-only positions inside its copy. A background
/// position additionally holds a random pool character with probability
/// background_sharing.
PlantedDataset generate_planted(const PlantedSpec& spec);

struct RandomSpec {
  int min_m = 2;
  int max_m = 4;
  int max_n = 12;
  int max_alphabet = 8;
  int max_set_size = 3;
  double break_probability = 0.05;
};

/// Seeded random dataset with labels "c0", "c1", ...
Dataset random_instance(std::uint64_t seed, const RandomSpec& spec = {});

}  // namespace awci
