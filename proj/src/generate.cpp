#include "awci/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "awci/errors.hpp"

namespace awci {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

}  // namespace

void PlantedSpec::validate() const {
  if (m < 2) throw ValidationError("planted spec: m must be >= 2");
  if (n < 1) throw ValidationError("planted spec: n must be >= 1");
  if (block_count < 0 || block_length < 1 || planted_delta < 0)
    throw ValidationError("planted spec: invalid block shape");
  if (planted_delta > 0 && block_length < 2)
    throw ValidationError("planted spec: insertions need block_length >= 2");
  if (background_sharing < 0 || background_sharing > 1)
    throw ValidationError("planted spec: background_sharing outside [0, 1]");
  if (background_sharing > 0 && alphabet_size < 1)
    throw ValidationError("planted spec: empty background pool");
  if (contig_breaks < 0)
    throw ValidationError("planted spec: negative contig break count");
  const long longest =
      static_cast<long>(block_count) * block_length + planted_delta * block_count;
  if (longest > n)
    throw ValidationError("planted spec: blocks need " +
                          std::to_string(longest) + " positions, n = " +
                          std::to_string(n));
}

PlantedDataset generate_planted(const PlantedSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  PlantedDataset out;

  std::vector<int> inserted(static_cast<std::size_t>(spec.block_count));
  for (auto& g : inserted) g = uniform(rng, 0, spec.m - 1);
  out.truth.resize(inserted.size());

  for (int g = 0; g < spec.m; ++g) {
    const auto genome = "G" + std::to_string(g + 1);
    std::vector<int> order(static_cast<std::size_t>(spec.block_count));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    int block_total = 0;
    for (int b = 0; b < spec.block_count; ++b)
      block_total += spec.block_length +
                     (inserted[static_cast<std::size_t>(b)] == g ? spec.planted_delta : 0);
    const int background = spec.n - block_total;

    // Gap index (0..background) in front of which each block starts.
    std::vector<int> gaps(order.size());
    for (auto& gap : gaps) gap = uniform(rng, 0, background);
    std::sort(gaps.begin(), gaps.end());

    std::vector<std::vector<std::string>> sets;
    std::vector<bool> is_background;
    auto private_label = [&] {
      return genome + "_" + std::to_string(sets.size() + 1);
    };
    auto add_background = [&] {
      std::vector<std::string> set{private_label()};
      if (chance(rng, spec.background_sharing))
        set.push_back("c" + std::to_string(uniform(rng, 0, spec.alphabet_size - 1)));
      sets.push_back(std::move(set));
      is_background.push_back(true);
    };
    auto add_block = [&](int b) {
      std::vector<int> family(static_cast<std::size_t>(spec.block_length));
      std::iota(family.begin(), family.end(), 0);
      std::shuffle(family.begin(), family.end(), rng);
      const int extra =
          inserted[static_cast<std::size_t>(b)] == g ? spec.planted_delta : 0;
      // Insertion k goes after family position after[k] (never the last).
      std::vector<int> after(static_cast<std::size_t>(extra));
      for (auto& a : after) a = uniform(rng, 0, spec.block_length - 2);
      std::sort(after.begin(), after.end());
      const int start = static_cast<int>(sets.size()) + 1;
      auto next = after.begin();
      for (int k = 0; k < spec.block_length; ++k) {
        sets.push_back({private_label(), "b" + std::to_string(b + 1) + "f" +
                                             std::to_string(family[static_cast<std::size_t>(k)] + 1)});
        is_background.push_back(false);
        for (; next != after.end() && *next == k; ++next) {
          sets.push_back({private_label()});
          is_background.push_back(false);
        }
      }
      out.truth[static_cast<std::size_t>(b)].push_back(
          {static_cast<std::size_t>(g), start, static_cast<int>(sets.size())});
    };

    std::size_t placed = 0;
    for (int gap = 0; gap <= background; ++gap) {
      for (; placed < gaps.size() && gaps[placed] == gap; ++placed)
        add_block(order[placed]);
      if (gap < background) add_background();
    }

    std::vector<int> candidates;
    for (int p = 1; p < spec.n; ++p)
      if (is_background[static_cast<std::size_t>(p - 1)] &&
          is_background[static_cast<std::size_t>(p)])
        candidates.push_back(p);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    candidates.resize(std::min(candidates.size(),
                               static_cast<std::size_t>(spec.contig_breaks)));
    std::sort(candidates.begin(), candidates.end());

    out.data.strings.push_back(
        build_string(out.data.alphabet, genome, sets, candidates));
  }
  return out;
}

Dataset random_instance(std::uint64_t seed, const RandomSpec& spec) {
  std::mt19937_64 rng(seed);
  Dataset data;
  const int m = uniform(rng, spec.min_m, spec.max_m);
  const int sigma = uniform(rng, 1, spec.max_alphabet);
  for (int x = 0; x < m; ++x) {
    const int n = uniform(rng, 1, spec.max_n);
    std::vector<std::vector<std::string>> sets;
    std::vector<int> breaks;
    for (int p = 1; p <= n; ++p) {
      const int size = uniform(rng, 1, std::min(spec.max_set_size, sigma));
      std::vector<std::string> set;
      for (int k = 0; k < size; ++k)
        set.push_back("c" + std::to_string(uniform(rng, 0, sigma - 1)));
      sets.push_back(std::move(set));
      if (p < n && chance(rng, spec.break_probability)) breaks.push_back(p);
    }
    data.strings.push_back(build_string(data.alphabet,
                                        "S" + std::to_string(x + 1), sets,
                                        breaks));
  }
  return data;
}

}  // namespace awci
