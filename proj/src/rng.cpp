// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#include "raterlens/rng.hpp"

#include <numeric>

namespace raterlens::rng {

std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                    std::size_t take,
                                                    SplitMix64& gen) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (take > n) take = n;
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(gen.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(take);
  return idx;
}

}  // namespace raterlens::rng
