#pragma once

#include <vector>

#include "cinorm/permutation.hpp"
#include "oracles.hpp"

inline cinorm::Permutation to_perm(const oracle::Images& p) {
  std::vector<cinorm::Point> images;
  for (int x : p) images.push_back(static_cast<cinorm::Point>(x + 1));
  return cinorm::Permutation::from_images(images);
}

inline oracle::Images to_images(const cinorm::Permutation& s, int n) {
  oracle::Images p(n);
  for (int i = 0; i < n; ++i) p[i] = static_cast<int>(s(static_cast<cinorm::Point>(i + 1))) - 1;
  return p;
}
