#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "depsent/harness.hpp"

namespace depsent {

namespace {

// Distributes `target` items over classes in proportion to `sizes`: floors
// first, then one more to the largest remainders (ties to the earlier class).
std::vector<std::size_t> apportion(const std::vector<std::size_t>& sizes, std::size_t target) {
  const auto total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  std::vector<std::size_t> out(sizes.size(), 0);
  if (total == 0) return out;
  std::vector<std::pair<std::size_t, std::size_t>> remainders;  // (remainder numerator, class)
  std::size_t given = 0;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    const auto num = sizes[c] * target;
    out[c] = num / total;
    given += out[c];
    remainders.emplace_back(num % total, c);
  }
  std::stable_sort(remainders.begin(), remainders.end(), [](auto a, auto b) { return a.first > b.first; });
  for (std::size_t i = 0; given < target; ++i, ++given) ++out[remainders[i].second];
  return out;
}

}  // namespace

DatasetSplit split_dataset(std::span<const Polarity> labels, std::uint64_t seed) {
  const auto n = labels.size();
  if (n < 10) throw TooSmallError("need at least 10 items to split, got " + std::to_string(n));

  // Round half up: floor(x + 0.5) on exact integer arithmetic.
  const std::size_t n_train = (n * 6 + 5) / 10;
  const std::size_t n_val = (n + 5) / 10;

  std::vector<std::vector<std::size_t>> classes(2);
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] == Polarity::Unclassified) throw Error("cannot stratify an Unclassified label");
    classes[labels[i] == Polarity::Positive ? 0 : 1].push_back(i);
  }
  std::vector<std::size_t> sizes{classes[0].size(), classes[1].size()};
  const auto train_share = apportion(sizes, n_train);
  std::vector<std::size_t> rest{sizes[0] - train_share[0], sizes[1] - train_share[1]};
  const auto val_share = apportion(rest, n_val);

  std::mt19937_64 rng(seed);
  DatasetSplit out;
  for (std::size_t c = 0; c < 2; ++c) {
    auto& idx = classes[c];
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto t = train_share[c];
    const auto v = val_share[c];
    out.train.insert(out.train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(t));
    out.validation.insert(out.validation.end(), idx.begin() + static_cast<std::ptrdiff_t>(t),
                          idx.begin() + static_cast<std::ptrdiff_t>(t + v));
    out.test.insert(out.test.end(), idx.begin() + static_cast<std::ptrdiff_t>(t + v), idx.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.validation.begin(), out.validation.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

}  // namespace depsent
