#include "ahc/form.hpp"

#include <array>
#include <memory>
#include <mutex>

namespace ahc {

BasisTable::BasisTable(int two_n) : two_n_(two_n) {
  by_degree_.resize(two_n + 1);
  pos_.resize(static_cast<size_t>(1) << two_n, -1);
  for (int mask = 0; mask < (1 << two_n); ++mask) {
    const int k = mask_degree(mask);
    pos_[mask] = static_cast<int>(by_degree_[k].size());
    by_degree_[k].push_back(mask);
  }
}

const BasisTable &BasisTable::get(int two_n) {
  if (two_n < 1 || two_n > 8)
    throw DimensionError("ambient dimension out of supported range");
  static std::array<std::unique_ptr<BasisTable>, 9> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  if (!cache[two_n])
    cache[two_n].reset(new BasisTable(two_n));
  return *cache[two_n];
}

} // namespace ahc
