#include "irreg/rng.hpp"

namespace irreg {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, SeedStream stream,
                          std::uint64_t index) noexcept {
  const auto s = static_cast<std::uint64_t>(stream);
  return mix64(mix64(master ^ (s * 0xd1b54a32d192ed03ULL)) + index);
}

}  // namespace irreg
