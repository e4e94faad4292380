#ifndef DPF_RNG_HPP_
#define DPF_RNG_HPP_

#include <array>
#include <cstdint>
#include <vector>

namespace dpf {

/// Splittable random stream. The output sequence is a pure function of
/// (seed, path); child streams extend the path by one index.
///
/// The engine is xoshiro256** seeded through splitmix64 over the path, so
/// distinct paths give unrelated states. Variate generation below never goes
/// through <random> distributions, whose output is implementation-defined.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::vector<std::uint64_t> path = {});

  RngStream child(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }
  const std::vector<std::uint64_t>& path() const { return path_; }

  std::uint64_t operator()();
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  double normal();
  double exponential();

 private:
  std::uint64_t seed_;
  std::vector<std::uint64_t> path_;
  std::array<std::uint64_t, 4> state_{};
};

std::uint64_t splitmix64(std::uint64_t& x);

/// Derives an independent 64-bit seed from a parent seed and an index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace dpf

#endif  // DPF_RNG_HPP_
