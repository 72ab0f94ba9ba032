// Counter-based random streams for reproducible parallel Monte Carlo.
//
// Every trial owns an independent stream derived from (master_seed, point_id,
// trial_index), so results are bit-identical under any partitioning of trials
// across workers. All transforms are hand-rolled on top of splitmix64 because
// std:: distributions are implementation-defined and would break cross-platform
// reproducibility.

#ifndef SGF_RNG_HPP
#define SGF_RNG_HPP

#include <cmath>
#include <cstdint>

namespace sgf {

// splitmix64 finalizer; bijective 64-bit mix.
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

class TrialStream {
 public:
  explicit TrialStream(std::uint64_t seed) : state_(seed) {}

  // Stream for one trial of one sweep point. The three keys are folded with
  // distinct offsets so (seed=1, point=0) and (seed=0, point=1) do not collide.
  static TrialStream at(std::uint64_t master_seed, std::uint64_t point_id,
                        std::uint64_t trial_index) {
    std::uint64_t s = mix64(master_seed + 0x9e3779b97f4a7c15ULL);
    s = mix64(s ^ (point_id + 0xd6e8feb86659fd93ULL));
    s = mix64(s ^ (trial_index + 0xa5a5a5a5a5a5a5a5ULL));
    return TrialStream(s);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Exponential with mean 1, strictly positive: the half-ulp offset keeps the
  // underlying uniform inside (0, 1) so -log1p(-u) never returns 0.
  double next_exponential() {
    const double u = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    return -std::log1p(-u);
  }

 private:
  std::uint64_t state_;
};

}  // namespace sgf

#endif  // SGF_RNG_HPP
