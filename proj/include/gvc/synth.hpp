#ifndef GVC_SYNTH_HPP_
#define GVC_SYNTH_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "gvc/frame.hpp"

namespace gvc {

// One axis step of the bounce dynamics. Position lives in [0, limit];
// the object advances by vel, then reflects off either border:
//   p < 0      ->  p = -p,            v = -v
//   p > limit  ->  p = 2*limit - p,   v = -v
// repeated until in range. Integer-only, so traces are reproducible
// bit-for-bit on any platform.
std::pair<int, int> bounce_step(int pos, int vel, int limit);

// Moving bright shapes on a black background: a desk-scale stand-in for
// stochastic moving-digit datasets. Each object gets a constant integer
// velocity with per-axis magnitude drawn from velocity_range (sign
// random), and bounces off the frame borders. Same seed, same bytes.
//
// velocity_range = (0,0) yields static scenes.
std::vector<VideoSequence> synth_dataset(int num_videos, int t, int h, int w,
                                         int num_objects,
                                         std::pair<int, int> velocity_range,
                                         std::uint64_t seed,
                                         int channels = 1);

}  // namespace gvc

#endif  // GVC_SYNTH_HPP_
