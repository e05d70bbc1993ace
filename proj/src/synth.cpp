#include "gvc/synth.hpp"

#include <algorithm>
#include <random>

#include "gvc/error.hpp"
#include "gvc/rng.hpp"

namespace gvc {

std::pair<int, int> bounce_step(int pos, int vel, int limit) {
  if (limit <= 0) {
    return {0, vel};
  }
  pos += vel;
  while (pos < 0 || pos > limit) {
    if (pos < 0) {
      pos = -pos;
      vel = -vel;
    } else {
      pos = 2 * limit - pos;
      vel = -vel;
    }
  }
  return {pos, vel};
}

namespace {

enum class ShapeKind { kSquare, kCross };

struct MovingObject {
  ShapeKind kind;
  int size;
  int x, y;    // top-left anchor
  int vx, vy;  // constant per video
  std::uint8_t intensity[3];
};

void draw_object(Frame &frame, const MovingObject &obj) {
  const int half = obj.size / 2;
  for (int dy = 0; dy < obj.size; ++dy) {
    for (int dx = 0; dx < obj.size; ++dx) {
      if (obj.kind == ShapeKind::kCross && dy != half && dx != half) {
        continue;
      }
      const int y = obj.y + dy;
      const int x = obj.x + dx;
      for (int c = 0; c < frame.channels; ++c) {
        std::uint8_t &px = frame.at(c, y, x);
        px = std::max(px, obj.intensity[c]);  // brightest wins on overlap
      }
    }
  }
}

}  // namespace

std::vector<VideoSequence> synth_dataset(int num_videos, int t, int h, int w,
                                         int num_objects,
                                         std::pair<int, int> velocity_range,
                                         std::uint64_t seed, int channels) {
  if (h < 8 || w < 8) {
    throw ValidationError("synth_dataset needs H, W >= 8");
  }
  if (t < 2) {
    throw ValidationError("synth_dataset needs T >= 2");
  }
  if (num_videos < 1 || num_objects < 1) {
    throw ValidationError("synth_dataset needs at least one video and object");
  }
  const auto [vmin, vmax] = velocity_range;
  if (vmin < 0 || vmax < vmin) {
    throw ValidationError("velocity_range must satisfy 0 <= min <= max");
  }

  const int max_size = std::min({6, h / 2, w / 2});

  std::vector<VideoSequence> dataset;
  dataset.reserve(num_videos);
  for (int vid = 0; vid < num_videos; ++vid) {
    // Per-video stream, so video i does not depend on num_videos.
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(vid)));

    std::vector<MovingObject> objects(num_objects);
    for (MovingObject &obj : objects) {
      obj.kind = rand_below(rng, 2) == 0 ? ShapeKind::kSquare
                                         : ShapeKind::kCross;
      obj.size = rand_range(rng, 3, max_size);
      obj.x = rand_below(rng, w - obj.size + 1);
      obj.y = rand_below(rng, h - obj.size + 1);
      const int mx = rand_range(rng, vmin, vmax);
      const int my = rand_range(rng, vmin, vmax);
      obj.vx = rand_below(rng, 2) == 0 ? mx : -mx;
      obj.vy = rand_below(rng, 2) == 0 ? my : -my;
      for (int c = 0; c < 3; ++c) {
        obj.intensity[c] =
            static_cast<std::uint8_t>(rand_range(rng, 160, 255));
      }
    }

    VideoSequence video;
    video.frames.reserve(t);
    for (int fi = 0; fi < t; ++fi) {
      Frame frame(h, w, channels);
      for (MovingObject &obj : objects) {
        if (fi > 0) {
          std::tie(obj.x, obj.vx) = bounce_step(obj.x, obj.vx, w - obj.size);
          std::tie(obj.y, obj.vy) = bounce_step(obj.y, obj.vy, h - obj.size);
        }
        draw_object(frame, obj);
      }
      video.frames.push_back(std::move(frame));
    }
    dataset.push_back(std::move(video));
  }
  return dataset;
}

}  // namespace gvc
