#ifndef GVC_RAW_IO_HPP_
#define GVC_RAW_IO_HPP_

#include <string>

#include "gvc/frame.hpp"

namespace gvc {

// Raw video files are headerless 8-bit sample dumps: frame-major, then
// channel-planar, then row-major within each plane. Dimensions travel
// out of band or in a sidecar "<path>.dims" text file holding "T H W C".

VideoSequence load_raw_video(const std::string &path, int h, int w, int c,
                             int t);

// Reads dimensions from "<path>.dims".
VideoSequence load_raw_video(const std::string &path);

// Writes the samples and the sidecar.
void write_raw_video(const VideoSequence &video, const std::string &path);

struct RawDims {
  int t = 0, h = 0, w = 0, c = 0;
};

RawDims read_dims_sidecar(const std::string &raw_path);

}  // namespace gvc

#endif  // GVC_RAW_IO_HPP_
