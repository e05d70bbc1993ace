#include "gvc/raw_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gvc/error.hpp"

namespace gvc {

VideoSequence load_raw_video(const std::string &path, int h, int w, int c,
                             int t) {
  if (h <= 0 || w <= 0 || (c != 1 && c != 3) || t <= 0) {
    throw ValidationError("declared raw dimensions must be positive");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open raw video: " + path);
  }
  const std::uintmax_t expected =
      static_cast<std::uintmax_t>(t) * h * w * c;
  std::error_code ec;
  const std::uintmax_t actual = std::filesystem::file_size(path, ec);
  if (ec) {
    throw IoError("cannot stat raw video: " + path);
  }
  if (actual != expected) {
    throw DimensionError("raw file " + path + " holds " +
                         std::to_string(actual) + " bytes, dimensions " +
                         std::to_string(t) + "x" + std::to_string(h) + "x" +
                         std::to_string(w) + "x" + std::to_string(c) +
                         " need " + std::to_string(expected));
  }
  VideoSequence video;
  video.frames.reserve(t);
  for (int i = 0; i < t; ++i) {
    Frame f(h, w, c);
    in.read(reinterpret_cast<char *>(f.samples.data()),
            static_cast<std::streamsize>(f.samples.size()));
    if (!in) {
      throw IoError("short read from raw video: " + path);
    }
    video.frames.push_back(std::move(f));
  }
  return video;
}

RawDims read_dims_sidecar(const std::string &raw_path) {
  const std::string sidecar = raw_path + ".dims";
  std::ifstream in(sidecar);
  if (!in) {
    throw IoError("cannot open dims sidecar: " + sidecar);
  }
  RawDims d;
  if (!(in >> d.t >> d.h >> d.w >> d.c)) {
    throw ParseError("dims sidecar must hold \"T H W C\": " + sidecar, 0);
  }
  return d;
}

VideoSequence load_raw_video(const std::string &path) {
  RawDims d = read_dims_sidecar(path);
  return load_raw_video(path, d.h, d.w, d.c, d.t);
}

void write_raw_video(const VideoSequence &video, const std::string &path) {
  video.validate();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open raw video for writing: " + path);
  }
  for (const Frame &f : video.frames) {
    out.write(reinterpret_cast<const char *>(f.samples.data()),
              static_cast<std::streamsize>(f.samples.size()));
  }
  if (!out) {
    throw IoError("write failed: " + path);
  }
  std::ofstream side(path + ".dims", std::ios::trunc);
  side << video.length() << " " << video.height() << " " << video.width()
       << " " << video.channels() << "\n";
  if (!side) {
    throw IoError("write failed: " + path + ".dims");
  }
}

}  // namespace gvc
