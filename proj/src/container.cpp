#include "gvc/container.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "gvc/error.hpp"

namespace gvc {

namespace {
constexpr std::uint8_t kMagic[4] = {'G', 'V', 'C', '1'};
}

void EncodedContainer::validate() const {
  if (version != kContainerVersion) {
    throw ValidationError("unsupported container version " +
                          std::to_string(version));
  }
  if (t == 0 || h == 0 || w == 0 || (c != 1 && c != 3)) {
    throw ValidationError("container dimensions invalid");
  }
  std::uint64_t covered = 0;
  for (const FrameRecord &rec : records) {
    if (rec.kind != kRecordIntra && rec.kind != kRecordGenerated) {
      throw ValidationError("unknown record kind");
    }
    if (rec.count == 0) {
      throw ValidationError("zero-length record run");
    }
    if (rec.kind == kRecordGenerated && !rec.payloads.empty()) {
      throw ValidationError("GENERATED record must carry no payload");
    }
    if (rec.kind == kRecordIntra && rec.payloads.size() != rec.count) {
      throw ValidationError("INTRA record needs one payload per frame");
    }
    covered += rec.count;
  }
  if (covered != t) {
    throw ValidationError("records cover " + std::to_string(covered) +
                          " frames, container declares " + std::to_string(t));
  }
}

std::uint64_t rho_to_fixed(double rho) {
  if (std::isinf(rho) && rho > 0) {
    return kThresholdInfinity;
  }
  if (!(rho >= 0)) {
    throw ValidationError("threshold must be >= 0");
  }
  double scaled = std::round(rho * 1e6);
  if (scaled >= static_cast<double>(kThresholdInfinity)) {
    return kThresholdInfinity;
  }
  return static_cast<std::uint64_t>(scaled);
}

double rho_from_fixed(std::uint64_t fp) {
  if (fp == kThresholdInfinity) {
    return std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(fp) * 1e-6;
}

Bytes write_container(const EncodedContainer &container) {
  container.validate();
  ByteWriter w;
  w.raw(kMagic, 4);
  w.u32(container.version);
  w.u32(container.t);
  w.u32(container.h);
  w.u32(container.w);
  w.u32(container.c);
  w.u32(container.cond_window);
  w.u32(container.gen_window);
  w.u64(container.threshold_fp);
  w.u64(container.sampler_seed);
  w.u32(static_cast<std::uint32_t>(container.records.size()));
  for (const FrameRecord &rec : container.records) {
    w.u8(rec.kind);
    w.u32(rec.count);
    if (rec.kind == kRecordIntra) {
      for (const Bytes &p : rec.payloads) {
        w.u32(static_cast<std::uint32_t>(p.size()));
        w.raw(p);
      }
    }
  }
  return w.take();
}

EncodedContainer read_container(const Bytes &data) {
  ByteReader r(data);
  for (int i = 0; i < 4; ++i) {
    std::size_t at = r.offset();
    if (r.u8() != kMagic[i]) {
      throw ParseError("bad magic, not a GVC1 container", at);
    }
  }
  EncodedContainer c;
  {
    std::size_t at = r.offset();
    c.version = r.u32();
    if (c.version != kContainerVersion) {
      throw ParseError("unsupported container version " +
                           std::to_string(c.version),
                       at);
    }
  }
  c.t = r.u32();
  c.h = r.u32();
  c.w = r.u32();
  c.c = r.u32();
  c.cond_window = r.u32();
  c.gen_window = r.u32();
  c.threshold_fp = r.u64();
  c.sampler_seed = r.u64();
  const std::uint32_t record_count = r.u32();
  c.records.reserve(record_count);
  for (std::uint32_t i = 0; i < record_count; ++i) {
    FrameRecord rec;
    std::size_t at = r.offset();
    rec.kind = r.u8();
    if (rec.kind != kRecordIntra && rec.kind != kRecordGenerated) {
      throw ParseError("unknown record kind " + std::to_string(rec.kind), at);
    }
    rec.count = r.u32();
    if (rec.count == 0) {
      throw ParseError("zero-length record run", at);
    }
    if (rec.kind == kRecordIntra) {
      rec.payloads.reserve(rec.count);
      for (std::uint32_t f = 0; f < rec.count; ++f) {
        std::uint32_t len = r.u32();
        rec.payloads.push_back(r.raw(len));
      }
    }
    c.records.push_back(std::move(rec));
  }
  if (!r.at_end()) {
    r.fail("trailing bytes after container");
  }
  try {
    c.validate();
  } catch (const ValidationError &e) {
    throw ParseError(std::string("container invalid: ") + e.what(),
                     r.offset());
  }
  return c;
}

void write_container_file(const EncodedContainer &container,
                          const std::string &path) {
  Bytes data = write_container(container);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open container for writing: " + path);
  }
  out.write(reinterpret_cast<const char *>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

EncodedContainer read_container_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open container: " + path);
  }
  Bytes data((std::istreambuf_iterator<char>(in)),
             std::istreambuf_iterator<char>());
  return read_container(data);
}

std::size_t serialized_size(const EncodedContainer &container) {
  std::size_t size = kGlobalHeaderSize;
  for (const FrameRecord &rec : container.records) {
    size += 5;  // kind + count
    if (rec.kind == kRecordIntra) {
      for (const Bytes &p : rec.payloads) {
        size += 4 + p.size();
      }
    }
  }
  return size;
}

double bpp(const EncodedContainer &container) {
  if (container.t == 0 || container.h == 0 || container.w == 0) {
    throw ValidationError("bpp needs positive T, H, W");
  }
  const double payload_bytes =
      static_cast<double>(serialized_size(container) - kGlobalHeaderSize);
  const double pixels = static_cast<double>(container.t) * container.h *
                        container.w;
  return 8.0 * payload_bytes / pixels;
}

}  // namespace gvc
