#ifndef GVC_CONTAINER_HPP_
#define GVC_CONTAINER_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "gvc/bytes.hpp"

namespace gvc {

// Bitstream layout (normative, little-endian throughout):
//
//   global header, 52 bytes fixed:
//     0   magic "GVC1"            4 bytes
//     4   version                 u32 (currently 1)
//     8   T                       u32
//     12  H                       u32
//     16  W                       u32
//     20  C                       u32
//     24  cond_window  (N_cond)   u32
//     28  gen_window   (j)        u32
//     32  threshold rho           u64 fixed point, micro-units;
//                                 0xFFFF...FF encodes +infinity.
//                                 Metadata only; decoders ignore it.
//     40  sampler_seed            u64
//     48  record_count            u32
//   records, record_count times:
//     kind                        u8  (0 = INTRA, 1 = GENERATED)
//     count                       u32 (frames covered, >= 1)
//     INTRA only, count times:
//       payload_len               u32
//       payload                   payload_len bytes
//
// GENERATED records carry no payload; the decoder regenerates those
// frames from sampler_seed and the preceding reconstruction. Every
// frame of the video is covered by exactly one record, in order.

inline constexpr std::uint8_t kRecordIntra = 0;
inline constexpr std::uint8_t kRecordGenerated = 1;
inline constexpr std::size_t kGlobalHeaderSize = 52;
inline constexpr std::uint32_t kContainerVersion = 1;
inline constexpr std::uint64_t kThresholdInfinity = ~0ULL;

struct FrameRecord {
  std::uint8_t kind = kRecordIntra;
  std::uint32_t count = 0;
  std::vector<Bytes> payloads;  // one per frame; empty for GENERATED

  bool operator==(const FrameRecord &other) const = default;
};

struct EncodedContainer {
  std::uint32_t version = kContainerVersion;
  std::uint32_t t = 0;
  std::uint32_t h = 0;
  std::uint32_t w = 0;
  std::uint32_t c = 0;
  std::uint32_t cond_window = 0;
  std::uint32_t gen_window = 0;
  std::uint64_t threshold_fp = 0;
  std::uint64_t sampler_seed = 0;
  std::vector<FrameRecord> records;

  bool operator==(const EncodedContainer &other) const = default;

  // Structural invariants: record counts >= 1 and sum to T, GENERATED
  // records payload-free, INTRA records carry one payload per frame.
  void validate() const;
};

// rho <-> the u64 micro-unit encoding used in the header.
std::uint64_t rho_to_fixed(double rho);
double rho_from_fixed(std::uint64_t fp);

// Canonical serialization: write(read(b)) == b and read(write(c)) == c.
Bytes write_container(const EncodedContainer &container);
EncodedContainer read_container(const Bytes &data);

void write_container_file(const EncodedContainer &container,
                          const std::string &path);
EncodedContainer read_container_file(const std::string &path);

std::size_t serialized_size(const EncodedContainer &container);

// Bits per pixel: 8 * (serialized bytes minus the 52-byte global
// header) / (T*H*W). Channels are not multiplied in, following video
// coding convention. Record headers count toward the rate; the fixed
// global header does not.
double bpp(const EncodedContainer &container);

}  // namespace gvc

#endif  // GVC_CONTAINER_HPP_
