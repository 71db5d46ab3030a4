#include <array>
#include <cstring>

#include "accex/error.hpp"
#include "accex/ingest.hpp"

namespace accex {
namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'g', 'm', 'o', 'n'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderSize = 20;
constexpr std::size_t kDimenSize = 15;

enum Tag : std::uint8_t { kTimeHist = 0, kCgArc = 1, kBbCount = 2 };

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  bool at_end() const { return pos_ == bytes_.size(); }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::size_t position() const { return pos_; }

  std::uint64_t uint(std::size_t width) {
    need(width);
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < width; ++i) {
      value |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    }
    pos_ += width;
    return value;
  }

  void skip(std::size_t n) {
    need(n);
    pos_ += n;
  }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) {
      throw Error(ErrorCode::TruncatedRecord,
                  "gmon data truncated at byte " + std::to_string(bytes_.size()));
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

class ByteWriter {
 public:
  void uint(std::uint64_t value, std::size_t width) {
    for (std::size_t i = 0; i < width; ++i) {
      out_.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
    }
  }
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    out_.insert(out_.end(), p, p + n);
  }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

std::size_t checked_ptr_size(int ptr_size) {
  if (ptr_size != 4 && ptr_size != 8) {
    throw Error(ErrorCode::ParseError, "pointer size must be 4 or 8");
  }
  return static_cast<std::size_t>(ptr_size);
}

}  // namespace

RawProfile read_gmon(std::span<const std::uint8_t> bytes, const GmonOptions& options,
                     std::vector<std::string>* warnings) {
  const std::size_t ptr = checked_ptr_size(options.ptr_size);
  if (bytes.size() < kHeaderSize) {
    throw Error(ErrorCode::TruncatedRecord, "gmon header truncated");
  }
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw Error(ErrorCode::BadMagic, "not a gmon.out file (bad magic)");
  }
  ByteReader in(bytes);
  in.skip(kMagic.size());
  const auto version = static_cast<std::uint32_t>(in.uint(4));
  if (version != kVersion) {
    throw Error(ErrorCode::UnsupportedVersion,
                "unsupported gmon version " + std::to_string(version));
  }
  in.skip(12);

  RawProfile profile;
  std::vector<Histogram> histograms;
  std::vector<RawArc> arcs;
  std::size_t skipped_bb = 0;

  while (!in.at_end()) {
    const std::size_t record_start = in.position();
    const auto tag = static_cast<std::uint8_t>(in.uint(1));
    switch (tag) {
      case kTimeHist: {
        Histogram h;
        h.low = in.uint(ptr);
        h.high = in.uint(ptr);
        const auto size = static_cast<std::uint32_t>(in.uint(4));
        const auto rate = static_cast<std::uint32_t>(in.uint(4));
        in.skip(kDimenSize + 1);
        if (in.remaining() / 2 < size) in.skip(in.remaining() + 1);
        h.bins.resize(size);
        for (auto& bin : h.bins) bin = in.uint(2);
        if (rate == 0) {
          throw Error(ErrorCode::MismatchedGeometry, "histogram with zero sampling rate");
        }
        h.quantum = Rational(1, rate);
        h.validate();
        histograms.push_back(std::move(h));
        break;
      }
      case kCgArc: {
        RawArc arc;
        arc.from_pc = in.uint(ptr);
        arc.self_pc = in.uint(ptr);
        arc.count = in.uint(4);
        arcs.push_back(arc);
        break;
      }
      case kBbCount: {
        const auto n = in.uint(4);
        if (in.remaining() / (2 * ptr) < n) in.skip(in.remaining() + 1);
        in.skip(n * 2 * ptr);
        ++skipped_bb;
        break;
      }
      default:
        throw Error(ErrorCode::UnknownTag, "unknown gmon record tag " + std::to_string(tag) +
                                               " at byte " + std::to_string(record_start));
    }
  }

  if (skipped_bb > 0 && warnings) {
    warnings->push_back("skipped " + std::to_string(skipped_bb) + " basic-block record(s)");
  }
  if (!histograms.empty()) {
    profile.histograms.push_back(merge_histograms(histograms));
    profile.quantum = profile.histograms.front().quantum;
  }
  profile.arcs = merge_arcs(arcs);
  return profile;
}

std::vector<std::uint8_t> write_gmon(const RawProfile& profile, const GmonOptions& options) {
  const std::size_t ptr = checked_ptr_size(options.ptr_size);
  ByteWriter out;
  out.bytes(kMagic.data(), kMagic.size());
  out.uint(kVersion, 4);
  const std::array<std::uint8_t, 12> spare{};
  out.bytes(spare.data(), spare.size());

  for (const Histogram& h : profile.histograms) {
    h.validate();
    const Rational rate = h.prof_rate();
    if (!is_integral(rate)) {
      throw Error(ErrorCode::MismatchedGeometry,
                  "gmon requires an integral sampling rate (1/quantum)");
    }
    out.uint(kTimeHist, 1);
    out.uint(h.low, ptr);
    out.uint(h.high, ptr);
    out.uint(h.bins.size(), 4);
    out.uint(rate.convert_to<std::uint32_t>(), 4);
    char dimen[kDimenSize] = {};
    std::memcpy(dimen, "seconds", 7);
    out.bytes(dimen, kDimenSize);
    out.uint('s', 1);
    for (std::uint64_t bin : h.bins) {
      if (bin > 0xFFFF) {
        throw Error(ErrorCode::MismatchedGeometry, "bin count exceeds 16 bits");
      }
      out.uint(bin, 2);
    }
  }
  for (const RawArc& arc : profile.arcs) {
    out.uint(kCgArc, 1);
    out.uint(arc.from_pc, ptr);
    out.uint(arc.self_pc, ptr);
    out.uint(arc.count, 4);
  }
  return out.take();
}

}  // namespace accex
