#include "gwlc/sampler.hpp"

#include <cstddef>

#include "gwlc/errors.hpp"

namespace gwlc {

DegreeSampler::DegreeSampler(const OffspringDistribution& dist) {
  b_ = dist.common_denominator;
  BigInt run(0);
  for (const BigInt& n : dist.numerators) {
    run += n;
    cum_.push_back(run);
  }

  small_ = b_ <= BigInt(UINT64_MAX);
  if (small_) {
    b64_ = static_cast<std::uint64_t>(b_);
    mask_ = ~std::uint64_t{0};
    std::uint64_t top = b64_ - 1;
    if (top == 0) {
      mask_ = 0;
    } else {
      mask_ = top;
      mask_ |= mask_ >> 1;
      mask_ |= mask_ >> 2;
      mask_ |= mask_ >> 4;
      mask_ |= mask_ >> 8;
      mask_ |= mask_ >> 16;
      mask_ |= mask_ >> 32;
    }
    for (const BigInt& c : cum_) cum64_.push_back(static_cast<std::uint64_t>(c));
  } else {
    std::size_t bits = mpz_sizeinbase(b_.backend().data(), 2);
    words_ = (bits + 31) / 32;
    std::size_t top_bits = bits - 32 * (words_ - 1);
    top_mask_ = top_bits >= 32 ? 0xffffffffu
                               : ((std::uint32_t{1} << top_bits) - 1);
  }
}

std::uint32_t DegreeSampler::draw(PhiloxStream& rng) const {
  if (small_) {
    std::uint64_t r;
    do {
      r = rng.next_u64() & mask_;
    } while (r >= b64_);
    std::uint32_t j = 0;
    while (r >= cum64_[j]) ++j;
    return j;
  }

  // Big-denominator path: assemble most-significant-word-first and reject.
  BigInt r;
  for (;;) {
    r = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint32_t word = rng.next_u32();
      if (w == 0) word &= top_mask_;
      r <<= 32;
      r += word;
    }
    if (r < b_) break;
  }
  std::uint32_t j = 0;
  while (r >= cum_[j]) ++j;
  return j;
}

std::optional<GWTree> sample_tree(const DegreeSampler& sampler, PhiloxStream& rng,
                                  std::size_t node_cap) {
  if (node_cap < 1) raise(errc::invalid_argument, "node_cap must be >= 1");
  GWTree tree;
  std::size_t pending = 1;
  while (pending > 0) {
    if (tree.degrees.size() == node_cap) return std::nullopt;
    std::uint32_t d = sampler.draw(rng);
    tree.degrees.push_back(d);
    pending += d;
    pending -= 1;
  }
  return tree;
}

std::optional<GWTree> sample_tree(const OffspringDistribution& dist, PhiloxStream& rng,
                                  std::size_t node_cap) {
  DegreeSampler sampler(dist);
  return sample_tree(sampler, rng, node_cap);
}

}  // namespace gwlc
