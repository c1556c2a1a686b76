#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace polarsrg {

// Dense symmetric bit matrix with word-parallel row intersection counts.
class BitMatrix {
  public:
    BitMatrix() = default;
    explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

    std::size_t size() const { return n_; }
    std::size_t words() const { return words_; }

    void set_pair(std::size_t i, std::size_t j) {
        bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
        bits_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
    }

    void clear_pair(std::size_t i, std::size_t j) {
        bits_[i * words_ + j / 64] &= ~(std::uint64_t{1} << (j % 64));
        bits_[j * words_ + i / 64] &= ~(std::uint64_t{1} << (i % 64));
    }

    bool get(std::size_t i, std::size_t j) const {
        return (bits_[i * words_ + j / 64] >> (j % 64)) & 1;
    }

    const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }

    std::size_t row_popcount(std::size_t i) const {
        const std::uint64_t* r = row(i);
        std::size_t c = 0;
        for (std::size_t w = 0; w < words_; ++w) c += std::popcount(r[w]);
        return c;
    }

    std::size_t and_popcount(std::size_t i, std::size_t j) const {
        const std::uint64_t* a = row(i);
        const std::uint64_t* b = row(j);
        std::size_t c = 0;
        for (std::size_t w = 0; w < words_; ++w) c += std::popcount(a[w] & b[w]);
        return c;
    }

    std::size_t and_popcount_mask(std::size_t i, const std::uint64_t* mask) const {
        const std::uint64_t* a = row(i);
        std::size_t c = 0;
        for (std::size_t w = 0; w < words_; ++w) c += std::popcount(a[w] & mask[w]);
        return c;
    }

  private:
    std::size_t n_ = 0, words_ = 0;
    std::vector<std::uint64_t> bits_;
};

}  // namespace polarsrg
