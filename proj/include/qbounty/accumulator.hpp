#pragma once

#include "qbounty/address.hpp"
#include "qbounty/biguint.hpp"
#include "qbounty/hash.hpp"
#include "qbounty/params.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qbounty {

using Word256 = std::array<std::uint8_t, 32>;

// Chain context mixed into every contribution so a word's effect depends on
// when and by whom it was submitted.
struct ContributionContext {
    Hash256 prev_block_digest{};
    Address contributor{};
};

// Append-only entropy buffer. Each contribution appends
//   keccak256(word || chain_digest || prev_block_digest || contributor)
// truncated to whatever space remains; chain_digest evolves with the buffer.
class AccumulatorState {
public:
    explicit AccumulatorState(std::size_t target_bytes);

    std::size_t target_bytes() const { return target_; }
    const Bytes& buffer() const { return buffer_; }
    const Hash256& chain_digest() const { return chain_; }
    bool complete() const { return buffer_.size() >= target_; }
    std::size_t remaining_bytes() const { return target_ - buffer_.size(); }

    // Errc::AlreadyComplete once the buffer is full.
    void contribute(const Word256& word, const ContributionContext& ctx);

private:
    std::size_t target_;
    Bytes buffer_;
    Hash256 chain_{};
};

struct Lock {
    std::uint32_t index = 0;
    std::uint32_t bits = 0;
    BigUint value;
    bool solved = false;
    std::optional<Address> solver;
};

// Cuts the completed buffer into lock_count fixed-width moduli, forcing the
// top bit of each so every lock has exactly params.lock_bits bits.
// Errc::Incomplete before the buffer is full; Errc::InvalidInput when the
// buffer was sized for different params.
std::vector<Lock> extract_locks(const AccumulatorState& acc, const GenerationParams& params);

} // namespace qbounty
