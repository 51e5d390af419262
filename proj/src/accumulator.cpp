#include "qbounty/accumulator.hpp"

#include "qbounty/errors.hpp"

#include <algorithm>

namespace qbounty {

AccumulatorState::AccumulatorState(std::size_t target_bytes) : target_(target_bytes) {
    buffer_.reserve(target_);
}

void AccumulatorState::contribute(const Word256& word, const ContributionContext& ctx) {
    if (complete()) raise(Errc::AlreadyComplete, "entropy buffer is full");

    HashWriter w;
    w.write(ByteView(word.data(), word.size()));
    w.write(ByteView(chain_.data(), chain_.size()));
    w.write(ByteView(ctx.prev_block_digest.data(), ctx.prev_block_digest.size()));
    w.write(ctx.contributor.view());
    Hash256 chunk = w.finalize();

    std::size_t take = std::min(remaining_bytes(), chunk.size());
    buffer_.insert(buffer_.end(), chunk.begin(), chunk.begin() + take);

    HashWriter next;
    next.write(ByteView(chain_.data(), chain_.size()));
    next.write(ByteView(chunk.data(), chunk.size()));
    chain_ = next.finalize();
}

std::vector<Lock> extract_locks(const AccumulatorState& acc, const GenerationParams& params) {
    params.validate();
    if (!acc.complete()) raise(Errc::Incomplete, "entropy buffer is not full yet");
    if (acc.target_bytes() != params.target_bytes())
        raise(Errc::InvalidInput, "buffer was sized for different params");

    const Bytes& buf = acc.buffer();
    const std::size_t width = params.lock_bytes();
    std::vector<Lock> locks;
    locks.reserve(params.lock_count);
    for (std::uint32_t i = 0; i < params.lock_count; ++i) {
        Bytes slice(buf.begin() + i * width, buf.begin() + (i + 1) * width);
        slice[0] |= 0x80; // full declared width for every modulus
        Lock lock;
        lock.index = i;
        lock.bits = params.lock_bits;
        lock.value = BigUint::from_bytes_be(ByteView(slice));
        locks.push_back(std::move(lock));
    }
    return locks;
}

} // namespace qbounty
