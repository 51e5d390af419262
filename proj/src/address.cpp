#include "qbounty/address.hpp"

#include "qbounty/errors.hpp"

#include <cstring>

namespace qbounty {

Address Address::from_hex(std::string_view hex) {
    Bytes raw = hex_decode(hex);
    if (raw.size() > 20) raise(Errc::InvalidInput, "address longer than 20 bytes");
    Address out;
    if (!raw.empty())
        std::memcpy(out.bytes.data() + (20 - raw.size()), raw.data(), raw.size());
    return out;
}

std::string Address::to_hex() const {
    return hex_encode(view());
}

} // namespace qbounty
