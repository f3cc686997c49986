#include "prefixsel/prefix.hpp"

#include <arpa/inet.h>

#include <array>
#include <charconv>
#include <cstring>

#include "prefixsel/error.hpp"

namespace prefixsel {

namespace {

bool host_bits_clear(const unsigned char* bytes, std::size_t size, int length) {
    for (std::size_t i = 0; i < size; ++i) {
        const int first_bit = static_cast<int>(i) * 8;
        if (first_bit + 8 <= length) continue;
        const int keep = std::max(0, length - first_bit);
        const unsigned mask = keep == 0 ? 0xFFu : (0xFFu >> keep);
        if ((bytes[i] & mask) != 0) return false;
    }
    return true;
}

}  // namespace

std::optional<PrefixId> PrefixId::try_parse(std::string_view cidr) noexcept {
    try {
        const auto slash = cidr.find('/');
        if (slash == std::string_view::npos || slash == 0 || slash + 1 >= cidr.size()) return std::nullopt;
        const std::string address(cidr.substr(0, slash));
        const auto len_text = cidr.substr(slash + 1);
        int length = -1;
        const auto [end, ec] = std::from_chars(len_text.data(), len_text.data() + len_text.size(), length);
        if (ec != std::errc{} || end != len_text.data() + len_text.size()) return std::nullopt;

        std::array<unsigned char, 16> bytes{};
        std::array<char, INET6_ADDRSTRLEN> buf{};
        if (address.find(':') == std::string::npos) {
            if (length < 0 || length > 32) return std::nullopt;
            if (inet_pton(AF_INET, address.c_str(), bytes.data()) != 1) return std::nullopt;
            if (!host_bits_clear(bytes.data(), 4, length)) return std::nullopt;
            inet_ntop(AF_INET, bytes.data(), buf.data(), buf.size());
            return PrefixId(std::string(buf.data()) + "/" + std::to_string(length), AddressFamily::v4, length);
        }
        if (length < 0 || length > 128) return std::nullopt;
        if (inet_pton(AF_INET6, address.c_str(), bytes.data()) != 1) return std::nullopt;
        if (!host_bits_clear(bytes.data(), 16, length)) return std::nullopt;
        inet_ntop(AF_INET6, bytes.data(), buf.data(), buf.size());
        return PrefixId(std::string(buf.data()) + "/" + std::to_string(length), AddressFamily::v6, length);
    } catch (...) {
        return std::nullopt;
    }
}

PrefixId PrefixId::parse(std::string_view cidr) {
    auto p = try_parse(cidr);
    if (!p) throw DataError("malformed CIDR prefix '" + std::string(cidr) + "'");
    return *std::move(p);
}

PrefixId PrefixId::synthetic(std::uint32_t k) {
    if (k == 0 || k > (1u << 24) - (10u << 16)) throw std::out_of_range("synthetic prefix rank out of range");
    const std::uint32_t addr = 0x0A000000u + ((k - 1) << 8);
    std::string text = std::to_string(addr >> 24) + "." + std::to_string((addr >> 16) & 0xFF) + "." +
                       std::to_string((addr >> 8) & 0xFF) + ".0/24";
    return PrefixId(std::move(text), AddressFamily::v4, 24);
}

}  // namespace prefixsel
