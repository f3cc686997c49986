#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace prefixsel {

enum class AddressFamily : std::uint8_t { v4, v6 };

/// A BGP prefix as an opaque key. Construction canonicalizes the text
/// (lower-case, compressed IPv6) and rejects prefixes with host bits set.
class PrefixId {
public:
    /// The default route, 0.0.0.0/0.
    PrefixId() : text_("0.0.0.0/0") {}

    /// Throws DataError on malformed CIDR text.
    static PrefixId parse(std::string_view cidr);
    static std::optional<PrefixId> try_parse(std::string_view cidr) noexcept;

    /// The k-th synthetic IPv4 /24 (k >= 1), starting at 10.0.0.0/24.
    static PrefixId synthetic(std::uint32_t k);

    const std::string& text() const noexcept { return text_; }
    AddressFamily family() const noexcept { return family_; }
    int length() const noexcept { return length_; }

    friend bool operator==(const PrefixId& a, const PrefixId& b) noexcept { return a.text_ == b.text_; }
    friend std::strong_ordering operator<=>(const PrefixId& a, const PrefixId& b) noexcept {
        return a.text_ <=> b.text_;
    }

private:
    PrefixId(std::string text, AddressFamily family, int length)
        : text_(std::move(text)), family_(family), length_(length) {}

    std::string text_;
    AddressFamily family_ = AddressFamily::v4;
    int length_ = 0;
};

}  // namespace prefixsel

template <>
struct std::hash<prefixsel::PrefixId> {
    std::size_t operator()(const prefixsel::PrefixId& p) const noexcept {
        return std::hash<std::string>{}(p.text());
    }
};
