#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace colorpin {

using Digest = std::array<std::uint8_t, 32>;

/// Salted iterated SHA-256 over one (ID, UI) credential pair.
///
/// Byte encoding of the hashed message:
///   salt (raw bytes) 0x00
///   id[0] 0x1F id[1] 0x1F ... id[k-1]   (symbol strings, UTF-8)
///   0x1E
///   ui[0] 0x1F ... ui[m-1]
/// d1 = SHA256(message), d(j+1) = SHA256(d(j)); the result is d(iterations).
Digest iterated_hash(std::string_view salt, std::span<const std::string> id_symbols,
                     std::span<const std::string> ui_symbols, int iterations);

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);
Digest digest_from_hex(std::string_view hex);

/// `bytes` random bytes from the OS CSPRNG, hex encoded.
std::string random_salt(std::size_t bytes = 16);

}  // namespace colorpin
