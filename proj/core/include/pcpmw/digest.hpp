#pragma once

// SHA-256 content digests for serialized artifacts, so a reloaded table set
// can prove it is the one that was written.

#include <cstdint>
#include <string>
#include <string_view>

namespace pcpmw {

std::string sha256_hex(std::string_view data);

} // namespace pcpmw
