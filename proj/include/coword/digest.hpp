#ifndef COWORD_DIGEST_HPP
#define COWORD_DIGEST_HPP

#include <string>
#include <string_view>

namespace coword {

// SHA-256 as lowercase hex.
std::string sha256_hex(std::string_view data);

// Digest of a file's bytes. Throws Error(kIoError) if unreadable.
std::string sha256_file_hex(const std::string& path);

}  // namespace coword

#endif  // COWORD_DIGEST_HPP
