// JSON form of certificates. Integers and rationals are decimal strings.

#ifndef ORBITSUM_CERTIFICATE_JSON_HPP
#define ORBITSUM_CERTIFICATE_JSON_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "orbitsum/certifier.hpp"

namespace orbitsum {

inline constexpr const char* kCertificateSchema = "orbitsum-certificate/1";

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// indent < 0 gives a single line.
std::string certificate_to_json(const Certificate& cert, int indent = -1);

// Throws FormatError naming the offending field.
Certificate certificate_from_json(std::string_view text);

}  // namespace orbitsum

#endif  // ORBITSUM_CERTIFICATE_JSON_HPP
