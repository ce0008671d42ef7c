#pragma once

// Germ files: a JSON document
//   {"objects": [names], "elements": [{"name", "source", "target", "identity"?}],
//    "products": [[a, b, c], ...]}
// written one entry per line so that load followed by save is byte-identical.

#include <stdexcept>
#include <string>
#include <string_view>

#include "garside/germ.hpp"

namespace garside {

class GermFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws GermFileError on malformed JSON, unknown keys or wrong field types.
GermSpec parse_germ_file(std::string_view text);
// Identity products are implied by the identity flag and never written.
std::string serialize_germ(GermSpec const& spec);

GermSpec read_germ_file(std::string const& path);

}  // namespace garside
