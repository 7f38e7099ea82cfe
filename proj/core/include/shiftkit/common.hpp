#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace shiftkit {

// Symbols are indices into an Alphabet.
using Symbol = uint32_t;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text (file formats, CLI payloads).
struct ParseError : Error {
    using Error::Error;
};

// A configured resource cap was hit; results up to the cap are not returned.
struct CapExceeded : Error {
    using Error::Error;
};

// An internal cross-check that should hold by construction failed.
struct InternalCheckFailed : Error {
    using Error::Error;
};

}  // namespace shiftkit
