#pragma once

#include <stdexcept>
#include <string>

namespace syfh {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter validation
struct InvalidDegree : Error { using Error::Error; };
struct InvalidModulus : Error { using Error::Error; };

// Ring arithmetic discipline
struct DomainMismatch : Error { using Error::Error; };
struct ModulusMismatch : Error { using Error::Error; };

// Ciphertext shape and level discipline
struct LevelMismatch : Error { using Error::Error; };
struct WrongPartCount : Error { using Error::Error; };
struct UnrelinearizedCiphertext : Error { using Error::Error; };
struct BottomOfChain : Error { using Error::Error; };

// Batching and synthesis
struct SlotOverflow : Error { using Error::Error; };
struct DimensionOutOfRange : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct FingerprintMismatch : Error { using Error::Error; };
struct KeyMismatch : Error { using Error::Error; };

// Persistence and CLI input
struct FormatError : Error { using Error::Error; };
struct UnsupportedVersion : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace syfh
