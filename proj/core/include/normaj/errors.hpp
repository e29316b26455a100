#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace normaj {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// linalg
struct NonUnitVector : Error { using Error::Error; };
struct LevelOutOfRange : Error { using Error::Error; };
struct DimensionTooLarge : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };

// poly
struct ConstantPolynomial : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct SampleTooCloseToRoot : Error { using Error::Error; };

// inverse spectral
struct DegenerateSpectrum : Error { using Error::Error; };
struct PoleHit : Error { using Error::Error; };
struct BreakdownBeforeCompletion : Error { using Error::Error; };
struct NotIsometry : Error { using Error::Error; };

/// Raised when a spectral pair fails the nonnegative-residue test.  The
/// ordinal of the first offending residue is 1-based.
struct NotSolvable : Error {
    std::size_t residue_ordinal;
    NotSolvable(const std::string& what, std::size_t ordinal)
        : Error(what), residue_ordinal(ordinal) {}
};

// majorization
struct SizeExceeded : Error { using Error::Error; };
struct CombinatorialBound : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct NotMajorized : Error { using Error::Error; };
struct AlreadyFull : Error { using Error::Error; };

// gauss-lucas
struct MultipleRoots : Error { using Error::Error; };
struct NotCentered : Error { using Error::Error; };
struct InvalidDescriptor : Error { using Error::Error; };

// mason-shapiro
struct NotMonic : Error { using Error::Error; };

}  // namespace normaj
