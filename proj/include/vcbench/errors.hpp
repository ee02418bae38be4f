#pragma once

#include <stdexcept>
#include <string>

namespace vcbench {

// Input errors map to CLI exit code 2, analysis errors to 3.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AnalysisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Capture decoding
struct MalformedHeader : InputError {
  using InputError::InputError;
};
struct TruncatedRecord : InputError {
  using InputError::InputError;
};
struct UnsupportedLinkType : InputError {
  using InputError::InputError;
};

// Lag analysis
struct NegativeLag : AnalysisError {
  using AnalysisError::AnalysisError;
};
struct EmptySamples : AnalysisError {
  using AnalysisError::AnalysisError;
};

// Endpoint analysis
struct AmbiguousTopology : AnalysisError {
  using AnalysisError::AnalysisError;
};
struct NoProbes : AnalysisError {
  using AnalysisError::AnalysisError;
};

// Rate analysis
struct EmptyAfterWarmup : AnalysisError {
  using AnalysisError::AnalysisError;
};

// Video
struct DimensionMismatch : InputError {
  using InputError::InputError;
};
struct FrameTooSmall : InputError {
  using InputError::InputError;
};
struct CropOutOfBounds : InputError {
  using InputError::InputError;
};
struct LengthMismatch : InputError {
  using InputError::InputError;
};
struct InsufficientOverlap : AnalysisError {
  using AnalysisError::AnalysisError;
};
struct DegenerateReference : AnalysisError {
  using AnalysisError::AnalysisError;
};

// Audio
struct TooShort : InputError {
  using InputError::InputError;
};
struct AllGated : AnalysisError {
  using AnalysisError::AnalysisError;
};
struct NoConfidentPeak : AnalysisError {
  using AnalysisError::AnalysisError;
};
struct EmptyOverlap : AnalysisError {
  using AnalysisError::AnalysisError;
};
struct UnsupportedAudioFormat : InputError {
  using InputError::InputError;
};

// Simulator
struct ConfigInvalid : InputError {
  using InputError::InputError;
};

// Reporting
struct SchemaMismatch : InputError {
  using InputError::InputError;
};
struct KeyMismatch : InputError {
  using InputError::InputError;
};

}  // namespace vcbench
