#pragma once

#include <stdexcept>
#include <string>

namespace wpt {

// Base of every error thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unknown, duplicated or mismatched mode labels.
class mode_error : public error {
public:
    using error::error;
};

// Zero vectors, weights or distributions that do not sum to one.
class normalization_error : public error {
public:
    using error::error;
};

// Parameters outside their admitted range (photon count cap, noise ranges,
// unvalidated measurement settings in strict mode, non-finite inputs).
class range_error : public error {
public:
    using error::error;
};

// Structural preconditions: non-product bases, non-partition groupings,
// states with weight outside an expected subspace.
class structure_error : public error {
public:
    using error::error;
};

}  // namespace wpt
