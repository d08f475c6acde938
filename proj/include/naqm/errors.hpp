#pragma once

// Error taxonomy used across the library.
//
//  * ValidationError       -- bad user input (malformed files, axiom violations,
//                             dimension mismatches).  The CLI maps these to exit
//                             code 2.
//  * UnsupportedOperation  -- a structurally impossible request (e.g. starring an
//                             operator that carries no generator-word provenance).
//                             Also exit code 2 at the CLI boundary.
//  * InternalError         -- invariants of the library itself broke.  Exit code 1.

#include <stdexcept>
#include <string>

namespace naqm {

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedOperation : std::runtime_error {
  explicit UnsupportedOperation(const std::string& what) : std::runtime_error(what) {}
};

struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace naqm
