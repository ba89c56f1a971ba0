#pragma once

#include <stdexcept>
#include <string>

namespace gaugekit {

/** Caller handed us something malformed: bad shapes, invalid matrices,
 *  disconnected graphs, out-of-range parameters, unparseable files.
 *  The CLI maps this to exit code 2. */
class invalid_input : public std::runtime_error {
 public:
  explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

/** A numerical routine failed on input that passed validation
 *  (non-convergence, singular projection target, ...).
 *  The CLI maps this to exit code 1. */
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gaugekit
