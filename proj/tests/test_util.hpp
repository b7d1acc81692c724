#pragma once

#include <string>

#include "multicubic/scalar.hpp"

namespace multicubic::testing {

inline Rational q(long p, long d = 1) {
  Rational r{Integer(p), Integer(d)};
  r.canonicalize();
  return r;
}

inline std::string data_path(const std::string& name) { return std::string(MULTICUBIC_DATA_DIR) + "/" + name; }

}  // namespace multicubic::testing
