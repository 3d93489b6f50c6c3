#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "ratiolim/complex_literal.hpp"
#include "ratiolim/recurrence.hpp"

namespace testing_helpers {

using ratiolim::ExactComplex;
using ratiolim::InitialConditions;
using ratiolim::Recurrence;

inline std::vector<ExactComplex> exact_list(std::initializer_list<long> xs) {
  return {xs.begin(), xs.end()};
}

inline Recurrence rec(std::initializer_list<long> b) { return Recurrence::create(exact_list(b)); }
inline Recurrence rec(const std::string& literals) { return Recurrence::create(ratiolim::parse_complex_list(literals)); }

inline InitialConditions init(const Recurrence& r, std::initializer_list<long> a) {
  return InitialConditions::create(r, exact_list(a));
}
inline InitialConditions init(const Recurrence& r, const std::string& literals) {
  return InitialConditions::create(r, ratiolim::parse_complex_list(literals));
}

inline Recurrence float_rec(std::vector<ratiolim::Complex> b) { return Recurrence::create(std::move(b)); }
inline InitialConditions float_init(const Recurrence& r, std::vector<ratiolim::Complex> a) {
  return InitialConditions::create(r, std::move(a));
}

}  // namespace testing_helpers
