#pragma once

#include <gmpxx.h>

#include <string>

#include "chebknot/errors.hpp"

namespace chebknot {

// Canonical rational text form: "p" for integers, "p/q" otherwise, q > 0.
inline std::string rational_str(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline mpq_class parse_rational(const std::string& text) {
  if (text.empty()) throw input_error("empty rational");
  mpq_class q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
    throw input_error("bad rational: " + text);
  if (q.get_den() == 0) throw input_error("zero denominator: " + text);
  q.canonicalize();
  return q;
}

}  // namespace chebknot
