// The four NB-VB recovery algorithms and their verification-threshold index.
#pragma once

#include <string>
#include <string_view>

namespace nbvb {

enum class Algorithm { genie, lm, sbb, xh };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::genie: return "genie";
    case Algorithm::lm: return "lm";
    case Algorithm::sbb: return "sbb";
    case Algorithm::xh: return "xh";
  }
  return "?";
}

inline bool algorithm_from_string(std::string_view s, Algorithm& out) {
  if (s == "genie") out = Algorithm::genie;
  else if (s == "lm") out = Algorithm::lm;
  else if (s == "sbb") out = Algorithm::sbb;
  else if (s == "xh") out = Algorithm::xh;
  else return false;
  return true;
}

// Minimum number of qualifying check neighbors a variable needs before it is
// verified: 1 for Genie and LM, 2 for SBB, ceil(d_v/2) for XH.
inline int beta_of(Algorithm a, int d_v) {
  switch (a) {
    case Algorithm::genie:
    case Algorithm::lm: return 1;
    case Algorithm::sbb: return 2;
    case Algorithm::xh: return (d_v + 1) / 2;
  }
  return 1;
}

}  // namespace nbvb
