#include "capvert/monomial.hpp"

#include <cstdlib>

namespace capvert {

std::string_view var_name(Var v) {
  switch (v) {
    case Var::T1: return "t1";
    case Var::T2: return "t2";
    case Var::Q: return "q";
    case Var::U: return "u";
    case Var::A: return "a";
  }
  return "?";
}

bool parse_var(std::string_view name, Var& out) {
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (var_name(static_cast<Var>(i)) == name) {
      out = static_cast<Var>(i);
      return true;
    }
  }
  return false;
}

std::string render_half(std::int64_t doubled) {
  if (doubled % 2 == 0) return std::to_string(doubled / 2);
  return "(" + std::to_string(doubled) + "/2)";
}

std::string Monomial::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (e_[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += var_name(static_cast<Var>(i));
    if (e_[i] != 2) out += "^" + render_half(e_[i]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace capvert
