#pragma once

// Interned symbol alphabet: independent/dependent variables, second-order jet
// variables, parameters, and unknown-function symbols with derivative tags.

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace dlv {

using AtomId = std::uint32_t;

enum class AtomKind : std::uint8_t { Indep, Dep, Jet, Param, Unknown };

// Base variables, in canonical order. Ids are fixed.
inline constexpr AtomId kT = 0;
inline constexpr AtomId kX = 1;
inline constexpr AtomId kU = 2;
inline constexpr AtomId kV = 3;
inline constexpr AtomId kW = 4;

inline constexpr int kNumDeps = 3;

// Derivative multi-index over (t, x, u, v, w).
struct DerivTag {
  std::array<std::uint8_t, 5> n{0, 0, 0, 0, 0};

  bool operator==(const DerivTag&) const = default;
  int order() const {
    int s = 0;
    for (auto k : n) s += k;
    return s;
  }
  // True if every component of `other` is <= ours (ours extends it).
  bool extends(const DerivTag& other) const {
    for (int i = 0; i < 5; ++i)
      if (n[i] < other.n[i]) return false;
    return true;
  }
  std::string suffix() const;  // "tx", "xu", "uu", ... ; empty for order 0
};

struct AtomInfo {
  AtomKind kind;
  std::string name;
  // Dep / Jet payload.
  int dep = -1;  // 0,1,2 for u,v,w
  int dt = 0, dx = 0;
  // Param payload.
  bool positive = false;  // known strictly positive (certifies nonzero)
  // Unknown payload.
  std::string base;
  std::uint8_t args = 0;  // bitmask over (t,x,u,v,w)
  DerivTag tag;
};

// Jet variables u_t, u_x, u_tt, u_xt, u_xx and the v, w analogues.
// dt + dx must be 1 or 2.
AtomId jet_atom(int dep, int dt, int dx);
AtomId dep_atom(int dep);  // kU + dep

// Parameters. Interning the same name twice returns the same id.
AtomId intern_param(const std::string& name, bool positive = false);

// Unknown functions of a subset of (t,x,u,v,w); argmask bit i <-> base var i.
AtomId declare_unknown(const std::string& base, std::uint8_t argmask);
// Derivative of an unknown atom in direction arg (0..4); arg must be in the
// function's argument set.
AtomId unknown_deriv(AtomId id, int arg);
// Atom for the same base with an explicit tag.
AtomId unknown_tagged(const std::string& base, const DerivTag& tag);

const AtomInfo& atom_info(AtomId id);
std::optional<AtomId> find_atom(const std::string& name);
inline const std::string& atom_name(AtomId id) { return atom_info(id).name; }

inline std::uint8_t argmask_all() { return 0x1F; }
inline std::uint8_t argmask_of(std::initializer_list<AtomId> vars) {
  std::uint8_t m = 0;
  for (auto v : vars) m = static_cast<std::uint8_t>(m | (1u << v));
  return m;
}

}  // namespace dlv
