#pragma once
// Global symbol table.  The ordering is fixed once and for all (u first,
// then lambda's, xi's, z's, w's, r, then ad-hoc auxiliaries) so that
// monomial maps are canonical and runs are deterministic.

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace bdl {

using Sym = std::uint32_t;

enum class SymClass : std::uint32_t {
  U = 0,
  Lambda = 1,
  Xi = 2,
  Zed = 3,
  Dub = 4,
  Deg = 5,  // the degeneration parameter r
  Aux = 6,
};

inline Sym make_sym(SymClass c, std::uint32_t idx) {
  return (static_cast<std::uint32_t>(c) << 24) | idx;
}

inline Sym sym_u() { return make_sym(SymClass::U, 0); }
inline Sym sym_lambda(std::uint32_t i) { return make_sym(SymClass::Lambda, i); }
inline Sym sym_xi(std::uint32_t i) { return make_sym(SymClass::Xi, i); }
inline Sym sym_z(std::uint32_t i) { return make_sym(SymClass::Zed, i); }
inline Sym sym_w(std::uint32_t i) { return make_sym(SymClass::Dub, i); }
inline Sym sym_r() { return make_sym(SymClass::Deg, 0); }

namespace detail {
struct AuxTable {
  std::mutex mu;
  std::vector<std::string> names;
  std::map<std::string, std::uint32_t> ids;
};
inline AuxTable& aux_table() {
  static AuxTable t;
  return t;
}
}  // namespace detail

inline Sym sym_aux(const std::string& name) {
  auto& t = detail::aux_table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.ids.find(name);
  if (it != t.ids.end()) return make_sym(SymClass::Aux, it->second);
  std::uint32_t id = static_cast<std::uint32_t>(t.names.size());
  t.names.push_back(name);
  t.ids.emplace(name, id);
  return make_sym(SymClass::Aux, id);
}

inline std::string sym_name(Sym s) {
  auto cls = static_cast<SymClass>(s >> 24);
  std::uint32_t idx = s & 0xffffff;
  switch (cls) {
    case SymClass::U: return "u";
    case SymClass::Lambda: return "lam" + std::to_string(idx + 1);
    case SymClass::Xi: return "xi" + std::to_string(idx + 1);
    case SymClass::Zed: return "z" + std::to_string(idx + 1);
    case SymClass::Dub: return "w" + std::to_string(idx + 1);
    case SymClass::Deg: return "r";
    case SymClass::Aux: {
      auto& t = detail::aux_table();
      std::lock_guard<std::mutex> lock(t.mu);
      return idx < t.names.size() ? t.names[idx] : "aux" + std::to_string(idx);
    }
  }
  return "?";
}

}  // namespace bdl
