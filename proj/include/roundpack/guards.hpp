#pragma once

// Size limits for the exhaustive solvers and the configuration DP. The
// environment variable ROUNDPACK_GUARDS overrides any field, e.g.
//   ROUNDPACK_GUARDS="exact_ufp_n=12,dp_states=20000000"

#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <string>

#include "roundpack/error.hpp"

namespace roundpack {

struct Guards {
  int exact_ufp_n = 10;
  int exact_ufp_rounds = 5;
  int exact_sap_n = 8;
  std::int64_t exact_sap_cmax = 8;
  int exact_sap_rounds = 4;
  int dsa_n = 8;
  std::int64_t dsa_load = 12;
  std::int64_t dp_states = 10'000'000;
  std::int64_t dp_work = 2'000'000;  // transitions per DP call
  std::int64_t height_set = 200'000;
  int dp_omega = 6;

  void set(const std::string& key, std::int64_t v) {
    if (key == "exact_ufp_n") exact_ufp_n = static_cast<int>(v);
    else if (key == "exact_ufp_rounds") exact_ufp_rounds = static_cast<int>(v);
    else if (key == "exact_sap_n") exact_sap_n = static_cast<int>(v);
    else if (key == "exact_sap_cmax") exact_sap_cmax = v;
    else if (key == "exact_sap_rounds") exact_sap_rounds = static_cast<int>(v);
    else if (key == "dsa_n") dsa_n = static_cast<int>(v);
    else if (key == "dsa_load") dsa_load = v;
    else if (key == "dp_states") dp_states = v;
    else if (key == "dp_work") dp_work = v;
    else if (key == "height_set") height_set = v;
    else if (key == "dp_omega") dp_omega = static_cast<int>(v);
    else throw ParseError("unknown guard '" + key + "'");
  }

  static Guards parse(const std::string& spec) {
    Guards g;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ParseError("guard entry '" + item + "' lacks '='");
      try {
        g.set(item.substr(0, eq), std::stoll(item.substr(eq + 1)));
      } catch (const std::logic_error&) {
        throw ParseError("bad guard value in '" + item + "'");
      }
    }
    return g;
  }

  // Defaults overridden by ROUNDPACK_GUARDS when set.
  static Guards current() {
    const char* env = std::getenv("ROUNDPACK_GUARDS");
    return env ? parse(env) : Guards{};
  }
};

}  // namespace roundpack
