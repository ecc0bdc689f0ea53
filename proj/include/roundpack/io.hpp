#pragma once

// Plain-text instance and packing formats. Both are whitespace-separated
// token streams; '#' starts a comment that runs to the end of the line.
//
//   instance:  m / m capacities / n / n lines "s t d"
//   packing:   UFP|SAP / rounds / one line per job "id round [height]"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "roundpack/core.hpp"

namespace roundpack {

class TokenReader {
 public:
  explicit TokenReader(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) tokens_.push_back(std::move(tok));
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }

  std::string word(const char* what) {
    if (done()) throw ParseError(std::string("unexpected end of input while reading ") + what);
    return tokens_[pos_++];
  }

  template <class T>
  T number(const char* what) {
    const std::string tok = word(what);
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError(std::string("expected integer for ") + what + ", got '" + tok + "'");
    return value;
  }

 private:
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

inline Instance read_instance(std::istream& in) {
  TokenReader tr(in);
  Instance inst;
  inst.m = tr.number<int>("m");
  if (inst.m < 1) throw ParseError("m must be positive");
  inst.capacities.resize(static_cast<std::size_t>(inst.m));
  for (auto& c : inst.capacities) c = tr.number<Amount>("capacity");
  const int n = tr.number<int>("job count");
  if (n < 0) throw ParseError("job count must be non-negative");
  inst.jobs.resize(static_cast<std::size_t>(n));
  for (auto& j : inst.jobs) {
    j.s = tr.number<int>("s");
    j.t = tr.number<int>("t");
    j.d = tr.number<Amount>("d");
  }
  if (!tr.done()) throw ParseError("trailing tokens after instance");
  try {
    inst.validate();
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
  return inst;
}

inline Instance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_instance(in);
}

inline void write_instance(std::ostream& out, const Instance& inst) {
  out << inst.m << '\n';
  for (int e = 0; e < inst.m; ++e) out << (e ? " " : "") << inst.capacity(e);
  out << '\n' << inst.n() << '\n';
  for (const auto& j : inst.jobs) out << j.s << ' ' << j.t << ' ' << j.d << '\n';
}

inline std::string format_instance(const Instance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

// Either kind of packing as read from disk.
struct PackingFile {
  Problem problem = Problem::Ufp;
  SapPacking packing;  // height_of is empty for UFP

  UfpPacking ufp() const { return packing.as_ufp(); }
};

inline PackingFile read_packing(std::istream& in, int n) {
  TokenReader tr(in);
  PackingFile pf;
  const std::string kind = tr.word("packing kind");
  if (kind == "UFP") pf.problem = Problem::Ufp;
  else if (kind == "SAP") pf.problem = Problem::Sap;
  else throw ParseError("packing kind must be UFP or SAP, got '" + kind + "'");
  pf.packing.rounds = tr.number<int>("rounds");
  if (pf.packing.rounds < 0) throw ParseError("rounds must be non-negative");
  pf.packing.round_of.assign(static_cast<std::size_t>(n), -1);
  if (pf.problem == Problem::Sap) pf.packing.height_of.assign(static_cast<std::size_t>(n), -1);
  while (!tr.done()) {
    const int id = tr.number<int>("job id");
    if (id < 0 || id >= n) throw ParseError("job id " + std::to_string(id) + " out of range");
    pf.packing.round_of[static_cast<std::size_t>(id)] = tr.number<int>("round");
    if (pf.problem == Problem::Sap) pf.packing.height_of[static_cast<std::size_t>(id)] = tr.number<Amount>("height");
  }
  return pf;
}

inline void write_packing(std::ostream& out, Problem problem, const SapPacking& p, const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << (problem == Problem::Ufp ? "UFP" : "SAP") << '\n' << p.rounds << '\n';
  for (std::size_t j = 0; j < p.round_of.size(); ++j) {
    out << j << ' ' << p.round_of[j];
    if (problem == Problem::Sap) out << ' ' << p.height_of[j];
    out << '\n';
  }
}

inline void write_packing(std::ostream& out, const UfpPacking& p, const std::vector<std::string>& comments = {}) {
  write_packing(out, Problem::Ufp, SapPacking{p.round_of, {}, p.rounds}, comments);
}

}  // namespace roundpack
