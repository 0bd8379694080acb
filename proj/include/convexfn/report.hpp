#pragma once

// Verification records: both sides of every checked relation, the gap, the
// tolerance and a verdict.

#include "convexfn/core.hpp"

#include <cstdint>
#include <cstring>
#include <optional>
#include <sstream>
#include <utility>

namespace convexfn {

enum class Verdict { Holds, Violated, HypothesisUnmet };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::Violated:
      return "violated";
    case Verdict::HypothesisUnmet:
      return "hypothesis-unmet";
  }
  return "?";
}

/// FNV-1a over the bit patterns of the inputs.
class Digest {
 public:
  Digest& add(double x) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof bits);
    for (int i = 0; i < 8; ++i) {
      h_ ^= (bits >> (8 * i)) & 0xffu;
      h_ *= 0x100000001b3ull;
    }
    return *this;
  }
  Digest& add(const Vec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) add(v[i]);
    return *this;
  }
  Digest& add(const std::vector<Vec>& vs) {
    for (const Vec& v : vs) add(v);
    return *this;
  }
  Digest& add(const std::vector<double>& xs) {
    for (double x : xs) add(x);
    return *this;
  }
  Digest& add(const std::string& s) {
    for (unsigned char c : s) {
      h_ ^= c;
      h_ *= 0x100000001b3ull;
    }
    return *this;
  }
  std::string hex() const {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h_;
    return os.str();
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ull;
};

struct Report {
  std::string statement;
  std::string inputs_digest;
  std::vector<std::pair<std::string, double>> quantities;
  double tolerance = 0;
  Verdict verdict = Verdict::Holds;
  std::uint64_t seed = 0;
  double runtime_seconds = 0;
  std::string note;

  Report() = default;
  Report(std::string id, double tol, std::uint64_t s = 0) : statement(std::move(id)), tolerance(tol), seed(s) {}

  Report& set(const std::string& name, double value) {
    for (auto& [k, v] : quantities)
      if (k == name) {
        v = value;
        return *this;
      }
    quantities.emplace_back(name, value);
    return *this;
  }

  std::optional<double> get(const std::string& name) const {
    for (const auto& [k, v] : quantities)
      if (k == name) return v;
    return std::nullopt;
  }

  double at(const std::string& name) const {
    auto v = get(name);
    if (!v) throw InputError("report has no quantity " + name);
    return *v;
  }

  /// Marks the report violated unless `ok`; never upgrades a failure.
  Report& require(bool ok, const std::string& why = {}) {
    if (!ok && verdict == Verdict::Holds) {
      verdict = Verdict::Violated;
      if (!why.empty()) note = note.empty() ? why : note + "; " + why;
    }
    return *this;
  }

  Report& unmet(const std::string& why) {
    verdict = Verdict::HypothesisUnmet;
    note = why;
    return *this;
  }

  bool holds() const { return verdict == Verdict::Holds; }
};

}  // namespace convexfn
