#pragma once

#include <string>
#include <string_view>

namespace dcx {

/// How far a computed answer is guaranteed. Exact: the finite data decides
/// everything. Periodic: a validated syzygy recurrence extends the data past
/// the window. UpToBound: only degrees up to `bound` were examined.
struct Certificate {
  enum class Kind { Exact, Periodic, UpToBound };
  Kind kind = Kind::Exact;
  int start = 0;
  int period = 0;
  int bound = 0;

  static Certificate exact() { return {}; }
  static Certificate periodic(int start, int period) { return {Kind::Periodic, start, period, 0}; }
  static Certificate up_to_bound(int n) { return {Kind::UpToBound, 0, 0, n}; }

  bool is_exact() const { return kind == Kind::Exact; }
  /// Exact or Periodic.
  bool conclusive() const { return kind != Kind::UpToBound; }
  std::string to_string() const;

  friend bool operator==(const Certificate& a, const Certificate& b) {
    return a.kind == b.kind && a.start == b.start && a.period == b.period && a.bound == b.bound;
  }
};

/// Three-valued answer; Unknown means the certified window did not decide.
enum class Tri { True, False, Unknown };

std::string_view to_string(Tri t);
inline Tri tri(bool b) { return b ? Tri::True : Tri::False; }

/// The weaker of two certificates (Exact > Periodic > UpToBound).
Certificate weakest(const Certificate& a, const Certificate& b);

}  // namespace dcx
