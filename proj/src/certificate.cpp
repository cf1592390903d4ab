#include "dcx/certificate.hpp"

#include <algorithm>
#include <numeric>

namespace dcx {

std::string Certificate::to_string() const {
  switch (kind) {
    case Kind::Exact:
      return "Exact";
    case Kind::Periodic:
      return "Periodic(start=" + std::to_string(start) + ", period=" + std::to_string(period) + ")";
    case Kind::UpToBound:
      return "UpToBound(" + std::to_string(bound) + ")";
  }
  return "?";
}

Certificate weakest(const Certificate& a, const Certificate& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) > static_cast<int>(b.kind) ? a : b;
  switch (a.kind) {
    case Certificate::Kind::Exact:
      return a;
    case Certificate::Kind::Periodic:
      return Certificate::periodic(std::max(a.start, b.start), std::lcm(a.period, b.period));
    case Certificate::Kind::UpToBound:
      return Certificate::up_to_bound(std::min(a.bound, b.bound));
  }
  return a;
}

}  // namespace dcx

namespace dcx {

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::True:
      return "true";
    case Tri::False:
      return "false";
    case Tri::Unknown:
      return "unknown";
  }
  return "unknown";
}

}  // namespace dcx
