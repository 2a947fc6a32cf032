#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <tuple>

#include "ems/halfint.hpp"

namespace ems {

enum class Duality { orthogonal, symplectic };

inline char duality_char(Duality d) { return d == Duality::orthogonal ? 'O' : 'S'; }

// Opaque self-dual cuspidal label: an identity plus (dim, duality).
// Distinct names are distinct labels even with equal dim.
struct RhoLabel {
  std::string name;
  int dim = 1;
  Duality duality = Duality::orthogonal;

  friend bool operator==(const RhoLabel&, const RhoLabel&) = default;
  friend auto operator<=>(const RhoLabel& a, const RhoLabel& b) {
    return std::tie(a.name, a.dim, a.duality) <=> std::tie(b.name, b.dim, b.duality);
  }
};

// The trivial character of GL1; the canonical label used by all shipped fixtures.
inline const RhoLabel& trivial_rho() {
  static const RhoLabel r{"triv", 1, Duality::orthogonal};
  return r;
}

// "rho:<name>:<dim>:<O|S>", with bare "1" for the trivial GL1 label.
inline std::string to_string(const RhoLabel& r) {
  if (r == trivial_rho()) return "1";
  return "rho:" + r.name + ":" + std::to_string(r.dim) + ":" + duality_char(r.duality);
}

RhoLabel parse_rho(const std::string& text);

// Segment [A,B]_rho. The stored form always has A >= B-1; A = B-1 encodes
// the empty segment.
struct Segment {
  RhoLabel rho;
  HalfInt A;
  HalfInt B;

  friend bool operator==(const Segment&, const Segment&) = default;
};

inline void check_segment(const Segment& s) {
  if ((s.A.twice - s.B.twice) % 2 != 0)
    throw std::invalid_argument("segment endpoints differ by a non-integer: [" +
                                to_string(s.A) + "," + to_string(s.B) + "]");
  if (s.A.twice < s.B.twice - 2)
    throw std::invalid_argument("segment [" + to_string(s.A) + "," + to_string(s.B) +
                                "] is shorter than empty");
}

// b = #[A,B] = A - B + 1.
inline std::int64_t seg_length(const Segment& s) {
  check_segment(s);
  return (s.A.twice - s.B.twice) / 2 + 1;
}

enum class Family { SO_odd, Sp };

inline std::string to_string(Family f) { return f == Family::SO_odd ? "SOodd" : "Sp"; }

// Group context fixing the dual dimension: SO_{2n+1} has dual Sp_{2n}(C),
// Sp_{2n} has dual SO_{2n+1}(C).
struct GroupContext {
  Family family = Family::Sp;
  int rank = 0;

  friend bool operator==(const GroupContext&, const GroupContext&) = default;

  std::int64_t dual_dim() const {
    return family == Family::SO_odd ? 2 * std::int64_t(rank) : 2 * std::int64_t(rank) + 1;
  }
  Duality dual_type() const {
    return family == Family::SO_odd ? Duality::symplectic : Duality::orthogonal;
  }
};

}  // namespace ems
