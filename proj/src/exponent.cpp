#include "gfc/exponent.hpp"

#include <charconv>
#include <numeric>

#include "gfc/error.hpp"

namespace gfc {

namespace {

[[noreturn]] void overflow() {
  throw Error(ErrorKind::ExponentOverflow, "exponent overflow");
}

std::int64_t abs64(std::int64_t v) {
  if (v == INT64_MIN) overflow();
  return v < 0 ? -v : v;
}

bool parse_int(std::string_view s, std::int64_t& out) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) overflow();
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) overflow();
  return r;
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  const std::int64_t g = std::gcd(a, b);
  return checked_mul(a / g, b);
}

Exponent::Exponent(std::int64_t num, std::int64_t den) {
  if (den == 0) {
    throw Error(ErrorKind::InvalidArgument, "exponent with zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
    if (num == INT64_MIN || den == INT64_MIN) overflow();
  }
  const std::int64_t g = std::gcd(abs64(num), den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
  if (num_ == 0) den_ = 1;
}

Exponent Exponent::parse(std::string_view text) {
  const auto slash = text.find('/');
  std::int64_t p = 0;
  std::int64_t q = 1;
  if (slash == std::string_view::npos) {
    if (!parse_int(text, p)) {
      throw Error(ErrorKind::Schema,
                  "malformed exponent \"" + std::string(text) + "\"");
    }
  } else if (!parse_int(text.substr(0, slash), p) ||
             !parse_int(text.substr(slash + 1), q) || q <= 0) {
    throw Error(ErrorKind::Schema,
                "malformed exponent \"" + std::string(text) + "\"");
  }
  return Exponent(p, q);
}

std::int64_t Exponent::floor() const noexcept {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::string Exponent::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Exponent operator+(const Exponent& a, const Exponent& b) {
  const std::int64_t l = checked_lcm(a.den_, b.den_);
  return Exponent(checked_add(checked_mul(a.num_, l / a.den_),
                              checked_mul(b.num_, l / b.den_)),
                  l);
}

Exponent Exponent::operator-() const {
  if (num_ == INT64_MIN) overflow();
  Exponent r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Exponent operator-(const Exponent& a, const Exponent& b) { return a + (-b); }

Exponent operator*(const Exponent& a, const Exponent& b) {
  const std::int64_t g1 = std::gcd(abs64(a.num_), b.den_);
  const std::int64_t g2 = std::gcd(abs64(b.num_), a.den_);
  const std::int64_t n1 = g1 ? a.num_ / g1 : a.num_;
  const std::int64_t d2 = g1 ? b.den_ / g1 : b.den_;
  const std::int64_t n2 = g2 ? b.num_ / g2 : b.num_;
  const std::int64_t d1 = g2 ? a.den_ / g2 : a.den_;
  return Exponent(checked_mul(n1, n2), checked_mul(d1, d2));
}

Exponent operator/(const Exponent& a, const Exponent& b) {
  if (b.num_ == 0) {
    throw Error(ErrorKind::InvalidArgument, "division by zero exponent");
  }
  return a * Exponent(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Exponent& a,
                                 const Exponent& b) noexcept {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Exponent rational_gcd(const Exponent& a, const Exponent& b) {
  if (a.num() == 0) return b;
  if (b.num() == 0) return a;
  const std::int64_t l = checked_lcm(a.den(), b.den());
  const std::int64_t na = checked_mul(a.num() < 0 ? -a.num() : a.num(), l / a.den());
  const std::int64_t nb = checked_mul(b.num() < 0 ? -b.num() : b.num(), l / b.den());
  return Exponent(std::gcd(na, nb), l);
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonpositiveExponent: return "nonpositive_exponent";
    case ErrorKind::SingularAtOrigin: return "singular_at_origin";
    case ErrorKind::ExponentOverflow: return "exponent_overflow";
    case ErrorKind::UnsupportedConvolutionPower: return "unsupported_convolution_power";
    case ErrorKind::DerivativeLeavesC1: return "derivative_leaves_c1";
    case ErrorKind::ProjectorSingular: return "projector_singular";
    case ErrorKind::OrderOutOfRange: return "order_out_of_range";
    case ErrorKind::NoAssociate: return "no_associate";
    case ErrorKind::NonLatticeKernel: return "non_lattice_kernel";
    case ErrorKind::NotLnPair: return "not_ln_pair";
    case ErrorKind::RootFindingFailed: return "root_finding_failed";
    case ErrorKind::ImproperRational: return "improper_rational";
    case ErrorKind::IdentityPart: return "identity_part";
    case ErrorKind::NotDifferentialEquation: return "not_differential_equation";
    case ErrorKind::NonIntegrableSingularity: return "non_integrable_singularity";
    case ErrorKind::CrossCheckFailed: return "cross_check_failed";
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::Schema: return "schema";
  }
  return "unknown";
}

}  // namespace gfc
