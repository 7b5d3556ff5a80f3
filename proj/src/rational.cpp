#include "ghpath/rational.hpp"

#include "ghpath/errors.hpp"

#include <algorithm>
#include <sstream>

namespace ghpath {

std::string to_string(const Rat& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

Rat parse_rat(std::string_view text) {
  auto bad = [&]() -> Rat {
    fail_validation("cannot parse scalar '" + std::string(text) + "'");
  };
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.empty()) return bad();

  std::size_t pos = 0;
  bool neg = false;
  if (text[pos] == '+' || text[pos] == '-') {
    neg = text[pos] == '-';
    ++pos;
  }
  if (pos >= text.size()) return bad();

  auto digits = [](std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };

  std::string_view body = text.substr(pos);

  // Optional decimal exponent ("1e-9"), not allowed on fraction forms.
  long long exp10 = 0;
  if (auto epos = body.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view es = body.substr(epos + 1);
    body = body.substr(0, epos);
    bool eneg = false;
    if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
      eneg = es[0] == '-';
      es = es.substr(1);
    }
    if (es.empty() || es.size() > 6 ||
        !std::all_of(es.begin(), es.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return bad();
    for (char c : es) exp10 = exp10 * 10 + (c - '0');
    if (eneg) exp10 = -exp10;
    if (body.find('/') != std::string_view::npos) return bad();
  }

  Rat value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!digits(num) || !digits(den)) return bad();
    BigInt n{std::string(num)};
    BigInt d{std::string(den)};
    if (d == 0) fail_validation("zero denominator in scalar '" + std::string(text) + "'");
    value = Rat(n, d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view ip = body.substr(0, dot);
    std::string_view fp = body.substr(dot + 1);
    if (ip.empty() && fp.empty()) return bad();
    if ((!ip.empty() && !digits(ip)) || (!fp.empty() && !digits(fp))) return bad();
    BigInt n = ip.empty() ? BigInt(0) : BigInt(std::string(ip));
    BigInt den = 1;
    for (char c : fp) {
      n = n * 10 + (c - '0');
      den *= 10;
    }
    value = Rat(n, den);
  } else {
    if (!digits(body)) return bad();
    value = Rat(BigInt(std::string(body)));
  }
  if (exp10 != 0) {
    BigInt p = 1;
    for (long long k = 0; k < (exp10 < 0 ? -exp10 : exp10); ++k) p *= 10;
    value = exp10 > 0 ? Rat(value * p) : Rat(value / p);
  }
  return neg ? Rat(-value) : value;
}

Rat abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }
Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

} // namespace ghpath
