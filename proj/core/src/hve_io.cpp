#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "geofence/hve.hpp"

namespace geofence::hve {

namespace {

using bilinear::parse_decimal;
using bilinear::to_decimal;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pulls significant lines: skips blanks and '#' comments, strips '\r'.
bool next_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    return true;
  }
  return false;
}

std::string expect_line(std::istream& is, const char* what) {
  std::string line;
  if (!next_line(is, line)) throw FormatError(std::string("unexpected end of input, wanted ") + what);
  return line;
}

std::string expect_value(std::istream& is, const std::string& key) {
  const std::string line = expect_line(is, key.c_str());
  const auto eq = line.find('=');
  if (eq == std::string::npos || line.compare(0, eq, key) != 0 || eq != key.size())
    throw FormatError("expected '" + key + "=', got '" + line + "'");
  return line.substr(eq + 1);
}

template <class E>
E read_elem(std::istream& is, const std::string& key, const bilinear::GroupParams& gp) {
  const u128 e = parse_decimal(expect_value(is, key));
  if (e >= gp.n()) throw FormatError("element '" + key + "' out of range");
  return E(gp, e);
}

// Parses "MAGIC v1 l=<int> [extra...]" and returns l; extra tokens are returned.
std::size_t parse_header(const std::string& line, const char* magic, std::vector<std::string>& extra) {
  std::istringstream ss(line);
  std::string m, ver, l_tok;
  ss >> m >> ver >> l_tok;
  if (m != magic) throw FormatError(std::string("expected ") + magic + " header, got '" + line + "'");
  if (ver != "v1") throw FormatError("unsupported version '" + ver + "'");
  if (l_tok.rfind("l=", 0) != 0) throw FormatError("missing l= in header");
  const std::size_t l = std::stoul(l_tok.substr(2));
  std::string tok;
  while (ss >> tok) extra.push_back(tok);
  return l;
}

std::string join_positions(const std::vector<std::size_t>& fixed) {
  std::string out;
  for (std::size_t j = 0; j < fixed.size(); ++j) {
    if (j) out.push_back(',');
    out += std::to_string(fixed[j] + 1);
  }
  return out;
}

bilinear::ParamsPtr read_params_line(std::istream& is) {
  const std::string line = expect_line(is, "params");
  if (line.rfind("params ", 0) != 0) throw FormatError("expected 'params ...', got '" + line + "'");
  return bilinear::GroupParams::parse(std::string_view(line).substr(7));
}

}  // namespace

void write_token(std::ostream& os, const Token& t) {
  const auto& fixed = t.pattern.fixed_positions();
  os << "HVETOK v1 l=" << t.width() << " J=" << join_positions(fixed) << '\n';
  os << "pattern=" << t.pattern.str() << '\n';
  os << "K0=" << to_decimal(t.k0.exponent()) << '\n';
  for (std::size_t j = 0; j < fixed.size(); ++j) {
    const auto i = fixed[j] + 1;
    os << 'K' << i << ",1=" << to_decimal(t.k1[j].exponent()) << '\n';
    os << 'K' << i << ",2=" << to_decimal(t.k2[j].exponent()) << '\n';
  }
}

Token read_token(std::istream& is, const ParamsPtr& params) {
  const auto& gp = *params;
  std::vector<std::string> extra;
  const std::size_t l = parse_header(expect_line(is, "HVETOK header"), "HVETOK", extra);
  if (extra.size() != 1 || extra[0].rfind("J=", 0) != 0) throw FormatError("HVETOK header needs J=");
  Token t;
  t.pattern = Pattern(expect_value(is, "pattern"));
  if (t.pattern.size() != l) throw FormatError("pattern width disagrees with header");
  if (extra[0].substr(2) != join_positions(t.pattern.fixed_positions()))
    throw FormatError("J list disagrees with pattern");
  t.k0 = read_elem<GElem>(is, "K0", gp);
  for (std::size_t i : t.pattern.fixed_positions()) {
    const std::string base = "K" + std::to_string(i + 1);
    t.k1.push_back(read_elem<GElem>(is, base + ",1", gp));
    t.k2.push_back(read_elem<GElem>(is, base + ",2", gp));
  }
  return t;
}

void write_ciphertext(std::ostream& os, const Ciphertext& c) {
  os << "HVECTX v1 l=" << c.width() << '\n';
  os << "Cprime=" << to_decimal(c.c_prime.exponent()) << '\n';
  os << "C0=" << to_decimal(c.c0.exponent()) << '\n';
  for (std::size_t i = 0; i < c.width(); ++i) {
    os << 'C' << i + 1 << ",1=" << to_decimal(c.c1[i].exponent()) << '\n';
    os << 'C' << i + 1 << ",2=" << to_decimal(c.c2[i].exponent()) << '\n';
  }
}

Ciphertext read_ciphertext(std::istream& is, const ParamsPtr& params) {
  const auto& gp = *params;
  std::vector<std::string> extra;
  const std::size_t l = parse_header(expect_line(is, "HVECTX header"), "HVECTX", extra);
  if (!extra.empty()) throw FormatError("unexpected fields in HVECTX header");
  Ciphertext c;
  c.c_prime = read_elem<GTElem>(is, "Cprime", gp);
  c.c0 = read_elem<GElem>(is, "C0", gp);
  for (std::size_t i = 1; i <= l; ++i) {
    const std::string base = "C" + std::to_string(i);
    c.c1.push_back(read_elem<GElem>(is, base + ",1", gp));
    c.c2.push_back(read_elem<GElem>(is, base + ",2", gp));
  }
  return c;
}

void write_public_key(std::ostream& os, const PublicKey& pk) {
  os << "HVEPK v1 l=" << pk.width() << '\n';
  os << "params " << pk.params->to_string() << '\n';
  os << "gq=" << to_decimal(pk.g_q.exponent()) << '\n';
  os << "V=" << to_decimal(pk.V.exponent()) << '\n';
  os << "A=" << to_decimal(pk.A.exponent()) << '\n';
  for (std::size_t i = 0; i < pk.width(); ++i) {
    os << 'U' << i + 1 << '=' << to_decimal(pk.U[i].exponent()) << '\n';
    os << 'H' << i + 1 << '=' << to_decimal(pk.H[i].exponent()) << '\n';
    os << 'W' << i + 1 << '=' << to_decimal(pk.W[i].exponent()) << '\n';
  }
}

PublicKey read_public_key(std::istream& is) {
  std::vector<std::string> extra;
  const std::size_t l = parse_header(expect_line(is, "HVEPK header"), "HVEPK", extra);
  PublicKey pk;
  pk.params = read_params_line(is);
  const auto& gp = *pk.params;
  pk.g_q = read_elem<GElem>(is, "gq", gp);
  pk.V = read_elem<GElem>(is, "V", gp);
  pk.A = read_elem<GTElem>(is, "A", gp);
  for (std::size_t i = 1; i <= l; ++i) {
    const std::string n = std::to_string(i);
    pk.U.push_back(read_elem<GElem>(is, "U" + n, gp));
    pk.H.push_back(read_elem<GElem>(is, "H" + n, gp));
    pk.W.push_back(read_elem<GElem>(is, "W" + n, gp));
  }
  return pk;
}

void write_secret_key(std::ostream& os, const SecretKey& sk) {
  os << "HVESK v1 l=" << sk.width() << '\n';
  os << "params " << sk.params->to_string() << '\n';
  os << "gq=" << to_decimal(sk.g_q.exponent()) << '\n';
  os << "a=" << to_decimal(sk.a) << '\n';
  os << "g=" << to_decimal(sk.g.exponent()) << '\n';
  os << "v=" << to_decimal(sk.v.exponent()) << '\n';
  for (std::size_t i = 0; i < sk.width(); ++i) {
    os << 'u' << i + 1 << '=' << to_decimal(sk.u[i].exponent()) << '\n';
    os << 'h' << i + 1 << '=' << to_decimal(sk.h[i].exponent()) << '\n';
    os << 'w' << i + 1 << '=' << to_decimal(sk.w[i].exponent()) << '\n';
  }
}

SecretKey read_secret_key(std::istream& is) {
  std::vector<std::string> extra;
  const std::size_t l = parse_header(expect_line(is, "HVESK header"), "HVESK", extra);
  SecretKey sk;
  sk.params = read_params_line(is);
  const auto& gp = *sk.params;
  sk.g_q = read_elem<GElem>(is, "gq", gp);
  sk.a = parse_decimal(expect_value(is, "a"));
  if (sk.a >= gp.p()) throw FormatError("secret exponent a out of range");
  sk.g = read_elem<GElem>(is, "g", gp);
  sk.v = read_elem<GElem>(is, "v", gp);
  for (std::size_t i = 1; i <= l; ++i) {
    const std::string n = std::to_string(i);
    sk.u.push_back(read_elem<GElem>(is, "u" + n, gp));
    sk.h.push_back(read_elem<GElem>(is, "h" + n, gp));
    sk.w.push_back(read_elem<GElem>(is, "w" + n, gp));
  }
  return sk;
}

namespace {
bool at_end(std::istream& is) {
  // Skip whitespace and comment lines without consuming a record header.
  for (;;) {
    const int c = is.peek();
    if (c == EOF) return true;
    if (c == '#') {
      std::string skip;
      std::getline(is, skip);
      continue;
    }
    if (std::isspace(c)) {
      is.get();
      continue;
    }
    return false;
  }
}
}  // namespace

std::vector<Token> read_tokens(std::istream& is, const ParamsPtr& params) {
  std::vector<Token> out;
  while (!at_end(is)) out.push_back(read_token(is, params));
  return out;
}

std::vector<Ciphertext> read_ciphertexts(std::istream& is, const ParamsPtr& params) {
  std::vector<Ciphertext> out;
  while (!at_end(is)) out.push_back(read_ciphertext(is, params));
  return out;
}

}  // namespace geofence::hve
