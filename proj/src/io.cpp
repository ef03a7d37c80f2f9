#include "btt/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "btt/errors.hpp"

namespace btt {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  std::ostringstream os;
  os << "line " << line << ": " << what;
  throw ParseError(os.str());
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::size_t parse_size(std::string_view s, std::string_view key, std::size_t line) {
  if (s.substr(0, key.size()) != key) fail(line, "expected '" + std::string(key) + "<value>'");
  s.remove_prefix(key.size());
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v == 0)
    fail(line, "bad value for '" + std::string(key) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

BlockVector read_block_vector(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  bool header = false;
  std::vector<double> values;

  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::istringstream fields{std::string(t)};
    std::string tok;
    if (!header) {
      std::string magic;
      std::string version;
      std::string ns;
      std::string ms;
      std::string extra;
      fields >> magic >> version >> ns >> ms;
      if (magic != "btt" || version != "v1") fail(lineno, "expected header 'btt v1 n=<n> m=<m>'");
      if (fields >> extra) fail(lineno, "trailing text in header");
      n = parse_size(ns, "n=", lineno);
      m = parse_size(ms, "m=", lineno);
      header = true;
      values.reserve(n * m * m);
      continue;
    }
    std::size_t count = 0;
    while (fields >> tok) {
      double x = 0.0;
      if (!parse_double(tok, x)) fail(lineno, "not a number: '" + tok + "'");
      values.push_back(x);
      ++count;
    }
    if (count != m) {
      std::ostringstream os;
      os << "expected " << m << " numbers, found " << count;
      fail(lineno, os.str());
    }
    if (values.size() > n * m * m) fail(lineno, "more rows than the header declares");
  }
  if (!header) throw ParseError("missing header 'btt v1 n=<n> m=<m>'");
  if (values.size() != n * m * m) {
    std::ostringstream os;
    os << "expected " << n * m << " rows, found " << values.size() / m;
    throw ParseError(os.str());
  }

  BlockVector v(n, m);
  std::size_t idx = 0;
  const auto mi = static_cast<Eigen::Index>(m);
  for (std::size_t h = 0; h < n; ++h) {
    for (Eigen::Index r = 0; r < mi; ++r) {
      for (Eigen::Index s = 0; s < mi; ++s) v[h](r, s) = values[idx++];
    }
  }
  return v;
}

BlockVector read_block_vector_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return read_block_vector(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_block_vector(std::ostream& out, const BlockVector& v,
                        const std::vector<std::string>& comments) {
  if (!v.is_real()) throw DimensionError("write_block_vector: block-vector is not real");
  out << "btt v1 n=" << v.n() << " m=" << v.m() << '\n';
  for (const auto& c : comments) out << "# " << c << '\n';
  const auto m = static_cast<Eigen::Index>(v.m());
  for (std::size_t h = 0; h < v.n(); ++h) {
    for (Eigen::Index r = 0; r < m; ++r) {
      for (Eigen::Index s = 0; s < m; ++s) {
        if (s > 0) out << ' ';
        out << format_double(v[h](r, s).real());
      }
      out << '\n';
    }
  }
}

void write_block_vector_file(const std::filesystem::path& path, const BlockVector& v,
                             const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  write_block_vector(out, v, comments);
  if (!out) throw ParseError("write to '" + path.string() + "' failed");
}

Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  const auto bad = [&]() -> ParseError {
    return ParseError("not a complex number: '" + std::string(text) + "'");
  };
  if (s.empty()) throw bad();

  const char last = s.back();
  if (last != 'i' && last != 'j') {
    double re = 0.0;
    if (!parse_double(s, re)) throw bad();
    return {re, 0.0};
  }

  const std::string_view body = s.substr(0, s.size() - 1);
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 0;) {
    if ((body[i] == '+' || body[i] == '-') &&
        (i == 0 || (body[i - 1] != 'e' && body[i - 1] != 'E'))) {
      split = i;
      break;
    }
  }
  double re = 0.0;
  std::string_view im_text = body;
  if (split != std::string_view::npos && split > 0) {
    if (!parse_double(body.substr(0, split), re)) throw bad();
    im_text = body.substr(split);
  }
  double im = 0.0;
  if (im_text.empty() || im_text == "+") {
    im = 1.0;
  } else if (im_text == "-") {
    im = -1.0;
  } else if (!parse_double(im_text, im)) {
    throw bad();
  }
  return {re, im};
}

std::string format_complex(Complex z) {
  std::string out = format_double(z.real());
  if (std::signbit(z.imag())) {
    out += format_double(z.imag());
  } else {
    out += '+' + format_double(z.imag());
  }
  return out + 'i';
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace btt
