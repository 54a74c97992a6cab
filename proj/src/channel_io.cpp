// channel_io.cpp — Key-value channel files and number formatting

#include "qfid/channel_io.hpp"

#include "qfid/errors.hpp"

#include <charconv>
#include <cctype>
#include <fstream>
#include <sstream>
#include <system_error>

namespace qfid {

// ------------------------------------------------------------- formatting

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string format_double(double value, int significant_digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, significant_digits);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------- parsing

namespace {

struct Parser {
  std::string source;
  int line_no = 0;

  [[noreturn]] void fail(const std::string& field, const std::string& message) const {
    throw ParseError(source + ":" + std::to_string(line_no) + ": field `" + field + "`: " +
                     message);
  }

  static std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  }

  double parse_number(const std::string& field, const std::string& token) const {
    const std::string t = trim(token);
    double value = 0.0;
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end)
      fail(field, "cannot parse number from `" + t + "`");
    return value;
  }

  long parse_integer(const std::string& field, const std::string& token) const {
    const std::string t = trim(token);
    long value = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
      fail(field, "cannot parse integer from `" + t + "`");
    return value;
  }

  // [a, b, c, ...] of plain numbers
  std::vector<double> parse_number_list(const std::string& field, const std::string& token) const {
    const std::string t = trim(token);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
      fail(field, "expected a bracketed list");
    std::vector<double> out;
    std::string item;
    std::istringstream in(t.substr(1, t.size() - 2));
    while (std::getline(in, item, ',')) out.push_back(parse_number(field, item));
    return out;
  }

  // [(re, im), (re, im), ...]
  std::vector<Complex> parse_complex_list(const std::string& field, const std::string& token) const {
    const std::string t = trim(token);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
      fail(field, "expected a bracketed list of (re, im) pairs");
    std::vector<Complex> out;
    std::size_t pos = 1;
    const std::size_t stop = t.size() - 1;
    while (true) {
      while (pos < stop && (std::isspace(static_cast<unsigned char>(t[pos])) || t[pos] == ','))
        ++pos;
      if (pos >= stop) break;
      if (t[pos] != '(') fail(field, "expected `(` at position " + std::to_string(pos));
      const std::size_t close = t.find(')', pos);
      if (close == std::string::npos) fail(field, "unterminated (re, im) pair");
      const std::string pair = t.substr(pos + 1, close - pos - 1);
      const std::size_t comma = pair.find(',');
      if (comma == std::string::npos) fail(field, "pair needs `re, im`");
      out.emplace_back(parse_number(field, pair.substr(0, comma)),
                       parse_number(field, pair.substr(comma + 1)));
      pos = close + 1;
    }
    return out;
  }
};

}  // namespace

ChannelDescription parse_channel_text(const std::string& text, const std::string& source_name) {
  Parser p{source_name, 0};
  std::string kind;
  std::optional<std::vector<double>> probs;
  std::optional<long> dim;
  std::optional<long> kraus_count;
  std::vector<std::pair<long, std::vector<Complex>>> kraus_entries;

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++p.line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = Parser::trim(raw);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) p.fail("(line)", "expected `key = value`");
    const std::string key = Parser::trim(line.substr(0, eq));
    const std::string value = Parser::trim(line.substr(eq + 1));

    if (key == "kind") {
      kind = value;
    } else if (key == "p") {
      probs = p.parse_number_list("p", value);
    } else if (key == "dim") {
      dim = p.parse_integer("dim", value);
    } else if (key == "kraus_count") {
      kraus_count = p.parse_integer("kraus_count", value);
    } else if (key.rfind("kraus_", 0) == 0) {
      long idx = p.parse_integer(key, key.substr(6));
      kraus_entries.emplace_back(idx, p.parse_complex_list(key, value));
    } else {
      p.fail(key, "unknown key");
    }
  }

  ChannelDescription out;
  if (kind == "pauli") {
    out.kind = ChannelDescription::Kind::pauli;
    if (!probs) { p.line_no = 0; p.fail("p", "missing for kind = pauli"); }
    if (probs->size() != 4) { p.line_no = 0; p.fail("p", "expected exactly 4 probabilities"); }
    double sum = 0.0;
    for (double v : *probs) sum += v;
    if (std::abs(sum - 1.0) > 1e-9) {
      p.line_no = 0;
      p.fail("p", "probabilities sum to " + format_double(sum) + ", expected 1 within 1e-9");
    }
    out.pauli = PauliChannel{{(*probs)[0], (*probs)[1], (*probs)[2], (*probs)[3]}};
  } else if (kind == "kraus") {
    out.kind = ChannelDescription::Kind::kraus;
    if (!dim || *dim < 1) { p.line_no = 0; p.fail("dim", "missing or invalid for kind = kraus"); }
    if (!kraus_count || *kraus_count < 1) {
      p.line_no = 0;
      p.fail("kraus_count", "missing or invalid for kind = kraus");
    }
    out.dim = static_cast<Index>(*dim);
    out.kraus.assign(static_cast<std::size_t>(*kraus_count), Matrix());
    std::vector<bool> seen(static_cast<std::size_t>(*kraus_count), false);
    for (auto& [idx, flat] : kraus_entries) {
      const std::string field = "kraus_" + std::to_string(idx);
      if (idx < 0 || idx >= *kraus_count) { p.line_no = 0; p.fail(field, "index out of range"); }
      if (flat.size() != static_cast<std::size_t>(out.dim * out.dim)) {
        p.line_no = 0;
        p.fail(field, "expected dim*dim = " + std::to_string(out.dim * out.dim) + " entries");
      }
      Matrix m(out.dim, out.dim);
      for (Index r = 0; r < out.dim; ++r)  // row-major on disk
        for (Index c = 0; c < out.dim; ++c)
          m(r, c) = flat[static_cast<std::size_t>(r * out.dim + c)];
      out.kraus[static_cast<std::size_t>(idx)] = std::move(m);
      seen[static_cast<std::size_t>(idx)] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (!seen[i]) { p.line_no = 0; p.fail("kraus_" + std::to_string(i), "missing operator"); }
  } else if (kind.empty()) {
    p.line_no = 0;
    p.fail("kind", "missing (expected `pauli` or `kraus`)");
  } else {
    p.line_no = 0;
    p.fail("kind", "unknown kind `" + kind + "`");
  }
  return out;
}

ChannelDescription read_channel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_channel_text(buf.str(), path);
}

std::string format_channel_text(const ChannelDescription& description) {
  std::ostringstream out;
  if (description.kind == ChannelDescription::Kind::pauli) {
    const auto& p = description.pauli.value().p;
    out << "kind = pauli\n";
    out << "p = [" << format_double(p[0]) << ", " << format_double(p[1]) << ", "
        << format_double(p[2]) << ", " << format_double(p[3]) << "]\n";
  } else {
    out << "kind = kraus\n";
    out << "dim = " << description.dim << "\n";
    out << "kraus_count = " << description.kraus.size() << "\n";
    for (std::size_t i = 0; i < description.kraus.size(); ++i) {
      const Matrix& m = description.kraus[i];
      out << "kraus_" << i << " = [";
      bool first = true;
      for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c) {
          if (!first) out << ", ";
          first = false;
          out << "(" << format_double(m(r, c).real()) << ", " << format_double(m(r, c).imag())
              << ")";
        }
      out << "]\n";
    }
  }
  return out.str();
}

void write_channel_file(const std::string& path, const ChannelDescription& description) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << format_channel_text(description);
}

Channel ChannelDescription::to_channel() const {
  if (kind == Kind::pauli) return qfid::to_channel(pauli.value());
  return Channel::from_kraus(kraus, true);
}

}  // namespace qfid
