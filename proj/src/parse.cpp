#include "crn/parse.hpp"

#include <charconv>
#include <climits>
#include <fstream>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "crn/error.hpp"

namespace crn {

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::BadToken: return "BadToken";
    case ParseErrorKind::NegativeCoefficient: return "NegativeCoefficient";
    case ParseErrorKind::MissingRate: return "MissingRate";
    case ParseErrorKind::DuplicateSpeciesDecl: return "DuplicateSpeciesDecl";
    case ParseErrorKind::SelfLoop: return "SelfLoop";
    case ParseErrorKind::UndeclaredSpecies: return "UndeclaredSpecies";
    case ParseErrorKind::OrphanSpecies: return "OrphanSpecies";
    case ParseErrorKind::NonPositiveRate: return "NonPositiveRate";
    case ParseErrorKind::EmptyNetwork: return "EmptyNetwork";
  }
  return "Unknown";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                         std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

namespace {

bool ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }
bool space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

struct Use {
  std::string name;
  std::size_t line, column;
};

struct RawReaction {
  std::vector<std::pair<std::string, long long>> lhs, rhs;
  double rate;
  std::size_t line, column;
};

// Cursor over one line with the comment already cut off.
class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line_no) : s_(text), line_(line_no) {}

  [[noreturn]] void fail(ParseErrorKind k, std::size_t pos, const std::string& msg) const {
    throw ParseError(k, line_, pos + 1, msg);
  }

  void skip_ws() {
    while (p_ < s_.size() && space(s_[p_])) ++p_;
  }
  bool at_end() {
    skip_ws();
    return p_ >= s_.size();
  }
  std::size_t pos() const { return p_; }
  char peek() const { return p_ < s_.size() ? s_[p_] : '\0'; }

  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(p_, tok.size()) == tok) {
      p_ += tok.size();
      return true;
    }
    return false;
  }

  std::string identifier() {
    skip_ws();
    if (!ident_start(peek())) fail(ParseErrorKind::BadToken, p_, "expected a species name");
    const std::size_t b = p_;
    while (p_ < s_.size() && ident_char(s_[p_])) ++p_;
    return std::string(s_.substr(b, p_ - b));
  }

  std::vector<std::pair<std::string, long long>> complex(std::vector<Use>& uses) {
    std::vector<std::pair<std::string, long long>> terms;
    skip_ws();
    if (peek() == '0') {
      std::size_t q = p_ + 1;
      while (q < s_.size() && space(s_[q])) ++q;
      if (q >= s_.size() || !(digit(s_[q]) || ident_start(s_[q]))) {
        ++p_;
        return terms;
      }
    }
    while (true) {
      skip_ws();
      long long coef = 1;
      if (peek() == '-') fail(ParseErrorKind::NegativeCoefficient, p_, "coefficients must be nonnegative");
      if (digit(peek())) {
        const std::size_t b = p_;
        while (p_ < s_.size() && digit(s_[p_])) ++p_;
        int v = 0;
        auto [ptr, ec] = std::from_chars(s_.data() + b, s_.data() + p_, v);
        if (ec != std::errc() || ptr != s_.data() + p_) fail(ParseErrorKind::BadToken, b, "coefficient out of range");
        if (v == 0) fail(ParseErrorKind::BadToken, b, "zero coefficient");
        coef = v;
      }
      skip_ws();
      const std::size_t name_pos = p_;
      std::string name = identifier();
      uses.push_back({name, line_, name_pos + 1});
      bool merged = false;
      for (auto& t : terms)
        if (t.first == name) {
          t.second += coef;
          if (t.second > INT_MAX) fail(ParseErrorKind::BadToken, name_pos, "coefficient out of range");
          merged = true;
        }
      if (!merged) terms.emplace_back(std::move(name), coef);
      skip_ws();
      if (peek() == '+') {
        ++p_;
        continue;
      }
      return terms;
    }
  }

  double rate() {
    skip_ws();
    const std::size_t b = p_;
    while (p_ < s_.size() && (digit(s_[p_]) || s_[p_] == '.' || s_[p_] == 'e' || s_[p_] == 'E' || s_[p_] == '+' ||
                              s_[p_] == '-'))
      ++p_;
    if (p_ == b) {
      if (p_ >= s_.size()) fail(ParseErrorKind::MissingRate, p_, "missing rate constant");
      fail(ParseErrorKind::BadToken, p_, "expected a rate constant");
    }
    std::size_t first = b;
    if (s_[first] == '+') ++first;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s_.data() + first, s_.data() + p_, v);
    if (ec != std::errc() || ptr != s_.data() + p_) fail(ParseErrorKind::BadToken, b, "malformed rate constant");
    if (!(v > 0.0)) fail(ParseErrorKind::NonPositiveRate, b, "rate constants must be positive");
    return v;
  }

 private:
  std::string_view s_;
  std::size_t line_;
  std::size_t p_ = 0;
};

}  // namespace

NetworkDocument parse_text(std::string_view source, std::string source_name) {
  std::vector<std::string_view> lines;
  {
    std::size_t b = 0;
    while (true) {
      const std::size_t e = source.find('\n', b);
      if (e == std::string_view::npos) {
        lines.push_back(source.substr(b));
        break;
      }
      lines.push_back(source.substr(b, e - b));
      b = e + 1;
    }
  }

  std::optional<std::vector<Use>> declared;
  std::vector<Use> uses;
  std::vector<RawReaction> raw;
  std::map<std::string, std::string> meta;

  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view text = lines[ln];
    if (auto h = text.find('#'); h != std::string_view::npos) text = text.substr(0, h);
    LineParser lp(text, ln + 1);
    if (lp.at_end()) continue;
    const std::size_t first = lp.pos();

    if (lp.peek() == '@') {
      lp.accept("@");
      const std::size_t kpos = lp.pos();
      std::string key = lp.identifier();
      if (!lp.accept(":")) lp.fail(ParseErrorKind::BadToken, lp.pos(), "expected ':' after metadata key");
      lp.skip_ws();
      std::string_view value = text.substr(lp.pos());
      while (!value.empty() && space(value.back())) value.remove_suffix(1);
      if (meta.count(key)) lp.fail(ParseErrorKind::BadToken, kpos, "duplicate metadata key '" + key + "'");
      meta.emplace(std::move(key), std::string(value));
      continue;
    }

    {
      LineParser probe(text, ln + 1);
      probe.skip_ws();
      if (ident_start(probe.peek())) {
        const std::string word = probe.identifier();
        if (word == "species" && probe.accept(":")) {
          if (declared) lp.fail(ParseErrorKind::DuplicateSpeciesDecl, first, "second species declaration");
          declared.emplace();
          while (!probe.at_end()) {
            const std::size_t npos = probe.pos();
            std::string name = probe.identifier();
            for (const auto& d : *declared)
              if (d.name == name) probe.fail(ParseErrorKind::DuplicateSpeciesDecl, npos, "species '" + name + "' declared twice");
            declared->push_back({std::move(name), ln + 1, npos + 1});
            probe.accept(",");
          }
          continue;
        }
      }
    }

    RawReaction rr;
    rr.line = ln + 1;
    rr.column = first + 1;
    rr.lhs = lp.complex(uses);
    bool reversible = false;
    if (lp.accept("<->"))
      reversible = true;
    else if (!lp.accept("->"))
      lp.fail(ParseErrorKind::BadToken, lp.pos(), "expected '->' or '<->'");
    rr.rhs = lp.complex(uses);
    if (lp.at_end()) lp.fail(ParseErrorKind::MissingRate, lp.pos(), "missing ': rate'");
    if (!lp.accept(":")) lp.fail(ParseErrorKind::BadToken, lp.pos(), "expected ':' before rate");
    rr.rate = lp.rate();
    double reverse_rate = 0.0;
    if (reversible) {
      if (!lp.accept(",")) {
        if (lp.at_end()) lp.fail(ParseErrorKind::MissingRate, lp.pos(), "reversible reaction needs two rates");
        lp.fail(ParseErrorKind::BadToken, lp.pos(), "expected ','");
      }
      reverse_rate = lp.rate();
    }
    if (!lp.at_end()) lp.fail(ParseErrorKind::BadToken, lp.pos(), "unexpected trailing input");

    auto same = [](auto a, auto b) {
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      return a == b;
    };
    if (same(rr.lhs, rr.rhs)) lp.fail(ParseErrorKind::SelfLoop, first, "reactant and product complexes coincide");
    raw.push_back(rr);
    if (reversible) {
      RawReaction back = rr;
      std::swap(back.lhs, back.rhs);
      back.rate = reverse_rate;
      raw.push_back(std::move(back));
    }
  }

  const std::size_t last_line = lines.size();
  const std::size_t last_col = lines.back().size() + 1;
  if (raw.empty()) throw ParseError(ParseErrorKind::EmptyNetwork, last_line, last_col, "no reactions");

  std::vector<std::string> species;
  auto find = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t j = 0; j < species.size(); ++j)
      if (species[j] == name) return j;
    return std::nullopt;
  };
  if (declared) {
    for (const auto& d : *declared) species.push_back(d.name);
    for (const auto& u : uses)
      if (!find(u.name)) throw ParseError(ParseErrorKind::UndeclaredSpecies, u.line, u.column, "species '" + u.name + "' not declared");
    for (const auto& d : *declared) {
      bool used = false;
      for (const auto& u : uses) used = used || u.name == d.name;
      if (!used) throw ParseError(ParseErrorKind::OrphanSpecies, d.line, d.column, "species '" + d.name + "' is never used");
    }
  } else {
    for (const auto& u : uses)
      if (!find(u.name)) species.push_back(u.name);
  }

  const std::size_t n = species.size();
  std::vector<Reaction> reactions;
  for (const auto& rr : raw) {
    auto build = [&](const std::vector<std::pair<std::string, long long>>& terms) {
      std::vector<int> e(n, 0);
      for (const auto& [name, c] : terms) e[*find(name)] = static_cast<int>(c);
      return Complex(std::move(e));
    };
    reactions.push_back({build(rr.lhs), build(rr.rhs), rr.rate});
  }
  try {
    return NetworkDocument{Network(std::move(species), std::move(reactions)), std::move(source_name), std::move(meta)};
  } catch (const Error& e) {
    throw ParseError(ParseErrorKind::BadToken, 1, 1, e.what());
  }
}

NetworkDocument parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

std::string format_complex(const Network& net, const Complex& c) {
  std::string out;
  for (std::size_t j = 0; j < net.num_species(); ++j) {
    if (c[j] == 0) continue;
    if (!out.empty()) out += " + ";
    if (c[j] != 1) out += std::to_string(c[j]) + " ";
    out += net.species()[j];
  }
  return out.empty() ? "0" : out;
}

std::string format_body(const Network& net, const std::map<std::string, std::string>& meta) {
  std::string out = "species:";
  for (const auto& s : net.species()) out += " " + s;
  out += "\n";
  for (const auto& [k, v] : meta) out += "@" + k + ": " + v + "\n";
  for (const auto& r : net.reactions())
    out += format_complex(net, r.reactant) + " -> " + format_complex(net, r.product) + " : " + format_double(r.rate) + "\n";
  return out;
}

}  // namespace

std::string format_network(const NetworkDocument& doc) { return format_body(doc.network, doc.metadata); }
std::string format_network(const Network& net) { return format_body(net, {}); }

nlohmann::ordered_json to_json(const NetworkDocument& doc) {
  const auto& net = doc.network;
  auto side = [&](const Complex& c) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (std::size_t j = 0; j < net.num_species(); ++j)
      if (c[j] != 0) o[net.species()[j]] = c[j];
    return o;
  };
  nlohmann::ordered_json rs = nlohmann::ordered_json::array();
  for (const auto& r : net.reactions())
    rs.push_back({{"reactant", side(r.reactant)}, {"product", side(r.product)}, {"rate", r.rate}});
  nlohmann::ordered_json j;
  j["network"] = {{"species", net.species()}, {"reactions", rs}};
  j["source_name"] = doc.source_name;
  j["metadata"] = doc.metadata;
  return j;
}

NetworkDocument document_from_json(const nlohmann::json& j) {
  try {
    const auto& jn = j.at("network");
    std::vector<std::string> species = jn.at("species").get<std::vector<std::string>>();
    const std::size_t n = species.size();
    auto side = [&](const nlohmann::json& o) {
      std::vector<int> e(n, 0);
      for (auto it = o.begin(); it != o.end(); ++it) {
        std::size_t idx = n;
        for (std::size_t s = 0; s < n; ++s)
          if (species[s] == it.key()) idx = s;
        if (idx == n) throw Error(ErrorKind::InvalidArgument, "unknown species '" + it.key() + "'");
        e[idx] = it.value().get<int>();
      }
      return Complex(std::move(e));
    };
    std::vector<Reaction> reactions;
    for (const auto& r : jn.at("reactions"))
      reactions.push_back({side(r.at("reactant")), side(r.at("product")), r.at("rate").get<double>()});
    NetworkDocument doc{Network(std::move(species), std::move(reactions)), j.value("source_name", std::string()), {}};
    if (j.contains("metadata")) doc.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed network JSON: ") + e.what());
  }
}

}  // namespace crn
