#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "mmd2d/milp.hpp"

namespace mmd2d {

namespace {

constexpr std::size_t kMaxLine = 200;

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Appends tokens to rows of at most kMaxLine characters.
class LineWriter {
 public:
  explicit LineWriter(std::ostringstream& out) : out_(out) {}
  void token(const std::string& tok) {
    if (col_ > 1 && col_ + 1 + tok.size() > kMaxLine) {
      out_ << "\n  ";
      col_ = 2;
    } else if (col_ > 0) {
      out_ << ' ';
      ++col_;
    }
    out_ << tok;
    col_ += tok.size();
  }
  void start() {
    out_ << ' ';
    col_ = 1;
  }
  void end() {
    out_ << '\n';
    col_ = 0;
  }

 private:
  std::ostringstream& out_;
  std::size_t col_ = 0;
};

void write_terms(LineWriter& w, const std::vector<Term>& terms, const std::vector<Variable>& vars) {
  bool first = true;
  for (const auto& t : terms) {
    const double mag = std::abs(t.coef);
    const bool negative = t.coef < 0.0;
    if (!first || negative) {
      w.token(negative ? "-" : "+");
    }
    if (mag != 1.0) {
      w.token(number(mag));
    }
    w.token(vars[t.var].name);
    first = false;
  }
  if (terms.empty()) {
    w.token("0");
  }
}

const char* sense_token(Sense s) {
  switch (s) {
    case Sense::LessEq: return "<=";
    case Sense::GreaterEq: return ">=";
    case Sense::Equal: return "=";
  }
  return "=";
}

}  // namespace

std::string export_lp(const MilpInstance& inst) {
  std::ostringstream out;
  LineWriter w(out);
  out << "\\ mmd2d scheduling instance: " << inst.layout.n() << " UEs, K = "
      << inst.layout.pairings << ", d = " << inst.demand << ", T_bar = " << inst.t_bar << '\n';
  for (const auto& warning : inst.warnings) {
    out << "\\ warning: " << warning << '\n';
  }
  out << "Minimize\n";
  w.start();
  w.token("obj:");
  write_terms(w, inst.objective, inst.variables);
  w.end();
  out << "Subject To\n";
  for (const auto& row : inst.constraints) {
    w.start();
    w.token(row.name + ":");
    write_terms(w, row.terms, inst.variables);
    w.token(sense_token(row.sense));
    w.token(number(row.rhs));
    w.end();
  }
  out << "Bounds\n";
  for (const auto& var : inst.variables) {
    if (std::isinf(var.upper)) {
      out << ' ' << var.name << " >= " << number(var.lower) << '\n';
    } else {
      out << ' ' << number(var.lower) << " <= " << var.name << " <= " << number(var.upper)
          << '\n';
    }
  }
  for (const auto& [kind, header] : {std::pair{VarKind::Integer, "Generals"},
                                      std::pair{VarKind::Binary, "Binaries"}}) {
    bool any = false;
    for (const auto& var : inst.variables) {
      if (var.kind != kind) {
        continue;
      }
      if (!any) {
        out << header << '\n';
        w.start();
        any = true;
      }
      w.token(var.name);
    }
    if (any) {
      w.end();
    }
  }
  out << "End\n";
  return out.str();
}

std::optional<int> LpModel::find(const std::string& name) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].name == name) {
      return static_cast<int>(i);
    }
  }
  return std::nullopt;
}

namespace {

enum class Section { None, Objective, Constraints, Bounds, Binaries, Generals, End };

std::string lower(std::string s) {
  for (auto& c : s) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return s;
}

std::optional<Section> section_header(const std::string& line) {
  const std::string s = lower(line);
  if (s == "minimize" || s == "minimise" || s == "min" || s == "maximize" || s == "maximise" ||
      s == "max") {
    return Section::Objective;
  }
  if (s == "subject to" || s == "such that" || s == "st" || s == "s.t.") {
    return Section::Constraints;
  }
  if (s == "bounds" || s == "bound") {
    return Section::Bounds;
  }
  if (s == "binaries" || s == "binary" || s == "bin") {
    return Section::Binaries;
  }
  if (s == "generals" || s == "general" || s == "gen") {
    return Section::Generals;
  }
  if (s == "end") {
    return Section::End;
  }
  return std::nullopt;
}

bool is_number(const std::string& tok) {
  if (tok.empty()) {
    return false;
  }
  char* end = nullptr;
  std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size();
}

bool is_sense(const std::string& tok) {
  return tok == "<=" || tok == ">=" || tok == "=" || tok == "<" || tok == ">" || tok == "=<" ||
         tok == "=>";
}

Sense to_sense(const std::string& tok) {
  if (tok == "<=" || tok == "<" || tok == "=<") {
    return Sense::LessEq;
  }
  if (tok == ">=" || tok == ">" || tok == "=>") {
    return Sense::GreaterEq;
  }
  return Sense::Equal;
}

struct Token {
  std::string text;
  int line = 0;
};

// Splits whitespace tokens and detaches leading signs ("-3" stays a number).
std::vector<Token> tokenize(const std::string& body, int line) {
  std::vector<Token> out;
  std::istringstream in(body);
  std::string tok;
  while (in >> tok) {
    while (tok.size() > 1 && (tok[0] == '+' || tok[0] == '-') && !is_number(tok)) {
      out.push_back({tok.substr(0, 1), line});
      tok.erase(0, 1);
    }
    out.push_back({tok, line});
  }
  return out;
}

class Parser {
 public:
  LpModel model;

  int variable(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) {
      return it->second;
    }
    const int id = static_cast<int>(model.variables.size());
    model.variables.push_back({name, VarKind::Continuous, 0.0,
                               std::numeric_limits<double>::infinity()});
    index_.emplace(name, id);
    return id;
  }

  [[noreturn]] static void fail(int line, const std::string& what) {
    throw std::runtime_error("LP parse error at line " + std::to_string(line) + ": " + what);
  }

  // Parses "[name:] terms [sense rhs]" from `toks` starting at `pos`.
  Constraint linear(const std::vector<Token>& toks, std::size_t& pos, bool expect_sense) {
    Constraint row;
    if (pos < toks.size() && toks[pos].text.back() == ':') {
      row.name = toks[pos].text.substr(0, toks[pos].text.size() - 1);
      ++pos;
    } else if (pos + 1 < toks.size() && toks[pos + 1].text == ":") {
      row.name = toks[pos].text;
      pos += 2;
    }
    double sign = 1.0;
    double coef = 1.0;
    bool have_coef = false;
    while (pos < toks.size() && !is_sense(toks[pos].text)) {
      const auto& tok = toks[pos].text;
      if (tok == "+" || tok == "-") {
        sign = tok == "-" ? -1.0 : 1.0;
      } else if (is_number(tok)) {
        if (have_coef) {
          fail(toks[pos].line, "two consecutive coefficients");
        }
        coef = std::strtod(tok.c_str(), nullptr);
        have_coef = true;
        // A bare constant objective ("obj: 0") ends here.
        if (!expect_sense && pos + 1 == toks.size()) {
          ++pos;
          return row;
        }
      } else {
        row.terms.push_back({variable(tok), sign * coef});
        sign = 1.0;
        coef = 1.0;
        have_coef = false;
      }
      ++pos;
    }
    if (expect_sense) {
      if (pos >= toks.size()) {
        fail(toks.back().line, "constraint without sense and right-hand side");
      }
      row.sense = to_sense(toks[pos].text);
      ++pos;
      double rhs_sign = 1.0;
      if (pos < toks.size() && (toks[pos].text == "+" || toks[pos].text == "-")) {
        rhs_sign = toks[pos].text == "-" ? -1.0 : 1.0;
        ++pos;
      }
      if (pos >= toks.size() || !is_number(toks[pos].text)) {
        fail(pos < toks.size() ? toks[pos].line : toks.back().line, "expected numeric rhs");
      }
      row.rhs = rhs_sign * std::strtod(toks[pos].text.c_str(), nullptr);
      ++pos;
    }
    return row;
  }

  void bound(const std::vector<Token>& toks) {
    auto num = [](const std::string& s) {
      const std::string l = lower(s);
      if (l == "inf" || l == "+inf" || l == "infinity" || l == "+infinity") {
        return std::numeric_limits<double>::infinity();
      }
      if (l == "-inf" || l == "-infinity") {
        return -std::numeric_limits<double>::infinity();
      }
      return std::strtod(s.c_str(), nullptr);
    };
    std::vector<std::string> t;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      // Re-attach detached signs to numbers.
      if ((toks[i].text == "-" || toks[i].text == "+") && i + 1 < toks.size()) {
        t.push_back(toks[i].text + toks[i + 1].text);
        ++i;
      } else {
        t.push_back(toks[i].text);
      }
    }
    const int line = toks.front().line;
    if (t.size() == 2 && lower(t[1]) == "free") {
      auto& v = model.variables[variable(t[0])];
      v.lower = -std::numeric_limits<double>::infinity();
      v.upper = std::numeric_limits<double>::infinity();
    } else if (t.size() == 5 && is_sense(t[1]) && is_sense(t[3])) {
      auto& v = model.variables[variable(t[2])];
      v.lower = num(t[0]);
      v.upper = num(t[4]);
    } else if (t.size() == 3 && is_sense(t[1])) {
      const bool var_first = !is_number(t[0]) && lower(t[0]).find("inf") == std::string::npos;
      auto& v = model.variables[variable(var_first ? t[0] : t[2])];
      const double value = num(var_first ? t[2] : t[0]);
      Sense s = to_sense(t[1]);
      if (!var_first && s != Sense::Equal) {
        s = s == Sense::LessEq ? Sense::GreaterEq : Sense::LessEq;
      }
      if (s == Sense::Equal) {
        v.lower = v.upper = value;
      } else if (s == Sense::GreaterEq) {
        v.lower = value;
      } else {
        v.upper = value;
      }
    } else {
      fail(line, "unrecognized bound");
    }
  }

 private:
  std::unordered_map<std::string, int> index_;
};

}  // namespace

LpModel parse_lp(const std::string& text) {
  Parser parser;
  Section section = Section::None;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::vector<Token> pending;  // tokens of the statement being assembled
  bool objective_seen = false;

  auto flush = [&]() {
    if (pending.empty()) {
      return;
    }
    std::size_t pos = 0;
    switch (section) {
      case Section::Objective: {
        if (objective_seen) {
          Parser::fail(pending.front().line, "more than one objective");
        }
        parser.model.objective = parser.linear(pending, pos, false).terms;
        objective_seen = true;
        break;
      }
      case Section::Constraints:
        while (pos < pending.size()) {
          parser.model.constraints.push_back(parser.linear(pending, pos, true));
        }
        break;
      default:
        Parser::fail(pending.front().line, "unexpected tokens");
    }
    pending.clear();
  };

  while (std::getline(in, raw)) {
    ++line_no;
    if (auto c = raw.find('\\'); c != std::string::npos) {
      raw.erase(c);
    }
    std::string trimmed = raw;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
    trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
    if (trimmed.empty()) {
      continue;
    }
    if (auto header = section_header(trimmed)) {
      flush();
      section = *header;
      if (section == Section::Objective) {
        parser.model.minimize = lower(trimmed).rfind("min", 0) == 0;
      }
      if (section == Section::End) {
        break;
      }
      continue;
    }
    auto toks = tokenize(trimmed, line_no);
    switch (section) {
      case Section::Objective:
      case Section::Constraints:
        pending.insert(pending.end(), toks.begin(), toks.end());
        break;
      case Section::Bounds:
        parser.bound(toks);
        break;
      case Section::Binaries:
      case Section::Generals:
        for (const auto& t : toks) {
          auto& v = parser.model.variables[parser.variable(t.text)];
          if (section == Section::Binaries) {
            v.kind = VarKind::Binary;
            v.lower = std::max(v.lower, 0.0);
            v.upper = std::min(v.upper, 1.0);
          } else {
            v.kind = VarKind::Integer;
          }
        }
        break;
      case Section::None:
      case Section::End:
        Parser::fail(line_no, "content outside any section");
    }
  }
  flush();
  if (!objective_seen) {
    throw std::runtime_error("LP parse error: no objective section");
  }
  return parser.model;
}

}  // namespace mmd2d
