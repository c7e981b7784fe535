#include "hyparc/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "hyparc/error.hpp"

namespace hyparc {

std::string to_string(BackendTag tag) {
  switch (tag) {
    case BackendTag::free: return "free";
    case BackendTag::free_abelian: return "free-abelian";
    case BackendTag::free_product: return "free-product";
    case BackendTag::dehn: return "dehn";
    case BackendTag::exact_matrix: return "exact-matrix";
  }
  return "?";
}

std::optional<BackendTag> backend_from_string(std::string_view s) {
  for (auto t : {BackendTag::free, BackendTag::free_abelian, BackendTag::free_product,
                 BackendTag::dehn, BackendTag::exact_matrix})
    if (to_string(t) == s) return t;
  return std::nullopt;
}

Element WordBackend::element(const GroupWord& w) const {
  Element e = identity();
  for (Letter l : w.letters) e = multiply(e, l);
  return e;
}

std::vector<Letter> Presentation::alphabet() const {
  std::vector<Letter> out;
  for (int r = 0; r < 2 * rank(); ++r) out.push_back(letter_from_rank(r));
  return out;
}

namespace {

struct Statement {
  std::string text;
  int line = 0;
  int col = 0;  // column of text[0]
};

[[noreturn]] void syntax_error(int line, int col, const std::string& msg) {
  throw usage_error("syntax error at line " + std::to_string(line) + ", column " +
                    std::to_string(col) + ": " + msg);
}

std::vector<Statement> split_statements(std::string_view text) {
  std::vector<Statement> out;
  Statement cur;
  int line = 1, col = 1;
  bool comment = false;
  auto flush = [&] {
    auto first = cur.text.find_first_not_of(" \t\r");
    if (first != std::string::npos) {
      auto last = cur.text.find_last_not_of(" \t\r");
      cur.col += static_cast<int>(first);
      cur.text = cur.text.substr(first, last - first + 1);
      out.push_back(cur);
    }
    cur = Statement{};
  };
  for (char c : text) {
    if (c == '\n') {
      flush();
      comment = false;
      ++line;
      col = 1;
      continue;
    }
    if (!comment && c == '#') comment = true;
    if (!comment && c == ';') {
      flush();
    } else if (!comment) {
      if (cur.text.empty()) {
        cur.line = line;
        cur.col = col;
      }
      cur.text.push_back(c);
    }
    ++col;
  }
  flush();
  return out;
}

class WordParser {
 public:
  WordParser(const Presentation& p, std::string_view s, int line, int col0)
      : p_(p), s_(s), line_(line), col0_(col0) {}

  GroupWord parse_all() {
    GroupWord w = parse_word();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return w;
  }

  // Parses a whitespace/comma separated word list (relator lines).
  std::vector<GroupWord> parse_list() {
    std::vector<GroupWord> out;
    skip_separators();
    while (pos_ < s_.size()) {
      out.push_back(parse_word());
      std::size_t before = pos_;
      skip_separators();
      if (pos_ == before && pos_ < s_.size())
        fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    syntax_error(line_, col0_ + static_cast<int>(pos_), msg);
  }
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  void skip_separators() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == ','))
      ++pos_;
  }
  bool at_factor_start() const {
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalpha(static_cast<unsigned char>(c)) || c == '[' || c == '(' || c == '.' ||
           c == '*' || c == '1';
  }

  GroupWord parse_word() {
    GroupWord w;
    if (!at_factor_start()) fail(pos_ < s_.size() ? "expected a word" : "unexpected end of input");
    while (at_factor_start()) {
      char c = s_[pos_];
      if (c == '.' || c == '*') {
        ++pos_;
        continue;
      }
      if (c == '1') {  // identity literal
        ++pos_;
        continue;
      }
      GroupWord f = parse_factor();
      w = concat(w, f);
    }
    return w;
  }

  GroupWord parse_factor() {
    GroupWord atom;
    char c = s_[pos_];
    if (c == '[') {
      std::size_t open = pos_;
      ++pos_;
      skip_ws();
      GroupWord x = parse_word();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ',') {
        pos_ = open;
        fail("unbalanced '[' in commutator");
      }
      ++pos_;
      skip_ws();
      if (pos_ >= s_.size()) {
        pos_ = open;
        fail("unbalanced '[' in commutator");
      }
      GroupWord y = parse_word();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ']') {
        pos_ = open;
        fail("unbalanced '[' in commutator");
      }
      ++pos_;
      atom = concat(concat(x, y), concat(inverse(x), inverse(y)));
    } else if (c == '(') {
      std::size_t open = pos_;
      ++pos_;
      skip_ws();
      atom = parse_word();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')') {
        pos_ = open;
        fail("unbalanced '('");
      }
      ++pos_;
    } else {
      atom = parse_generator();
    }
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      bool neg = false;
      if (pos_ < s_.size() && s_[pos_] == '-') {
        neg = true;
        ++pos_;
      }
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        fail("expected integer exponent");
      long n = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        n = n * 10 + (s_[pos_++] - '0');
      GroupWord base = neg ? inverse(atom) : atom;
      GroupWord out;
      for (long i = 0; i < n; ++i) out = concat(out, base);
      return out;
    }
    return atom;
  }

  GroupWord parse_generator() {
    // Longest declared generator name matching at this position.
    int best = -1;
    std::size_t best_len = 0;
    for (int g = 0; g < p_.rank(); ++g) {
      const auto& name = p_.generators[static_cast<std::size_t>(g)];
      if (name.size() > best_len && s_.substr(pos_, name.size()) == name) {
        best = g;
        best_len = name.size();
      }
    }
    if (best >= 0) {
      pos_ += best_len;
      return GroupWord{{static_cast<Letter>(best + 1)}};
    }
    if (p_.case_inverses) {
      char c = s_[pos_];
      std::string lower(1, static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      for (int g = 0; g < p_.rank(); ++g) {
        if (std::isupper(static_cast<unsigned char>(c)) &&
            p_.generators[static_cast<std::size_t>(g)] == lower) {
          ++pos_;
          return GroupWord{{static_cast<Letter>(-(g + 1))}};
        }
      }
    }
    std::size_t end = pos_;
    while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) ++end;
    fail("unknown generator '" + std::string(s_.substr(pos_, std::max<std::size_t>(1, end - pos_))) +
         "'");
  }

  const Presentation& p_;
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
  int col0_;
};

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

// Returns the unordered generator pair if r is a commutator of two distinct
// generators (in any rotation or orientation).
std::optional<std::pair<int, int>> commutator_pair(const GroupWord& r) {
  if (r.size() != 4) return std::nullopt;
  const auto& l = r.letters;
  if (l[2] != inverse(l[0]) || l[3] != inverse(l[1])) return std::nullopt;
  int a = generator_of(l[0]), b = generator_of(l[1]);
  if (a == b) return std::nullopt;
  return std::make_pair(std::min(a, b), std::max(a, b));
}

// Commuting blocks if every relator is a generator commutator and each block
// is a clique; nullopt otherwise.
std::optional<std::vector<std::vector<int>>> abelian_blocks(const Presentation& p) {
  std::set<std::pair<int, int>> pairs;
  for (const auto& r : p.relators) {
    auto c = commutator_pair(r);
    if (!c) return std::nullopt;
    pairs.insert(*c);
  }
  std::vector<int> parent(static_cast<std::size_t>(p.rank()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (auto [a, b] : pairs) parent[static_cast<std::size_t>(find(a))] = find(b);
  std::map<int, std::vector<int>> blocks;
  for (int g = 0; g < p.rank(); ++g) blocks[find(g)].push_back(g);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : blocks) {
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        if (!pairs.count({members[i], members[j]})) return std::nullopt;
    out.push_back(members);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void attach_backend(Presentation& p, std::optional<BackendTag> requested) {
  auto blocks = abelian_blocks(p);
  auto tag_for_blocks = [&](const std::vector<std::vector<int>>& b) {
    if (p.relators.empty()) return BackendTag::free;
    if (b.size() == 1) return BackendTag::free_abelian;
    return BackendTag::free_product;
  };
  BackendTag tag;
  if (!requested) {
    if (blocks) {
      tag = tag_for_blocks(*blocks);
    } else {
      double ratio = max_piece_ratio(p.relators);
      if (!(ratio < 1.0 / 6.0))
        throw usage_error("no exact backend: presentation fails the C'(1/6) piece check (max piece ratio " +
                          std::to_string(ratio) + " >= 1/6)");
      tag = BackendTag::dehn;
    }
  } else {
    tag = *requested;
  }
  switch (tag) {
    case BackendTag::free:
    case BackendTag::free_abelian:
    case BackendTag::free_product: {
      if (!blocks)
        throw usage_error("backend " + to_string(tag) +
                          " requires relators to be generator commutators forming cliques");
      if (tag_for_blocks(*blocks) != tag && !(tag == BackendTag::free_product))
        throw usage_error("backend " + to_string(tag) + " does not match the relators (detected " +
                          to_string(tag_for_blocks(*blocks)) + ")");
      p.backend = tag;
      p.engine = make_free_product_backend(p.rank(), *blocks, tag);
      return;
    }
    case BackendTag::dehn: {
      double ratio = max_piece_ratio(p.relators);
      if (p.relators.empty() || !(ratio < 1.0 / 6.0))
        throw usage_error("backend dehn requires a C'(1/6) presentation (max piece ratio " +
                          std::to_string(ratio) + " >= 1/6)");
      p.backend = tag;
      p.engine = make_dehn_backend(p, 5'000'000);
      return;
    }
    case BackendTag::exact_matrix:
      p.backend = tag;
      p.engine = make_figure_eight_backend(p);
      return;
  }
}

}  // namespace

GroupWord Presentation::parse_word(std::string_view text) const {
  return WordParser(*this, text, 1, 1).parse_all();
}

std::string Presentation::format(const GroupWord& w) const {
  if (w.empty()) return "1";
  bool single = std::all_of(generators.begin(), generators.end(),
                            [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single && i) out += '.';
    Letter l = w.letters[i];
    out += generators[static_cast<std::size_t>(generator_of(l))];
    if (l < 0) out += "^-1";
  }
  return out;
}

Presentation parse_presentation(std::string_view text) {
  Presentation p;
  auto statements = split_statements(text);
  std::optional<BackendTag> requested;
  bool saw_gens = false;

  // Header pass: generators, inverse convention, backend.
  for (const auto& st : statements) {
    auto sp = st.text.find_first_of(" \t");
    std::string kw = st.text.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : st.text.substr(sp + 1);
    if (kw == "gens") {
      if (saw_gens) syntax_error(st.line, st.col, "duplicate 'gens' line");
      saw_gens = true;
      for (auto& g : split_ws(rest)) {
        if (!std::isalpha(static_cast<unsigned char>(g[0])) ||
            !std::all_of(g.begin(), g.end(),
                         [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
          syntax_error(st.line, st.col, "invalid generator symbol '" + g + "'");
        if (std::find(p.generators.begin(), p.generators.end(), g) != p.generators.end())
          syntax_error(st.line, st.col, "duplicate generator '" + g + "'");
        p.generators.push_back(g);
      }
    } else if (kw == "inverses") {
      auto v = split_ws(rest);
      if (v.size() != 1 || (v[0] != "case" && v[0] != "caret"))
        syntax_error(st.line, st.col, "expected 'inverses case' or 'inverses caret'");
      p.case_inverses = v[0] == "case";
    } else if (kw == "backend") {
      auto v = split_ws(rest);
      if (v.size() != 1 || !backend_from_string(v[0]))
        syntax_error(st.line, st.col, "unknown backend '" + rest + "'");
      requested = backend_from_string(v[0]);
    } else if (kw != "rels" && kw != "parabolic" && kw != "hypsub") {
      syntax_error(st.line, st.col, "unknown keyword '" + kw + "'");
    }
  }
  if (!saw_gens) throw usage_error("syntax error: missing 'gens' line");
  if (p.case_inverses)
    for (auto& g : p.generators)
      if (g.size() != 1 || !std::islower(static_cast<unsigned char>(g[0])))
        throw usage_error("'inverses case' requires single lowercase generator symbols");

  for (const auto& st : statements) {
    auto sp = st.text.find_first_of(" \t");
    std::string kw = st.text.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : st.text.substr(sp + 1);
    int col = st.col + static_cast<int>(kw.size()) + 1;
    if (kw == "rels") {
      for (auto& r : WordParser(p, rest, st.line, col).parse_list()) {
        GroupWord c = cyclic_reduce(r);
        if (c.empty()) syntax_error(st.line, st.col, "relator reduces to the empty word");
        p.relators.push_back(c);
      }
    } else if (kw == "parabolic" || kw == "hypsub") {
      std::vector<int> subset;
      for (auto& g : split_ws(rest)) {
        auto it = std::find(p.generators.begin(), p.generators.end(), g);
        if (it == p.generators.end())
          syntax_error(st.line, st.col, "peripheral symbol '" + g + "' is not a generator");
        int idx = static_cast<int>(it - p.generators.begin());
        if (std::find(subset.begin(), subset.end(), idx) == subset.end()) subset.push_back(idx);
      }
      if (subset.empty()) syntax_error(st.line, st.col, "empty peripheral subgroup");
      std::sort(subset.begin(), subset.end());
      (kw == "parabolic" ? p.parabolic : p.hyperbolic).push_back(subset);
    }
  }
  attach_backend(p, requested);
  return p;
}

Presentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open presentation file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

GroupWord reduce(const Presentation& p, const GroupWord& w) {
  for (Letter l : w.letters)
    if (l == 0 || generator_of(l) >= p.rank())
      throw usage_error("unknown generator in word");
  return p.engine->normal_form(w);
}

std::vector<GroupWord> symmetrize(const std::vector<GroupWord>& relators) {
  std::set<std::vector<Letter>> seen;
  std::vector<GroupWord> out;
  for (const auto& r0 : relators) {
    for (const GroupWord& r : {r0, inverse(r0)}) {
      for (std::size_t s = 0; s < r.size(); ++s) {
        std::vector<Letter> rot(r.letters.begin() + static_cast<long>(s), r.letters.end());
        rot.insert(rot.end(), r.letters.begin(), r.letters.begin() + static_cast<long>(s));
        if (seen.insert(rot).second) out.push_back(GroupWord{rot});
      }
    }
  }
  return out;
}

double max_piece_ratio(const std::vector<GroupWord>& relators) {
  auto sym = symmetrize(relators);
  double worst = 0.0;
  for (std::size_t i = 0; i < sym.size(); ++i) {
    for (std::size_t j = 0; j < sym.size(); ++j) {
      if (i == j) continue;
      const auto& a = sym[i].letters;
      const auto& b = sym[j].letters;
      std::size_t k = 0;
      while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
      worst = std::max(worst, static_cast<double>(k) / static_cast<double>(a.size()));
    }
  }
  return worst;
}

GroupWord dehn_reduce(const std::vector<GroupWord>& sym, const GroupWord& w0) {
  GroupWord w = free_reduce(w0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t start = 0; start < w.size() && !changed; ++start) {
      for (const auto& r : sym) {
        std::size_t k = 0;
        while (start + k < w.size() && k < r.size() && w.letters[start + k] == r.letters[k]) ++k;
        if (2 * k > r.size()) {
          // w[start, start+k) = prefix u of r = u v; replace u by v^-1.
          GroupWord v{{r.letters.begin() + static_cast<long>(k), r.letters.end()}};
          GroupWord repl = inverse(v);
          GroupWord next;
          next.letters.assign(w.letters.begin(), w.letters.begin() + static_cast<long>(start));
          next.letters.insert(next.letters.end(), repl.letters.begin(), repl.letters.end());
          next.letters.insert(next.letters.end(), w.letters.begin() + static_cast<long>(start + k),
                              w.letters.end());
          w = free_reduce(next);
          changed = true;
          break;
        }
      }
    }
  }
  return w;
}

}  // namespace hyparc
