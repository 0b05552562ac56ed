// xrl/yaml.cpp - Line-oriented block parser for the YAML subset XRL uses.
//
// Supported: block mappings and sequences, plain/single/double-quoted
// scalars, comments, anchors (&name) and aliases (*name), and one-line flow
// collections ([..], {..}). Aliases must appear after their anchor; anchors
// may not be redeclared. Unsupported constructs (block scalars, directives,
// multiple documents, nested flow collections) fail with located errors
// rather than parsing loosely.
#include "xrl/yaml.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace xrl
{

const YamlNode * YamlNode::find(std::string_view key) const
{
  for (const auto & e : entries)
    if (e.key == key) return e.value.get();
  return nullptr;
}

const YamlNode & deref(const YamlNode & n)
{
  const YamlNode * cur = &n;
  while (cur->kind == YamlKind::Alias) cur = cur->target.get();
  return *cur;
}

int yaml_tree_depth(const YamlNode & n)
{
  switch (n.kind) {
    case YamlKind::Scalar:
    case YamlKind::Alias:
      return 0;
    case YamlKind::Sequence: {
      int best = 0;
      for (const auto & it : n.items) best = std::max(best, yaml_tree_depth(*it));
      return 1 + best;
    }
    case YamlKind::Mapping: {
      int best = 0;
      for (const auto & e : n.entries) best = std::max(best, yaml_tree_depth(*e.value));
      return 1 + best;
    }
  }
  return 0;
}

int yaml_alias_count(const YamlNode & n)
{
  switch (n.kind) {
    case YamlKind::Scalar: return 0;
    case YamlKind::Alias: return 1;
    case YamlKind::Sequence: {
      int total = 0;
      for (const auto & it : n.items) total += yaml_alias_count(*it);
      return total;
    }
    case YamlKind::Mapping: {
      int total = 0;
      for (const auto & e : n.entries) total += yaml_alias_count(*e.value);
      return total;
    }
  }
  return 0;
}

namespace
{

using NodePtr = std::shared_ptr<YamlNode>;

struct Line
{
  int number = 0;
  int indent = 0;      // leading spaces
  std::string content;  // comment-stripped, right-trimmed
  bool blank = true;
};

struct ParseError
{
  Diagnostic diag;
};

[[noreturn]] void fail(std::string_view code, std::string message, int line, int col)
{
  throw ParseError{make_diag(code, std::move(message), {line, col})};
}

bool is_ident_start(char c)
{
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c)
{
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_anchor_char(char c)
{
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

// Cut an end-of-line comment: '#' outside quotes, at content start or after
// whitespace.
std::string strip_comment(const std::string & s, int line_no)
{
  bool in_single = false, in_double = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (in_double) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_double = false;
      }
    } else if (in_single) {
      if (c == '\'') {
        if (i + 1 < s.size() && s[i + 1] == '\'') ++i;  // escaped quote
        else in_single = false;
      }
    } else if (c == '"') {
      in_double = true;
    } else if (c == '\'') {
      in_single = true;
    } else if (c == '#' && (i == 0 || s[i - 1] == ' ' || s[i - 1] == '\t')) {
      return s.substr(0, i);
    }
  }
  if (in_single || in_double)
    fail("XRL-P01", "unterminated quoted scalar", line_no, static_cast<int>(s.size()) + 1);
  return s;
}

std::vector<Line> split_lines(std::string_view source)
{
  std::vector<Line> lines;
  std::size_t pos = 0;
  int number = 1;
  while (pos <= source.size()) {
    std::size_t nl = source.find('\n', pos);
    std::string_view raw = (nl == std::string_view::npos) ? source.substr(pos)
                                                          : source.substr(pos, nl - pos);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    Line line;
    line.number = number;
    std::size_t i = 0;
    while (i < raw.size() && raw[i] == ' ') ++i;
    if (i < raw.size() && raw[i] == '\t')
      fail("XRL-P01", "tab character in indentation", number, static_cast<int>(i) + 1);
    line.indent = static_cast<int>(i);
    std::string content = strip_comment(std::string(raw.substr(i)), number);
    while (!content.empty() && (content.back() == ' ' || content.back() == '\t'))
      content.pop_back();
    line.content = std::move(content);
    line.blank = line.content.empty();
    lines.push_back(std::move(line));

    if (nl == std::string_view::npos) break;
    pos = nl + 1;
    ++number;
  }
  return lines;
}

class Parser
{
public:
  explicit Parser(std::vector<Line> lines) : lines_(std::move(lines)) {}

  NodePtr parse_document()
  {
    skip_blanks();
    if (at_end()) fail("XRL-P01", "document is empty", 1, 1);
    const Line & first = cur();
    if (first.content.rfind("%", 0) == 0)
      fail("XRL-P01", "YAML directives are not supported", first.number, first.indent + 1);
    if (first.content == "---" || first.content.rfind("--- ", 0) == 0)
      fail("XRL-P01", "document markers are not supported; start with the top-level mapping",
           first.number, first.indent + 1);
    if (first.indent != 0)
      fail("XRL-P01", "top-level content must start at column 1", first.number,
           first.indent + 1);
    NodePtr root = parse_block(0);
    skip_blanks();
    if (!at_end())
      fail("XRL-P01", "unexpected content after the document root", cur().number,
           cur().indent + 1);
    return root;
  }

private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  std::map<std::string, NodePtr> anchors_;

  bool at_end() const { return pos_ >= lines_.size(); }
  const Line & cur() const { return lines_[pos_]; }
  void advance() { ++pos_; }

  void skip_blanks()
  {
    while (!at_end() && cur().blank) advance();
  }

  static bool is_dash_item(const std::string & c)
  {
    return c == "-" || c.rfind("- ", 0) == 0;
  }

  void register_anchor(const std::string & name, const NodePtr & node, int line, int col)
  {
    auto [it, inserted] = anchors_.emplace(name, node);
    (void)it;
    if (!inserted) fail("XRL-P03", "anchor '" + name + "' is already declared", line, col);
  }

  // Entry point for a block value whose lines must be indented at least
  // `min_indent`.
  NodePtr parse_block(int min_indent)
  {
    skip_blanks();
    if (at_end() || cur().indent < min_indent)
      fail("XRL-P01", "expected an indented block", at_end() ? last_line() : cur().number, 1);
    const Line & line = cur();
    if (is_dash_item(line.content)) return parse_sequence(line.indent);
    if (looks_like_map_entry(line.content)) return parse_mapping(line.indent);
    // bare scalar as block value
    NodePtr node = parse_inline(line.content, line.number, line.indent + 1, false);
    advance();
    return node;
  }

  int last_line() const { return lines_.empty() ? 1 : lines_.back().number; }

  static bool looks_like_map_entry(const std::string & c)
  {
    std::size_t i = 0;
    if (c.rfind("<<", 0) == 0) {
      i = 2;
    } else {
      if (i >= c.size() || !is_ident_start(c[i])) return false;
      while (i < c.size() && is_ident_char(c[i])) ++i;
    }
    if (i >= c.size() || c[i] != ':') return false;
    return i + 1 == c.size() || c[i + 1] == ' ';
  }

  NodePtr parse_sequence(int seq_indent)
  {
    auto node = std::make_shared<YamlNode>();
    node->kind = YamlKind::Sequence;
    node->loc = {cur().number, seq_indent + 1};

    while (true) {
      skip_blanks();
      if (at_end() || cur().indent < seq_indent) break;
      const Line line = cur();
      if (line.indent > seq_indent)
        fail("XRL-P01", "bad indentation in sequence", line.number, line.indent + 1);
      if (!is_dash_item(line.content)) break;  // sibling mapping key at same indent

      int item_col = seq_indent + 3;  // 1-based column of content after "- "
      std::string rest = line.content == "-" ? std::string() : line.content.substr(2);
      // Extra spaces after the dash shift the content column.
      std::size_t skipped = 0;
      while (skipped < rest.size() && rest[skipped] == ' ') ++skipped;
      item_col += static_cast<int>(skipped);
      rest = rest.substr(skipped);
      advance();
      node->items.push_back(parse_sequence_item(rest, line.number, item_col, seq_indent));
    }
    return node;
  }

  NodePtr parse_sequence_item(std::string rest, int line_no, int col, int seq_indent)
  {
    if (rest.empty()) {
      return parse_block(seq_indent + 1);
    }
    std::string anchor;
    if (rest[0] == '&') {
      std::size_t i = 1;
      while (i < rest.size() && is_anchor_char(rest[i])) ++i;
      if (i == 1) fail("XRL-P01", "empty anchor name", line_no, col);
      anchor = rest.substr(1, i - 1);
      int anchor_col = col;
      while (i < rest.size() && rest[i] == ' ') ++i;
      std::string tail = rest.substr(i);
      col += static_cast<int>(i);
      if (tail.empty()) {
        NodePtr child = parse_block(seq_indent + 1);
        child->anchor = anchor;
        register_anchor(anchor, child, line_no, anchor_col);
        return child;
      }
      NodePtr child = parse_item_content(tail, line_no, col, seq_indent);
      child->anchor = anchor;
      register_anchor(anchor, child, line_no, anchor_col);
      return child;
    }
    return parse_item_content(rest, line_no, col, seq_indent);
  }

  NodePtr parse_item_content(const std::string & rest, int line_no, int col, int seq_indent)
  {
    if (looks_like_map_entry(rest)) {
      // Inline mapping: first entry on the dash line, siblings below at the
      // same column.
      return parse_mapping(col - 1, rest, line_no);
    }
    (void)seq_indent;
    return parse_inline(rest, line_no, col, false);
  }

  // map_indent is 0-based column of the keys. When `first` is set, that
  // entry text (at `first_line`) has already been consumed.
  NodePtr parse_mapping(int map_indent, const std::string & first = {}, int first_line = 0)
  {
    auto node = std::make_shared<YamlNode>();
    node->kind = YamlKind::Mapping;
    node->loc = {first.empty() ? cur().number : first_line, map_indent + 1};

    if (!first.empty()) consume_entry(*node, first, first_line, map_indent);

    while (true) {
      skip_blanks();
      if (at_end() || cur().indent < map_indent) break;
      const Line line = cur();
      if (line.indent > map_indent)
        fail("XRL-P01", "bad indentation in mapping", line.number, line.indent + 1);
      if (is_dash_item(line.content)) break;  // parent sequence continues
      if (!looks_like_map_entry(line.content))
        fail("XRL-P01", "expected 'key: value'", line.number, line.indent + 1);
      advance();
      consume_entry(*node, line.content, line.number, map_indent);
    }
    return node;
  }

  void consume_entry(YamlNode & map, const std::string & content, int line_no, int map_indent)
  {
    std::size_t key_len = content.rfind("<<", 0) == 0 ? 2 : 0;
    if (key_len == 0)
      while (key_len < content.size() && is_ident_char(content[key_len])) ++key_len;
    std::string key = content.substr(0, key_len);
    SourceLocation key_loc{line_no, map_indent + 1};

    for (const auto & e : map.entries)
      if (e.key == key)
        fail("XRL-P07", "duplicate key '" + key + "' in mapping", line_no, key_loc.column);

    std::size_t i = key_len + 1;  // past ':'
    while (i < content.size() && content[i] == ' ') ++i;
    std::string rest = content.substr(std::min(i, content.size()));
    int value_col = map_indent + static_cast<int>(i) + 1;

    NodePtr value;
    if (rest.empty()) {
      value = parse_optional_block_value(map_indent, line_no, value_col, {});
    } else if (rest[0] == '&') {
      std::size_t j = 1;
      while (j < rest.size() && is_anchor_char(rest[j])) ++j;
      if (j == 1) fail("XRL-P01", "empty anchor name", line_no, value_col);
      std::string anchor = rest.substr(1, j - 1);
      while (j < rest.size() && rest[j] == ' ') ++j;
      std::string tail = rest.substr(j);
      if (tail.empty()) {
        value = parse_optional_block_value(map_indent, line_no, value_col, anchor);
        value->anchor = anchor;
      } else {
        value = parse_inline(tail, line_no, value_col + static_cast<int>(j), false);
        value->anchor = anchor;
      }
      register_anchor(anchor, value, line_no, value_col);
    } else {
      value = parse_inline(rest, line_no, value_col, false);
    }
    map.entries.push_back({std::move(key), key_loc, std::move(value)});
  }

  // Value omitted on the key line: a deeper block, a sequence at the same
  // indent, or null.
  NodePtr parse_optional_block_value(int map_indent, int line_no, int col,
                                     const std::string & anchor)
  {
    (void)anchor;
    std::size_t saved = pos_;
    skip_blanks();
    if (!at_end()) {
      const Line & next = cur();
      if (next.indent > map_indent) return parse_block(map_indent + 1);
      if (next.indent == map_indent && is_dash_item(next.content))
        return parse_sequence(map_indent);
    }
    pos_ = saved;
    auto node = std::make_shared<YamlNode>();
    node->kind = YamlKind::Scalar;
    node->value = ScalarValue::null();
    node->loc = {line_no, col};
    return node;
  }

  // One-line values: alias, flow collection, quoted or plain scalar.
  NodePtr parse_inline(const std::string & text, int line_no, int col, bool in_flow)
  {
    if (text.empty()) fail("XRL-P01", "expected a value", line_no, col);
    char c0 = text[0];
    if (c0 == '|' || c0 == '>')
      fail("XRL-P01", "block scalars are not supported", line_no, col);
    if (c0 == '*') {
      std::size_t i = 1;
      while (i < text.size() && is_anchor_char(text[i])) ++i;
      if (i == 1) fail("XRL-P01", "empty alias name", line_no, col);
      if (i != text.size())
        fail("XRL-P01", "unexpected content after alias", line_no, col + static_cast<int>(i));
      std::string name = text.substr(1, i - 1);
      auto it = anchors_.find(name);
      if (it == anchors_.end())
        fail("XRL-P02", "alias '*" + name + "' refers to no anchor", line_no, col);
      auto node = std::make_shared<YamlNode>();
      node->kind = YamlKind::Alias;
      node->alias_name = name;
      node->target = it->second;
      node->loc = {line_no, col};
      return node;
    }
    if (c0 == '[') {
      if (in_flow) fail("XRL-P01", "nested flow collections are not supported", line_no, col);
      return parse_flow_sequence(text, line_no, col);
    }
    if (c0 == '{') {
      if (in_flow) fail("XRL-P01", "nested flow collections are not supported", line_no, col);
      return parse_flow_mapping(text, line_no, col);
    }
    if (c0 == '&') fail("XRL-P01", "unexpected anchor", line_no, col);
    if (c0 == '?' || c0 == '`' || c0 == '@' || c0 == '!' || c0 == '%')
      fail("XRL-P01", std::string("unsupported indicator '") + c0 + "'", line_no, col);
    if (c0 == '"' || c0 == '\'') {
      std::size_t consumed = 0;
      std::string content = parse_quoted(text, line_no, col, consumed);
      if (consumed != text.size())
        fail("XRL-P01", "unexpected content after quoted scalar", line_no,
             col + static_cast<int>(consumed));
      auto node = std::make_shared<YamlNode>();
      node->kind = YamlKind::Scalar;
      node->raw = content;
      node->quoted = true;
      node->value = ScalarValue::text(content);
      node->loc = {line_no, col};
      return node;
    }
    // Plain scalar to end of text.
    auto node = std::make_shared<YamlNode>();
    node->kind = YamlKind::Scalar;
    node->raw = text;
    node->value = classify_plain_scalar(text);
    node->loc = {line_no, col};
    return node;
  }

  std::string parse_quoted(const std::string & text, int line_no, int col,
                           std::size_t & consumed)
  {
    char quote = text[0];
    std::string out;
    std::size_t i = 1;
    while (i < text.size()) {
      char c = text[i];
      if (quote == '\'' && c == '\'') {
        if (i + 1 < text.size() && text[i + 1] == '\'') {
          out.push_back('\'');
          i += 2;
          continue;
        }
        consumed = i + 1;
        return out;
      }
      if (quote == '"' && c == '"') {
        consumed = i + 1;
        return out;
      }
      if (quote == '"' && c == '\\') {
        if (i + 1 >= text.size())
          fail("XRL-P01", "dangling escape in double-quoted scalar", line_no,
               col + static_cast<int>(i));
        char e = text[i + 1];
        switch (e) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case 'r': out.push_back('\r'); break;
          case '0': out.push_back('\0'); break;
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          case 'x': {
            if (i + 3 >= text.size())
              fail("XRL-P01", "truncated \\x escape", line_no, col + static_cast<int>(i));
            auto hex = [&](char h) -> int {
              if (h >= '0' && h <= '9') return h - '0';
              if (h >= 'a' && h <= 'f') return h - 'a' + 10;
              if (h >= 'A' && h <= 'F') return h - 'A' + 10;
              fail("XRL-P01", "bad \\x escape", line_no, col + static_cast<int>(i));
            };
            out.push_back(static_cast<char>(hex(text[i + 2]) * 16 + hex(text[i + 3])));
            i += 2;
            break;
          }
          default:
            fail("XRL-P01", std::string("unsupported escape '\\") + e + "'", line_no,
                 col + static_cast<int>(i));
        }
        i += 2;
        continue;
      }
      out.push_back(c);
      ++i;
    }
    fail("XRL-P01", "unterminated quoted scalar", line_no, col);
  }

  NodePtr parse_flow_sequence(const std::string & text, int line_no, int col)
  {
    auto node = std::make_shared<YamlNode>();
    node->kind = YamlKind::Sequence;
    node->loc = {line_no, col};

    std::size_t i = 1;
    auto skip_ws = [&] { while (i < text.size() && text[i] == ' ') ++i; };
    skip_ws();
    if (i < text.size() && text[i] == ']') {
      if (i + 1 != text.size())
        fail("XRL-P01", "unexpected content after flow sequence", line_no,
             col + static_cast<int>(i) + 1);
      return node;
    }
    while (true) {
      skip_ws();
      if (i >= text.size())
        fail("XRL-P01", "unterminated flow sequence", line_no, col);
      std::size_t item_start = i;
      std::string item = scan_flow_item(text, i, line_no, col);
      if (item.empty())
        fail("XRL-P01", "empty flow sequence item", line_no, col + static_cast<int>(i));
      node->items.push_back(
        parse_inline(item, line_no, col + static_cast<int>(item_start), true));
      skip_ws();
      if (i >= text.size()) fail("XRL-P01", "unterminated flow sequence", line_no, col);
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (text[i] == ']') {
        ++i;
        break;
      }
      fail("XRL-P01", "expected ',' or ']' in flow sequence", line_no,
           col + static_cast<int>(i));
    }
    if (i != text.size())
      fail("XRL-P01", "unexpected content after flow sequence", line_no,
           col + static_cast<int>(i));
    return node;
  }

  NodePtr parse_flow_mapping(const std::string & text, int line_no, int col)
  {
    auto node = std::make_shared<YamlNode>();
    node->kind = YamlKind::Mapping;
    node->loc = {line_no, col};

    std::size_t i = 1;
    auto skip_ws = [&] { while (i < text.size() && text[i] == ' ') ++i; };
    skip_ws();
    if (i < text.size() && text[i] == '}') {
      if (i + 1 != text.size())
        fail("XRL-P01", "unexpected content after flow mapping", line_no,
             col + static_cast<int>(i) + 1);
      return node;
    }
    while (true) {
      skip_ws();
      std::size_t key_start = i;
      while (i < text.size() && is_ident_char(text[i])) ++i;
      if (i == key_start)
        fail("XRL-P01", "expected a key in flow mapping", line_no, col + static_cast<int>(i));
      std::string key = text.substr(key_start, i - key_start);
      if (i >= text.size() || text[i] != ':')
        fail("XRL-P01", "expected ':' in flow mapping", line_no, col + static_cast<int>(i));
      ++i;
      skip_ws();
      std::size_t val_start = i;
      std::string item = scan_flow_item(text, i, line_no, col, /*closer=*/'}');
      for (const auto & e : node->entries)
        if (e.key == key)
          fail("XRL-P07", "duplicate key '" + key + "' in mapping", line_no,
               col + static_cast<int>(key_start));
      node->entries.push_back({key,
                               {line_no, col + static_cast<int>(key_start)},
                               parse_inline(item, line_no, col + static_cast<int>(val_start),
                                            true)});
      skip_ws();
      if (i >= text.size()) fail("XRL-P01", "unterminated flow mapping", line_no, col);
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (text[i] == '}') {
        ++i;
        break;
      }
      fail("XRL-P01", "expected ',' or '}' in flow mapping", line_no,
           col + static_cast<int>(i));
    }
    if (i != text.size())
      fail("XRL-P01", "unexpected content after flow mapping", line_no,
           col + static_cast<int>(i));
    return node;
  }

  // Scan one flow item (quoted or plain) up to , or the closer; leaves `i`
  // at the delimiter.
  std::string scan_flow_item(const std::string & text, std::size_t & i, int line_no, int col,
                             char closer = ']')
  {
    if (i < text.size() && (text[i] == '"' || text[i] == '\'')) {
      std::size_t start = i;
      std::size_t consumed = 0;
      parse_quoted(text.substr(i), line_no, col + static_cast<int>(i), consumed);
      i += consumed;
      return text.substr(start, consumed);
    }
    std::size_t start = i;
    while (i < text.size() && text[i] != ',' && text[i] != closer) {
      if (text[i] == '[' || text[i] == '{')
        fail("XRL-P01", "nested flow collections are not supported", line_no,
             col + static_cast<int>(i));
      ++i;
    }
    std::string item = text.substr(start, i - start);
    while (!item.empty() && item.back() == ' ') item.pop_back();
    return item;
  }
};

}  // namespace

YamlParseResult parse_yaml(std::string_view source)
{
  YamlParseResult result;
  try {
    Parser parser(split_lines(source));
    result.root = parser.parse_document();
  } catch (const ParseError & e) {
    result.root.reset();
    result.diagnostics.push_back(e.diag);
  }
  return result;
}

}  // namespace xrl
