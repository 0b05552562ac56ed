// xrl/xml.cpp - Minimal strict XML reader/writer
#include "xrl/xml.hpp"

#include <cctype>
#include <sstream>

namespace xrl
{

const std::string * XmlElement::attr(std::string_view name) const
{
  for (const auto & [k, v] : attributes)
    if (k == name) return &v;
  return nullptr;
}

const XmlElement * XmlElement::child(std::string_view name) const
{
  for (const auto & c : children)
    if (c->name == name) return c.get();
  return nullptr;
}

std::vector<const XmlElement *> XmlElement::children_named(std::string_view name) const
{
  std::vector<const XmlElement *> out;
  for (const auto & c : children)
    if (c->name == name) out.push_back(c.get());
  return out;
}

namespace
{

struct XmlError
{
  Diagnostic diag;
};

class Reader
{
public:
  explicit Reader(std::string_view src) : src_(src) {}

  std::unique_ptr<XmlElement> parse()
  {
    skip_prolog();
    auto root = parse_element();
    skip_misc();
    if (pos_ < src_.size()) fail("content after the root element");
    return root;
  }

private:
  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;

  [[noreturn]] void fail(const std::string & message)
  {
    throw XmlError{make_diag("XRL-X01", message, {line_, col_})};
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }

  char take()
  {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  bool consume(std::string_view token)
  {
    if (src_.substr(pos_).rfind(token, 0) != 0) return false;
    for (std::size_t i = 0; i < token.size(); ++i) take();
    return true;
  }

  void skip_ws()
  {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) take();
  }

  void skip_comment()
  {
    // positioned after "<!--"
    while (!at_end()) {
      if (consume("-->")) return;
      take();
    }
    fail("unterminated comment");
  }

  void skip_misc()
  {
    while (true) {
      skip_ws();
      if (consume("<!--")) {
        skip_comment();
        continue;
      }
      return;
    }
  }

  void skip_prolog()
  {
    skip_ws();
    if (consume("<?xml")) {
      while (!at_end()) {
        if (consume("?>")) break;
        take();
      }
    }
    skip_misc();
  }

  std::string read_name()
  {
    std::string name;
    while (!at_end()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' ||
          c == '.') {
        name.push_back(take());
      } else {
        break;
      }
    }
    if (name.empty()) fail("expected a name");
    return name;
  }

  std::string decode_entities(const std::string & s, int line, int col)
  {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '&') {
        out.push_back(s[i]);
        continue;
      }
      std::size_t semi = s.find(';', i);
      if (semi == std::string::npos)
        throw XmlError{make_diag("XRL-X01", "unterminated entity reference", {line, col})};
      std::string entity = s.substr(i + 1, semi - i - 1);
      if (entity == "amp") out.push_back('&');
      else if (entity == "lt") out.push_back('<');
      else if (entity == "gt") out.push_back('>');
      else if (entity == "quot") out.push_back('"');
      else if (entity == "apos") out.push_back('\'');
      else
        throw XmlError{
          make_diag("XRL-X01", "unknown entity '&" + entity + ";'", {line, col})};
      i = semi;
    }
    return out;
  }

  std::unique_ptr<XmlElement> parse_element()
  {
    skip_misc();
    if (at_end() || peek() != '<') fail("expected an element");
    int el_line = line_, el_col = col_;
    take();  // '<'
    auto element = std::make_unique<XmlElement>();
    element->loc = {el_line, el_col};
    element->name = read_name();

    while (true) {
      skip_ws();
      if (at_end()) fail("unterminated start tag");
      if (consume("/>")) return element;
      if (consume(">")) break;
      int a_line = line_, a_col = col_;
      std::string attr_name = read_name();
      skip_ws();
      if (at_end() || take() != '=') fail("expected '=' after attribute name");
      skip_ws();
      if (at_end()) fail("expected an attribute value");
      char quote = take();
      if (quote != '"' && quote != '\'') fail("attribute value must be quoted");
      std::string raw;
      while (!at_end() && peek() != quote) raw.push_back(take());
      if (at_end()) fail("unterminated attribute value");
      take();  // closing quote
      for (const auto & [k, v] : element->attributes)
        if (k == attr_name)
          throw XmlError{
            make_diag("XRL-X01", "duplicate attribute '" + attr_name + "'", {a_line, a_col})};
      element->attributes.emplace_back(attr_name, decode_entities(raw, a_line, a_col));
    }

    // Content: text, children, comments, then the end tag.
    std::string text;
    int text_line = line_, text_col = col_;
    while (true) {
      if (at_end()) fail("unterminated element '" + element->name + "'");
      if (peek() == '<') {
        if (consume("<!--")) {
          skip_comment();
          continue;
        }
        if (src_.substr(pos_).rfind("</", 0) == 0) {
          consume("</");
          std::string closing = read_name();
          if (closing != element->name)
            fail("mismatched end tag '</" + closing + ">' for '" + element->name + "'");
          skip_ws();
          if (at_end() || take() != '>') fail("malformed end tag");
          element->text = decode_entities(text, text_line, text_col);
          return element;
        }
        element->children.push_back(parse_element());
        continue;
      }
      text.push_back(take());
    }
  }
};

void trim(std::string & s)
{
  std::size_t b = s.find_first_not_of(" \t\r\n");
  std::size_t e = s.find_last_not_of(" \t\r\n");
  s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

// Pretty-printing whitespace around child elements is structural, not data;
// leaf text (param values) is kept verbatim.
void trim_tree(XmlElement & e)
{
  if (!e.children.empty()) trim(e.text);
  for (auto & c : e.children) trim_tree(*c);
}

void write_element(std::ostringstream & out, const XmlElement & e, int depth)
{
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  out << pad << '<' << e.name;
  for (const auto & [k, v] : e.attributes) out << ' ' << k << "=\"" << xml_escape_attr(v) << '"';
  if (e.children.empty() && e.text.empty()) {
    out << "/>\n";
    return;
  }
  if (e.children.empty()) {
    out << '>' << xml_escape_text(e.text) << "</" << e.name << ">\n";
    return;
  }
  out << ">\n";
  for (const auto & c : e.children) write_element(out, *c, depth + 1);
  out << pad << "</" << e.name << ">\n";
}

}  // namespace

XmlParseResult parse_xml(std::string_view source)
{
  XmlParseResult result;
  try {
    Reader reader(source);
    result.root = reader.parse();
    trim_tree(*result.root);
  } catch (const XmlError & e) {
    result.root.reset();
    result.diagnostics.push_back(e.diag);
  }
  return result;
}

std::string write_xml(const XmlElement & root)
{
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  write_element(out, root, 0);
  return out.str();
}

std::string xml_escape_text(std::string_view s)
{
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string xml_escape_attr(std::string_view s)
{
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace xrl
