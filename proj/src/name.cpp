#include "ndncec/name.hpp"

#include "ndncec/errors.hpp"

#include <cctype>

namespace ndncec {

namespace {

bool needs_escape(unsigned char c) {
  // '/' is the separator and '%' the escape lead-in; everything else
  // printable passes through unchanged.
  return c == '/' || c == '%' || c < 0x21 || c > 0x7e;
}

char hex_digit(unsigned v) { return "0123456789ABCDEF"[v & 0xF]; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

void validate_component(const std::string& comp) {
  if (comp.empty())
    throw ConfigError("name component must be non-empty");
  if (comp.size() > Name::max_component_bytes())
    throw ConfigError("name component exceeds " +
                      std::to_string(Name::max_component_bytes()) + " bytes");
}

} // namespace

void Name::set_limits(std::size_t components, std::size_t bytes) {
  if (components < 1 || bytes < 1)
    throw ConfigError("name limits must be >= 1");
  max_components_ = components;
  max_component_bytes_ = bytes;
}

Name::Name(std::vector<std::string> components) : components_(std::move(components)) {
  if (components_.empty())
    throw ConfigError("a name needs at least one component");
  if (components_.size() > max_components())
    throw ConfigError("name exceeds " + std::to_string(max_components()) + " components");
  for (const auto& c : components_)
    validate_component(c);
}

Name Name::parse(const std::string& text) {
  if (text.empty() || text[0] != '/')
    throw ConfigError("name must start with '/': \"" + text + "\"");
  std::vector<std::string> comps;
  std::string cur;
  for (std::size_t i = 1; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '/') {
      if (cur.empty())
        throw ConfigError("empty name component in \"" + text + "\"");
      comps.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    char ch = text[i];
    if (ch == '%') {
      if (i + 2 >= text.size())
        throw ConfigError("truncated percent escape in \"" + text + "\"");
      int hi = hex_value(text[i + 1]);
      int lo = hex_value(text[i + 2]);
      if (hi < 0 || lo < 0)
        throw ConfigError("bad percent escape in \"" + text + "\"");
      cur.push_back(static_cast<char>(hi * 16 + lo));
      i += 2;
    } else {
      cur.push_back(ch);
    }
  }
  return Name(std::move(comps));
}

std::string Name::render() const {
  std::string out;
  for (const auto& comp : components_) {
    out.push_back('/');
    for (unsigned char c : comp) {
      if (needs_escape(c)) {
        out.push_back('%');
        out.push_back(hex_digit(c >> 4));
        out.push_back(hex_digit(c));
      } else {
        out.push_back(static_cast<char>(c));
      }
    }
  }
  return out;
}

bool Name::is_prefix_of(const Name& n) const {
  if (components_.size() > n.components_.size())
    return false;
  for (std::size_t i = 0; i < components_.size(); ++i)
    if (components_[i] != n.components_[i])
      return false;
  return true;
}

Name Name::append(const std::string& component) const {
  auto comps = components_;
  comps.push_back(component);
  return Name(std::move(comps));
}

Name Name::append(const Name& suffix) const {
  auto comps = components_;
  comps.insert(comps.end(), suffix.components_.begin(), suffix.components_.end());
  return Name(std::move(comps));
}

} // namespace ndncec
