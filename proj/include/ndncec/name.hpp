#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace ndncec {

// Hierarchical content name: an ordered list of non-empty byte-string
// components. Canonical text form is "/"-joined with percent-escaping, and
// parse(render(n)) == n for every valid name.
class Name {
public:
  // Names in the wild are short and human-readable; the caps keep router
  // keys bounded. Configurable (defaults 32 components, 255 bytes each).
  static std::size_t max_components() { return max_components_; }
  static std::size_t max_component_bytes() { return max_component_bytes_; }
  static void set_limits(std::size_t components, std::size_t bytes);

  Name() = default;
  explicit Name(std::vector<std::string> components);

  static Name parse(const std::string& text);
  std::string render() const;

  const std::vector<std::string>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  bool empty() const { return components_.empty(); }

  // True iff this name's components are a (possibly equal) leading
  // subsequence of n's components.
  bool is_prefix_of(const Name& n) const;

  Name append(const std::string& component) const;
  Name append(const Name& suffix) const;

  auto operator<=>(const Name&) const = default;

private:
  inline static std::size_t max_components_ = 32;
  inline static std::size_t max_component_bytes_ = 255;

  std::vector<std::string> components_;
};

} // namespace ndncec
