#include "ndncec/codebook.hpp"

#include "ndncec/errors.hpp"

#include <set>
#include <string>

namespace ndncec {

namespace {

std::string token(RngStream& rng) {
  static const char alphabet[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string out;
  for (int i = 0; i < 10; ++i)
    out.push_back(alphabet[rng.uniform_index(36)]);
  return out;
}

} // namespace

Codebook Codebook::derive(std::uint64_t seed, int message_bits, int bits_per_symbol,
                          const Name& ns, CodebookMode mode) {
  if (message_bits < 1)
    throw ConfigError("message length must be >= 1 bit");
  if (bits_per_symbol < 1 || bits_per_symbol > 8)
    throw ConfigError("bits per symbol must be in [1,8]");

  Codebook cb;
  cb.n_ = message_bits;
  cb.m_ = bits_per_symbol;
  cb.mode_ = mode;
  cb.namespace_ = ns;

  int rows = (message_bits + bits_per_symbol - 1) / bits_per_symbol;
  int cols = 1 << bits_per_symbol;

  RngStream rng(mix_seed(seed, fnv1a(ns.render())));
  std::set<std::string> used; // suffix tokens, kept distinct
  auto fresh_token = [&] {
    for (;;) {
      std::string t = token(rng);
      if (used.insert(t).second)
        return t;
    }
  };

  cb.names_.resize(rows);
  for (int r = 0; r < rows; ++r) {
    Name row_base = ns;
    if (mode == CodebookMode::CommonPrefix) {
      row_base = ns.append("w" + fresh_token());
      cb.prefixes_.push_back(row_base);
    }
    cb.names_[r].reserve(cols);
    for (int c = 0; c < cols; ++c)
      cb.names_[r].push_back(row_base.append("c" + fresh_token()));
  }
  return cb;
}

const Name& Codebook::row_prefix(int row) const {
  if (mode_ != CodebookMode::CommonPrefix)
    throw ConfigError("row prefixes exist only in common-prefix mode");
  return prefixes_[row];
}

int Codebook::column_of(int row, const Name& full) const {
  const auto& r = names_[row];
  for (int c = 0; c < static_cast<int>(r.size()); ++c)
    if (r[c] == full)
      return c;
  return -1;
}

void Codebook::publish_all(Producer& producer, Duration freshness,
                           int wire_size_bytes) const {
  for (const auto& row : names_) {
    for (const auto& name : row) {
      if (producer.hosts(name))
        throw ConfigError("codebook name collides with existing content: " + name.render());
      producer.publish(name, freshness, wire_size_bytes);
    }
  }
}

std::vector<Name> Codebook::all_names() const {
  std::vector<Name> out;
  for (const auto& row : names_)
    out.insert(out.end(), row.begin(), row.end());
  return out;
}

} // namespace ndncec
