#pragma once

#include "ndncec/name.hpp"
#include "ndncec/producer.hpp"
#include "ndncec/rng.hpp"

#include <cstdint>
#include <vector>

namespace ndncec {

enum class CodebookMode : std::uint8_t { Plain, CommonPrefix };

// The pre-agreed matrix of data-packet names: rows are message words,
// columns the 2^m symbol values. Derivation is deterministic in the shared
// seed, standing in for the out-of-band agreement the parties perform.
class Codebook {
public:
  // ceil(n/m) rows by 2^m columns of distinct pseudo-random names under
  // `ns`. m in [1,8]; values above 5 exceed the practical range but are
  // accepted. CommonPrefix mode gives every row its own proper prefix that
  // matches no other row's names.
  static Codebook derive(std::uint64_t seed, int message_bits, int bits_per_symbol,
                         const Name& ns, CodebookMode mode);

  int message_bits() const { return n_; }
  int bits_per_symbol() const { return m_; }
  int rows() const { return static_cast<int>(names_.size()); }
  int columns() const { return 1 << m_; }
  CodebookMode mode() const { return mode_; }

  const Name& name_at(int row, int column) const { return names_[row][column]; }
  const Name& row_prefix(int row) const; // CommonPrefix mode only
  const Name& ns() const { return namespace_; }

  // Column of the row whose name equals `full`, or -1.
  int column_of(int row, const Name& full) const;

  // Registers every codebook name with the producer; throws if the
  // namespace collides with already-published (popular) content.
  void publish_all(Producer& producer, Duration freshness, int wire_size_bytes) const;

  std::vector<Name> all_names() const;

private:
  int n_ = 0;
  int m_ = 0;
  CodebookMode mode_ = CodebookMode::Plain;
  Name namespace_;
  std::vector<std::vector<Name>> names_;    // rows x columns
  std::vector<Name> prefixes_;              // per row, CommonPrefix mode
};

} // namespace ndncec
