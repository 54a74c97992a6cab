// channel_io.hpp — Channel description files: a small key-value text format
// holding either Pauli probabilities or an explicit Kraus list. The format is
// documented in docs/channel_format.md; read -> write -> read is
// value-identical.

#pragma once

#include "qfid/channel.hpp"
#include "qfid/pauli.hpp"
#include "qfid/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qfid {

struct ChannelDescription {
  enum class Kind { pauli, kraus };
  Kind kind = Kind::pauli;
  std::optional<PauliChannel> pauli;  // kind == pauli
  Index dim = 0;                      // kind == kraus
  std::vector<Matrix> kraus;          // kind == kraus

  Channel to_channel() const;  // validates; Pauli files must sum to 1 within 1e-9
};

ChannelDescription parse_channel_text(const std::string& text, const std::string& source_name);
ChannelDescription read_channel_file(const std::string& path);

std::string format_channel_text(const ChannelDescription& description);
void write_channel_file(const std::string& path, const ChannelDescription& description);

// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

// Fixed significant-digit form (locale-independent) used by CSV and reports.
std::string format_double(double value, int significant_digits);

}  // namespace qfid
