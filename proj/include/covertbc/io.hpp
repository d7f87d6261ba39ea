#ifndef COVERTBC_IO_HPP
#define COVERTBC_IO_HPP

#include <optional>
#include <string>

#include "covertbc/channel.hpp"

namespace covertbc {

/// Parsed channel spec file. DMC files carry {"inputs", "w", "warden"} and
/// optionally "v"; Gaussian files carry {"n1", "n2", "sigma2"}.
struct LoadedSpec {
  enum class Kind { Dmc, Gaussian };
  Kind kind = Kind::Dmc;
  Channel w;
  Channel warden;
  std::optional<Channel> v;
  GaussianBroadcastSpec gauss{1.0, 1.0, 1.0};
};

LoadedSpec load_spec_file(const std::string& path);

/// Assembles the pruned broadcast spec; requires a "v" channel.
BroadcastSpec to_broadcast_spec(const LoadedSpec& loaded);

std::string format_double(double value);  // shortest round-trip decimal

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace covertbc

#endif
