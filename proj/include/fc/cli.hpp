#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fc::cli {

struct Command {
  std::string name;                     ///< e.g. "sup" or "graph path"
  std::vector<std::string> operations;  ///< library operations it exposes
};

/// Every subcommand with the library operations it reaches.
const std::vector<Command>& registry();

/// Runs `fc` with `args` (program name excluded). `env_seed` is the value of
/// FC_SEED, which overrides --seed. Returns 0 on success, 1 when the
/// mathematics fails or a check comes out false, 2 on usage or parse errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& env_seed = std::nullopt);

}  // namespace fc::cli
