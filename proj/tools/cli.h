// Command-line front end. Kept in a library so the tests can drive commands
// in-process and compare their reports.

#ifndef DDL_TOOLS_CLI_H_
#define DDL_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace ddl::cli {

// Exit status: 0 on success, 1 on a soundness or oracle violation, 2 on any
// other error (usage, parse, inconsistent theory, budget).
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Hex SHA-256 of `bytes`.
std::string Sha256Hex(const std::string& bytes);

}  // namespace ddl::cli

#endif  // DDL_TOOLS_CLI_H_
