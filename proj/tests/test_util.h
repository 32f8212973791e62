#ifndef DDL_TESTS_TEST_UTIL_H_
#define DDL_TESTS_TEST_UTIL_H_

#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "ddl/kb_language.h"
#include "ddl/model_counter.h"

namespace ddl::testing {

inline std::string DataPath(const std::string& name) {
  return std::string(DDL_TEST_DATA) + "/" + name;
}

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ParsedKb LoadData(const std::string& name) {
  return ParseKb(ReadFile(DataPath(name)));
}

inline std::shared_ptr<const KnowledgeBase> Share(const KnowledgeBase& kb) {
  return std::make_shared<const KnowledgeBase>(kb);
}

// Ground formula parsed against the kb, at the named constant.
inline GroundFormula At(const KnowledgeBase& kb, const std::string& formula,
                        const std::string& constant = "a") {
  return {ParseFormula(formula, kb), *kb.FindConstant(constant)};
}

inline Rational Q(long n, long d = 1) { return Rational(n, d); }

}  // namespace ddl::testing

#endif  // DDL_TESTS_TEST_UTIL_H_
