#ifndef SLP_PIPELINE_HPP
#define SLP_PIPELINE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "slp/query.hpp"

namespace slp {

enum class Status {
  Ok,
  InconsistentProgram,
  InconsistentCompletion,
  SyntaxErr,
  GuardExceeded,
};

const char* status_name(Status s);
int status_exit_code(Status s);

struct RunConfig {
  std::string source;  // program text
  bool dumpGround = false;
  bool dumpResidual = false;
  bool dumpDefix = false;
  bool possible = false;
  bool oracle = false;
  bool json = false;
  bool timings = false;
  Limits limits;
  std::vector<std::string> monitorExprs;  // e.g. "not(a & b)"
  std::vector<std::string> extraQueries;  // appended after file queries
};

struct QueryReport {
  std::string text;
  AnswerSet answers;
};

struct RunReport {
  Status status = Status::Ok;
  std::string message;
  std::vector<QueryReport> queries;
  int exit_code() const { return status_exit_code(status); }
};

// Parses, grounds, reduces, solves and answers the queries in file order,
// writing the report to `out` (diagnostics to `err`).
RunReport run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Cached parse for interactive use; each query still evaluates the full
// pipeline against the stored program.
class Session {
 public:
  Session(const std::string& source, const Limits& limits);
  AnswerSet ask(const std::string& queryText);
  const Program& program() const { return prog_; }
  Vocabulary& vocabulary() { return voc_; }

 private:
  Vocabulary voc_;
  Program prog_;
  Limits limits_;
};

}  // namespace slp

#endif  // SLP_PIPELINE_HPP
