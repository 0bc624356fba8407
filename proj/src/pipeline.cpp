#include "slp/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "slp/clausal.hpp"
#include "slp/oracle.hpp"

namespace slp {

namespace {

using Clock = std::chrono::steady_clock;

double secs_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::string> sorted_fact_lines(const std::vector<ConditionalFact>& fs,
                                           const Vocabulary& voc) {
  std::vector<std::string> lines;
  lines.reserve(fs.size());
  for (const auto& f : fs) lines.push_back(fact_text(f, voc));
  std::sort(lines.begin(), lines.end());
  return lines;
}

struct DefixTable {
  std::vector<std::string> columns;
  std::vector<std::vector<int>> rows;
  std::vector<std::string> objColumns;
  std::vector<std::vector<int>> objRows;
};

DefixTable defix_table(const DefixResult& fix, const Vocabulary& voc) {
  DefixTable t;
  for (DefAtomId d : fix.critNeg)
    t.columns.push_back(voc.defaults.text(d, voc.atoms));
  for (uint64_t m : fix.defix) {
    std::vector<int> row;
    for (size_t i = 0; i < fix.critNeg.size(); ++i)
      row.push_back(static_cast<int>((m >> i) & 1));
    t.rows.push_back(std::move(row));
  }
  std::sort(t.rows.begin(), t.rows.end(), std::greater<>());
  for (AtomId a : fix.critObj) t.objColumns.push_back(voc.atoms.text(a));
  for (uint64_t m : fix.objsetLast) {
    std::vector<int> row;
    for (size_t i = 0; i < fix.critObj.size(); ++i)
      row.push_back(static_cast<int>((m >> i) & 1));
    t.objRows.push_back(std::move(row));
  }
  std::sort(t.objRows.begin(), t.objRows.end());
  return t;
}

void print_table(std::ostream& out, const std::vector<std::string>& cols,
                 const std::vector<std::vector<int>>& rows) {
  if (cols.empty()) {
    out << (rows.empty() ? "(empty)\n" : "(no critical atoms)\n");
    return;
  }
  for (size_t i = 0; i < cols.size(); ++i)
    out << (i ? "  " : "") << cols[i];
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      std::string cell(cols[i].size() - 1, ' ');
      out << (i ? "  " : "") << cell << row[i];
    }
    out << "\n";
  }
}

std::string tuple_text(const std::vector<SymId>& tuple, const Vocabulary& voc) {
  std::string s = "(";
  for (size_t i = 0; i < tuple.size(); ++i) {
    if (i) s += ", ";
    s += quote_atom_name(voc.symbols.text(tuple[i]));
  }
  s += ")";
  return s;
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::InconsistentProgram: return "inconsistent-program";
    case Status::InconsistentCompletion: return "inconsistent-completion";
    case Status::SyntaxErr: return "syntax-error";
    case Status::GuardExceeded: return "guard-exceeded";
  }
  return "unknown";
}

int status_exit_code(Status s) {
  switch (s) {
    case Status::Ok: return 0;
    case Status::InconsistentProgram: return 1;
    case Status::InconsistentCompletion: return 1;
    case Status::SyntaxErr: return 2;
    case Status::GuardExceeded: return 3;
  }
  return 4;
}

RunReport run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RunReport rep;
  Vocabulary voc;
  nlohmann::ordered_json j;
  j["status"] = nullptr;
  j["defix"] = nullptr;
  j["residual"] = nullptr;
  j["answers"] = nlohmann::ordered_json::array();
  j["timings"] = nlohmann::ordered_json::object();

  std::vector<std::string> groundLines, residualLines;
  DefixTable table;
  bool haveTable = false;
  std::string oracleText;
  double tParse = 0, tGround = 0, tReduce = 0, tSolve = 0, tQuery = 0;

  try {
    auto t0 = Clock::now();
    Program prog = load_program(cfg.source, voc);
    for (const auto& m : cfg.monitorExprs) {
      std::string stmt = "#monitor " + m;
      if (stmt.empty() || stmt.back() != '.') stmt += ".";
      Program extra = load_program(stmt, voc);
      for (DefAtomId d : extra.monitored)
        if (std::find(prog.monitored.begin(), prog.monitored.end(), d) ==
            prog.monitored.end())
          prog.monitored.push_back(d);
    }
    for (const auto& qtext : cfg.extraQueries)
      prog.queries.push_back(parse_query_text(qtext, voc));
    tParse = secs_since(t0);

    t0 = Clock::now();
    FactStore store = ground_fixpoint(prog, voc, cfg.limits);
    tGround = secs_since(t0);
    if (cfg.dumpGround) groundLines = sorted_fact_lines(store.contents(), voc);

    t0 = Clock::now();
    ResidualProgram res = residual(std::move(store), prog.monitored, voc);
    tReduce = secs_since(t0);
    residualLines = sorted_fact_lines(res.store.contents(), voc);

    t0 = Clock::now();
    DefixResult fix = compute_defix(res, voc, cfg.limits);
    tSolve = secs_since(t0);
    table = defix_table(fix, voc);
    haveTable = true;
    if (fix.inconsistent) rep.status = Status::InconsistentCompletion;

    if (cfg.oracle) {
      Program base = prog;
      base.queries.clear();
      auto rep2 = cross_check(base, voc, cfg.limits);
      oracleText = rep2.pass ? "oracle cross-check: pass"
                             : "oracle cross-check: FAIL (" + rep2.detail + ")";
    }

    if (rep.status == Status::Ok) {
      t0 = Clock::now();
      for (const auto& q : prog.queries) {
        QueryReport qr;
        qr.text = q.text;
        qr.answers = answer(prog, q, voc, cfg.limits);
        rep.queries.push_back(std::move(qr));
      }
      tQuery = secs_since(t0);
    }
  } catch (const SyntaxError& e) {
    rep.status = Status::SyntaxErr;
    rep.message = std::to_string(e.line) + ":" + std::to_string(e.column) +
                  ": " + e.what();
  } catch (const InconsistentProgram& e) {
    rep.status = Status::InconsistentProgram;
    rep.message = e.what();
  } catch (const GuardError& e) {
    rep.status = Status::GuardExceeded;
    rep.message = e.what();
  }

  if (!rep.message.empty()) err << "error: " << rep.message << "\n";
  if (cfg.json && !oracleText.empty()) err << oracleText << "\n";

  if (cfg.json) {
    j["status"] = status_name(rep.status);
    if (haveTable) {
      j["defix"] = {{"columns", table.columns},
                    {"rows", table.rows},
                    {"objective_columns", table.objColumns},
                    {"objective_rows", table.objRows}};
      j["residual"] = residualLines;
    }
    for (const auto& qr : rep.queries) {
      nlohmann::ordered_json qj;
      qj["query"] = qr.text;
      auto tuples = nlohmann::ordered_json::array();
      Vocabulary* vp = &voc;
      for (const auto& t : qr.answers.definite) {
        auto tj = nlohmann::ordered_json::array();
        for (SymId s : t) tj.push_back(vp->symbols.text(s));
        tuples.push_back(tj);
      }
      qj["definite"] = tuples;
      auto poss = nlohmann::ordered_json::array();
      for (const auto& dis : qr.answers.possible) {
        auto dj = nlohmann::ordered_json::array();
        for (const auto& t : dis) {
          auto tj = nlohmann::ordered_json::array();
          for (SymId s : t) tj.push_back(vp->symbols.text(s));
          dj.push_back(tj);
        }
        poss.push_back(dj);
      }
      qj["possible"] = cfg.possible ? poss : nlohmann::ordered_json::array();
      if (qr.answers.inconsistentCompletion)
        qj["note"] = "inconsistent-completion";
      j["answers"].push_back(qj);
    }
    if (cfg.timings)
      j["timings"] = {{"parse", tParse},
                      {"ground", tGround},
                      {"reduce", tReduce},
                      {"solve", tSolve},
                      {"query", tQuery}};
    out << j.dump(2) << "\n";
    return rep;
  }

  if (cfg.dumpGround && rep.status != Status::SyntaxErr &&
      rep.status != Status::InconsistentProgram) {
    out << "ground:\n";
    for (const auto& l : groundLines) out << "  " << l << "\n";
  }
  if (cfg.dumpResidual && haveTable) {
    out << "residual:\n";
    for (const auto& l : residualLines) out << "  " << l << "\n";
  }
  if (cfg.dumpDefix && haveTable) {
    out << "defix:\n";
    print_table(out, table.columns, table.rows);
    out << "objective parts:\n";
    print_table(out, table.objColumns, table.objRows);
  }
  if (!oracleText.empty()) out << oracleText << "\n";
  out << "status: " << status_name(rep.status) << "\n";
  for (const auto& qr : rep.queries) {
    out << qr.text << "\n";
    if (qr.answers.inconsistentCompletion) {
      out << "inconsistent-completion: every formula is entailed\n";
      continue;
    }
    bool groundQuery =
        qr.answers.definite.size() == 1 && qr.answers.definite[0].empty();
    if (groundQuery) {
      out << "yes\n";
    } else if (qr.answers.definite.empty()) {
      out << "no\n";
    } else {
      for (const auto& t : qr.answers.definite)
        out << tuple_text(t, voc) << "\n";
    }
    if (cfg.possible) {
      for (const auto& dis : qr.answers.possible) {
        out << "possible:";
        for (size_t i = 0; i < dis.size(); ++i)
          out << (i ? " | " : " ") << tuple_text(dis[i], voc);
        out << "\n";
      }
    }
  }
  if (cfg.timings)
    err << "timings: parse=" << tParse << "s ground=" << tGround
        << "s reduce=" << tReduce << "s solve=" << tSolve
        << "s query=" << tQuery << "s\n";
  return rep;
}

Session::Session(const std::string& source, const Limits& limits)
    : limits_(limits) {
  prog_ = load_program(source, voc_);
  prog_.queries.clear();
}

AnswerSet Session::ask(const std::string& queryText) {
  Query q = parse_query_text(queryText, voc_);
  return answer(prog_, q, voc_, limits_);
}

}  // namespace slp
