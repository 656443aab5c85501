#include "basilica/report.hpp"

#include <algorithm>
#include <cstdio>

namespace basilica {

using nlohmann::json;

json json_of(const CheckReport& r) {
  json bounds = json::object();
  for (const auto& [k, v] : r.bounds) bounds[k] = v;
  json stats = json::object();
  for (const auto& [k, v] : r.stats) stats[k] = v;
  return json{{"check", r.check},
              {"p", r.p},
              {"bounds", bounds},
              {"passed", r.passed},
              {"counterexamples", r.counterexamples},
              {"stats", stats},
              {"wallclock_ms", r.wallclock_ms}};
}

json json_of(const SuiteItem& it) {
  return json{{"id", it.id},
              {"claim", it.claim},
              {"status", it.passed ? "pass" : "fail"},
              {"detail", it.detail}};
}

json json_of(const SuiteReport& r) {
  json items = json::array();
  for (const SuiteItem& it : r.items) items.push_back(json_of(it));
  return json{{"suite", r.suite},
              {"p", r.p},
              {"items", items},
              {"passed", r.all_passed()},
              {"wallclock_ms", r.wallclock_ms}};
}

json json_of(const RelatorEntry& e) {
  return json{{"k", e.k},           {"m", e.m},
              {"l", e.l},           {"length", e.length},
              {"states", e.states}, {"trivial", e.trivial}};
}

json json_of(const RelatorReport& r) {
  json entries = json::array();
  for (const RelatorEntry& e : r.entries) entries.push_back(json_of(e));
  return json{{"suite", "relators"},
              {"p", r.p},
              {"kmax", r.kmax},
              {"mmax", r.mmax},
              {"alternative_reading", r.alternative_reading},
              {"entries", entries},
              {"passed", r.all_trivial},
              {"wallclock_ms", r.wallclock_ms}};
}

json json_of(const QuotientRecord& r) {
  return json{{"p", r.p},
              {"n", r.n},
              {"logp_order", r.logp_order},
              {"matches_formula", r.matches_formula},
              {"derived_index_logp", r.derived_index_logp},
              {"abelian_a", r.abelian_a.get_str()},
              {"abelian_b", r.abelian_b.get_str()},
              {"gamma3_index_logp", r.gamma3_index_logp},
              {"comm_order_logp", r.comm_order_logp},
              {"wallclock_ms", r.wallclock_ms}};
}

json json_of(const HausdorffEntry& e) {
  return json{{"n", e.n},
              {"logp_index_g", e.logp_g.get_str()},
              {"logp_index_gamma", e.logp_gamma.get_str()},
              {"ratio", e.ratio.get_str()},
              {"ratio_decimal", decimal_of(e.ratio)}};
}

json json_of(const HausdorffSeries& s) {
  json entries = json::array();
  for (const HausdorffEntry& e : s.entries) entries.push_back(json_of(e));
  return json{{"p", s.p},
              {"limit", s.limit.get_str()},
              {"limit_decimal", decimal_of(s.limit)},
              {"entries", entries}};
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(row[i]);
    }
    out += '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  return out;
}

std::string text_table(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += "  ";
      out += row[i];
      if (i + 1 < row.size())
        out.append(width[i] - std::min(width[i], row[i].size()), ' ');
    }
    out += '\n';
  };
  emit(header);
  std::vector<std::string> dashes;
  for (std::size_t w : width) dashes.push_back(std::string(w, '-'));
  emit(dashes);
  for (const auto& row : rows) emit(row);
  return out;
}

std::string decimal_of(const mpq_class& q, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, mpq_get_d(q.get_mpq_t()));
  return buf;
}

}  // namespace basilica
