#include "tazone/cli.hpp"

#include "tazone/batch.hpp"
#include "tazone/parser.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace tazone::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", s);
  return buf;
}

}  // namespace

std::vector<std::string> query_lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.rfind("//", 0) == 0) continue;
    out.push_back(line);
  }
  return out;
}

int run(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto text = slurp(config.spec_path);
  if (!text) {
    err << "error: cannot read specification file '" << config.spec_path << "'\n";
    return exit_code::missing_file;
  }
  const auto net = parse_spec(*text);
  if (!net) {
    for (const auto& d : net.diagnostics) err << config.spec_path << ":" << to_string(d) << "\n";
    return exit_code::diagnostics;
  }

  SearchOptions options = config.faithful ? SearchOptions::faithful(config.options) : config.options;

  std::vector<std::string> texts;
  for (const auto& q : config.queries) texts.push_back(trim(q));
  if (config.query_file) {
    std::ifstream f(*config.query_file);
    if (!f) {
      err << "error: cannot read query file '" << *config.query_file << "'\n";
      return exit_code::missing_file;
    }
    auto lines = query_lines(f);
    texts.insert(texts.end(), lines.begin(), lines.end());
  }
  const bool has_source = !config.queries.empty() || config.query_file;
  if (!has_source && !config.selftest) texts = query_lines(in);

  std::vector<Query> queries;
  bool bad = false;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    auto q = parse_query(texts[i], *net);
    if (!q) {
      bad = true;
      for (const auto& d : q.diagnostics) err << "query " << i + 1 << ":" << to_string(d) << "\n";
      continue;
    }
    queries.push_back(*q);
  }
  if (bad) return exit_code::diagnostics;

  if (config.selftest) {
    if (!has_source) {
      queries = product_suite(*net);
      texts.clear();
      for (const auto& q : queries) texts.push_back(pretty_print(q, *net));
    }
    const auto report = selftest(*net, queries, options);
    out << "agree: " << report.agreeing << "/" << report.total << "\n";
    if (report.first_divergence) {
      out << "divergence: " << texts[report.first_divergence->query] << "\n";
      for (const auto& [name, verdict] : report.first_divergence->verdicts)
        out << "  " << name << "\t" << to_string(verdict) << "\n";
      return exit_code::divergence;
    }
    return exit_code::ok;
  }

  std::vector<Job> jobs;
  for (const auto& q : queries) jobs.push_back(Job{q, options});
  const auto results = run_batch(*net, jobs);

  int status = exit_code::ok;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    out << texts[i] << "\t" << to_string(r.verdict) << "\n";
    if (r.verdict == Verdict::Inconclusive) {
      err << "query " << i + 1 << ": resource limit exceeded, verdict inconclusive\n";
      status = exit_code::inconclusive;
    }
    if (config.stats)
      out << "  zones stored: " << r.stats.stored << ", zones popped: " << r.stats.popped
          << ", time: " << seconds(r.stats.seconds) << " s\n";
    if (config.witness && r.verdict == Verdict::True) {
      out << "  witness:";
      if (r.witness.empty()) out << " (empty)";
      for (auto l : r.witness) out << ' ' << net->name_of(l);
      out << "\n";
    }
  }
  return status;
}

}  // namespace tazone::cli
