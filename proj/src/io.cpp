#include "mosp/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "mosp/errors.hpp"

namespace mosp {

using json = nlohmann::json;

namespace {

std::int64_t integer_field(const json& node, const std::string& where) {
  if (!node.is_number_integer()) throw ParseError(where + ": expected an integer, got " + std::string(node.type_name()));
  if (node.is_number_unsigned() && node.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw ParseError(where + ": integer out of range");
  }
  return node.get<std::int64_t>();
}

const json& member(const json& node, const char* key, const std::string& where) {
  if (!node.is_object()) throw ParseError(where + ": expected an object");
  const auto it = node.find(key);
  if (it == node.end()) throw ParseError(where + ": missing field \"" + key + "\"");
  return *it;
}

json parse_text(std::string_view text, const std::string& origin) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Report line and column instead of a byte offset.
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string detail = e.what();
    const auto pos = detail.find("syntax error");
    if (pos != std::string::npos) detail = detail.substr(pos);
    throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + detail);
  }
}

}  // namespace

json instance_to_json(const Instance& instance) {
  json orgs = json::array();
  for (const auto& org : instance.organizations()) orgs.push_back({{"machines", org.machines}, {"jobs", org.jobs}});
  return {{"organizations", std::move(orgs)}};
}

Instance instance_from_json(const json& doc) {
  const json& list = member(doc, "organizations", "instance");
  if (!list.is_array()) throw ParseError("organizations: expected a list");
  std::vector<Organization> orgs;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "organizations[" + std::to_string(i + 1) + "]";
    Organization org;
    const std::int64_t machines = integer_field(member(list[i], "machines", where), where + ".machines");
    if (machines > std::numeric_limits<int>::max() || machines < std::numeric_limits<int>::min()) {
      throw ParseError(where + ".machines: out of range");
    }
    org.machines = static_cast<int>(machines);
    const json& jobs = member(list[i], "jobs", where);
    if (!jobs.is_array()) throw ParseError(where + ".jobs: expected a list");
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      org.jobs.push_back(integer_field(jobs[j], where + ".jobs[" + std::to_string(j + 1) + "]"));
    }
    orgs.push_back(std::move(org));
  }
  return Instance(std::move(orgs));
}

Instance parse_instance_text(std::string_view text, const std::string& origin) {
  const json doc = parse_text(text, origin);
  try {
    return instance_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str(), path.string());
}

void write_json_file(const json& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument(path.string() + ": cannot write file");
  out << doc.dump(2) << '\n';
}

Instance parse_instance(const std::filesystem::path& path) {
  const json doc = read_json_file(path);
  try {
    return instance_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_instance(const Instance& instance, const std::filesystem::path& path) {
  write_json_file(instance_to_json(instance), path);
}

json schedule_to_json(const Schedule& schedule) {
  json out = json::array();
  for (int i = 0; i < schedule.org_count(); ++i) {
    for (int j = 0; j < schedule.job_count(i); ++j) {
      const Placement& p = schedule[JobRef{i, j}];
      if (p.machine < 0) continue;
      out.push_back({{"org", i + 1}, {"job", j + 1}, {"machine", p.machine + 1}, {"completion", p.completion}});
    }
  }
  return out;
}

Schedule schedule_from_json(const Instance& instance, const json& doc) {
  const json& list = doc.is_object() ? member(doc, "schedule", "schedule file") : doc;
  if (!list.is_array()) throw ParseError("schedule: expected a list of placements");
  Schedule schedule(instance);
  std::vector<std::vector<char>> seen(instance.org_count());
  for (int i = 0; i < instance.org_count(); ++i) seen[i].assign(instance.organization(i).jobs.size(), 0);
  for (std::size_t e = 0; e < list.size(); ++e) {
    const std::string where = "schedule[" + std::to_string(e + 1) + "]";
    const std::int64_t org = integer_field(member(list[e], "org", where), where + ".org");
    const std::int64_t job = integer_field(member(list[e], "job", where), where + ".job");
    const std::int64_t machine = integer_field(member(list[e], "machine", where), where + ".machine");
    const std::int64_t completion = integer_field(member(list[e], "completion", where), where + ".completion");
    if (org < 1 || org > instance.org_count()) throw ParseError(where + ".org: no organization " + std::to_string(org));
    if (job < 1 || job > static_cast<std::int64_t>(seen[org - 1].size())) {
      throw ParseError(where + ".job: organization " + std::to_string(org) + " has no job " + std::to_string(job));
    }
    if (machine < 1 || machine > instance.machine_count()) {
      throw ParseError(where + ".machine: no machine " + std::to_string(machine));
    }
    if (seen[org - 1][job - 1]) throw ParseError(where + ": job listed twice");
    seen[org - 1][job - 1] = 1;
    schedule[JobRef{static_cast<int>(org - 1), static_cast<int>(job - 1)}] = {static_cast<int>(machine - 1), completion};
  }
  return schedule;
}

Schedule parse_schedule(const Instance& instance, const std::filesystem::path& path) {
  const json doc = read_json_file(path);
  try {
    return schedule_from_json(instance, doc);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace mosp
