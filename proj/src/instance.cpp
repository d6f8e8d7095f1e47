#include "mosp/instance.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "arith.hpp"
#include "mosp/errors.hpp"

namespace mosp {

std::string_view to_string(ObjectiveKind kind) {
  return kind == ObjectiveKind::Makespan ? "makespan" : "sumc";
}

ObjectiveKind parse_objective(std::string_view text) {
  if (text == "makespan" || text == "cmax") return ObjectiveKind::Makespan;
  if (text == "sumc" || text == "sum-completion") return ObjectiveKind::SumCompletion;
  throw InvalidArgument("unknown objective '" + std::string(text) + "' (expected makespan or sumc)");
}

Instance::Instance(std::vector<Organization> organizations) : orgs_(std::move(organizations)) {
  if (orgs_.empty()) throw ValidationError("instance has no organizations");
  first_machine_.reserve(orgs_.size());
  for (std::size_t i = 0; i < orgs_.size(); ++i) {
    const auto& org = orgs_[i];
    const std::string name = "organization " + std::to_string(i + 1);
    if (org.machines < 1) throw ValidationError(name + " has no machines");
    first_machine_.push_back(machine_count_);
    machine_count_ += org.machines;
    for (std::size_t j = 0; j < org.jobs.size(); ++j) {
      if (org.jobs[j] < 1) {
        throw ValidationError(name + ", job " + std::to_string(j + 1) + ": duration must be at least 1");
      }
      try {
        total_load_ = detail::checked_add(total_load_, org.jobs[j], "total load");
      } catch (const OverflowError&) {
        throw ValidationError("total processing time of the instance does not fit in 64 bits");
      }
      max_duration_ = std::max(max_duration_, org.jobs[j]);
    }
    job_count_ += static_cast<int>(org.jobs.size());
  }
}

int Instance::max_jobs_per_org() const {
  std::size_t best = 0;
  for (const auto& org : orgs_) best = std::max(best, org.jobs.size());
  return static_cast<int>(best);
}

int Instance::max_machines_per_org() const {
  int best = 0;
  for (const auto& org : orgs_) best = std::max(best, org.machines);
  return best;
}

std::vector<JobRef> Instance::jobs() const {
  std::vector<JobRef> out;
  out.reserve(job_count_);
  for (int i = 0; i < org_count(); ++i)
    for (int j = 0; j < static_cast<int>(orgs_[i].jobs.size()); ++j) out.push_back({i, j});
  return out;
}

std::vector<JobRef> Instance::jobs_of(int org) const {
  std::vector<JobRef> out;
  for (int j = 0; j < static_cast<int>(orgs_[org].jobs.size()); ++j) out.push_back({org, j});
  return out;
}

Schedule::Schedule(const Instance& instance) {
  slots_.reserve(instance.org_count());
  for (const auto& org : instance.organizations()) slots_.emplace_back(org.jobs.size());
}

bool Schedule::shaped_like(const Instance& instance) const {
  if (org_count() != instance.org_count()) return false;
  for (int i = 0; i < org_count(); ++i)
    if (job_count(i) != static_cast<int>(instance.organization(i).jobs.size())) return false;
  return true;
}

Limits Limits::from_environment() {
  Limits limits;
  if (const char* raw = std::getenv("MOSP_NODE_BUDGET"); raw != nullptr && *raw != '\0') {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(raw, &end, 10);
    if (end != nullptr && *end == '\0' && value > 0) limits.node_budget = value;
  }
  return limits;
}

}  // namespace mosp
