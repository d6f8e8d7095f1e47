#ifndef MOSP_IO_HPP
#define MOSP_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "mosp/instance.hpp"

namespace mosp {

// Files use 1-based organization, job and machine indices.

/// {"organizations": [{"machines": m, "jobs": [p, ...]}, ...]}
nlohmann::json instance_to_json(const Instance& instance);
/// Throws ParseError with the offending field path, or ValidationError.
Instance instance_from_json(const nlohmann::json& doc);
Instance parse_instance_text(std::string_view text, const std::string& origin = "<input>");
Instance parse_instance(const std::filesystem::path& path);
void write_instance(const Instance& instance, const std::filesystem::path& path);

/// [{"org": i, "job": j, "machine": g, "completion": c}, ...] in (org, job)
/// order; unassigned jobs are left out.
nlohmann::json schedule_to_json(const Schedule& schedule);
/// Accepts a bare list or an object with a "schedule" list. Jobs missing
/// from the list stay unassigned.
Schedule schedule_from_json(const Instance& instance, const nlohmann::json& doc);
Schedule parse_schedule(const Instance& instance, const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const nlohmann::json& doc, const std::filesystem::path& path);

}  // namespace mosp

#endif  // MOSP_IO_HPP
