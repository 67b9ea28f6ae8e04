#include "oseval/types.hpp"

#include <algorithm>
#include <cmath>

namespace oseval {

bool BoundingBox::valid() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(width) &&
         std::isfinite(height) && width > 0.0 && height > 0.0;
}

std::optional<std::size_t> Gallery::position_of(int subject_id) const {
  const auto it = std::find(subject_ids.begin(), subject_ids.end(), subject_id);
  if (it == subject_ids.end()) return std::nullopt;
  return static_cast<std::size_t>(it - subject_ids.begin());
}

void ValidationReport::warn(std::string location, std::string message) {
  errors.push_back({Severity::warning, std::move(location), std::move(message)});
}

void ValidationReport::fatal(std::string location, std::string message) {
  errors.push_back({Severity::fatal, std::move(location), std::move(message)});
}

void ValidationReport::merge(const ValidationReport& other) {
  errors.insert(errors.end(), other.errors.begin(), other.errors.end());
  for (const auto& [key, n] : other.counts) counts[key] += n;
}

bool ValidationReport::has_fatal() const { return num_fatal() > 0; }

std::size_t ValidationReport::num_warnings() const {
  return static_cast<std::size_t>(std::count_if(
      errors.begin(), errors.end(), [](const auto& e) { return e.severity == Severity::warning; }));
}

std::size_t ValidationReport::num_fatal() const {
  return errors.size() - num_warnings();
}

namespace {

std::string first_fatal_message(const ValidationReport& report) {
  for (const auto& e : report.errors) {
    if (e.severity == Severity::fatal) return e.location + ": " + e.message;
  }
  return "invalid input";
}

}  // namespace

InputError::InputError(ValidationReport report)
    : std::runtime_error(first_fatal_message(report)), report_(std::move(report)) {}

}  // namespace oseval
