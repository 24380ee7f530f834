#pragma once

#include <nlohmann/json.hpp>
#include <span>
#include <string>

#include "defprior/empirical_bayes.hpp"
#include "defprior/posterior.hpp"
#include "defprior/verification.hpp"

namespace defprior {

std::string to_string(ModelKind kind);
std::string to_string(CheckStatus status);
std::string to_string(PassWhen when);

nlohmann::json to_json(const Interval& interval);
nlohmann::json to_json(const PosteriorSummary& summary);
nlohmann::json to_json(const EBFit& fit);
nlohmann::json to_json(const DroppedRecord& dropped);
nlohmann::json dropped_report(std::span<const DroppedRecord> dropped);
nlohmann::json to_json(const SimulationReport& report);

}  // namespace defprior
