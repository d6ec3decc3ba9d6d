#ifndef OFFSCREEN_ANALYZE_HPP
#define OFFSCREEN_ANALYZE_HPP

#include "offscreen/scenario.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace offscreen {

/// One response matched to its trial and scored.
struct ScoredResponse {
    Response response;
    Task task{Task::t1};
    BorderMode border{BorderMode::fixed};
    std::optional<HubMode> hub;
    std::optional<Classification> classification;  // Task 1
    std::optional<bool> correct;                    // Tasks 2 and 3
};

/// Descriptive statistics of one (task, border, hub) condition.
struct ConditionSummary {
    Task task{Task::t1};
    BorderMode border{BorderMode::fixed};
    std::optional<HubMode> hub;
    int n{0};
    int ties{0};
    std::optional<double> pct_orthographic;
    std::optional<double> mean_dist_ortho_px;
    std::optional<double> median_dist_ortho_px;
    std::optional<double> mean_dist_radial_px;
    std::optional<double> median_dist_radial_px;
    std::optional<double> accuracy;
    double mean_elapsed_ms{0};
    double median_elapsed_ms{0};
};

/// Matches every response to its trial. Responses naming unknown trials are
/// collected and reported together in one error.
std::vector<ScoredResponse> score_responses(const std::vector<Trial>& trials, const std::vector<Response>& responses,
                                            const ExperimentLayout& layout = {});

/// Conditions appear in (task, border, hub) order; empty input gives no rows.
std::vector<ConditionSummary> summarize(const std::vector<ScoredResponse>& scored);

void write_summary_csv(std::ostream& out, const std::vector<ConditionSummary>& rows);
void write_scored_csv(std::ostream& out, const std::vector<ScoredResponse>& scored);

}  // namespace offscreen

#endif  // OFFSCREEN_ANALYZE_HPP
