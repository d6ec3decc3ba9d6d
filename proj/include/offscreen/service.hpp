#ifndef OFFSCREEN_SERVICE_HPP
#define OFFSCREEN_SERVICE_HPP

#include "offscreen/io.hpp"
#include "offscreen/scagnostics.hpp"
#include "offscreen/scenario.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace httplib {
class Server;
}

namespace offscreen {

struct ServiceConfig {
    std::uint64_t seed{1};
    int participants{18};
    std::string response_log{"responses.csv"};
    ExperimentLayout layout{};
};

/// Status code and JSON body of one request.
struct Reply {
    int status{200};
    std::string body;
};

/// The request handlers, independent of the transport so they can be called
/// directly. Trials and datasets are generated on first use and cached; the
/// response log is the only state that changes.
class Service {
public:
    explicit Service(ServiceConfig cfg);

    Reply frame(const std::string& body) const;
    Reply trials(int task, int participant);
    Reply post_response(const std::string& body);
    Reply dataset(int id) const;

    /// Registers the routes on `server`.
    void mount(httplib::Server& server);

    const ServiceConfig& config() const { return cfg_; }

private:
    const std::vector<Trial>& trials_for(Task task);
    const Trial* find_trial(const std::string& id);

    ServiceConfig cfg_;
    std::vector<Archetype> datasets_;
    std::mutex trials_mutex_;
    std::map<Task, std::vector<Trial>> trials_;
    std::unordered_map<std::string, const Trial*> by_id_;
    std::mutex log_mutex_;
};

}  // namespace offscreen

#endif  // OFFSCREEN_SERVICE_HPP
