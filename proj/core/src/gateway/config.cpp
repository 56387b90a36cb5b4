#include "safegate/gateway/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "safegate/error.hpp"
#include "safegate/messaging/outbox.hpp"

namespace safegate::gateway {

using nlohmann::json;

change::ChangeConfig GatewayConfig::change_config() const {
    change::ChangeConfig c;
    c.strategy = change::parse_strategy(strategy);
    c.area_threshold = area_threshold;
    c.closing_iterations = closing_iterations;
    c.validate();
    return c;
}

void GatewayConfig::validate() const {
    if (relock_interval_s <= 0) throw InvalidParameter("relock_interval_s must be positive");
    if (notify_interval_s < 0) throw InvalidParameter("notify_interval_s must be non-negative");
    if (segment_gap_s < 0) throw InvalidParameter("segment_gap_s must be non-negative");
    if (recording_window_min <= 0) throw InvalidParameter("recording_window_min must be positive");
    if (token_ttl_s < 0) throw InvalidParameter("token_ttl_s must be non-negative");
    if (model_retention < 1) throw InvalidParameter("model_retention must be at least 1");
    if (port < 0 || port > 65535) throw InvalidParameter("port out of range");
    if (detector != "oracle" && detector != "motion" && detector != "auto")
        throw InvalidParameter("unknown detector: " + detector);
    (void)messaging::parse_channel(channel);
    (void)change_config();
}

GatewayConfig GatewayConfig::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidParameter(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw InvalidParameter("config must be a JSON object");

    static const std::set<std::string> known{
        "key_path",         "relock_interval_s", "notify_interval_s", "area_threshold",   "strategy",
        "closing_iterations", "outbox_dir",      "store_dir",         "host",             "port",
        "detector",         "channel",           "resident_contact",  "harmful_lexicon",  "pluralize",
        "segment_gap_s",    "recording_window_min", "token_ttl_s",    "model_retention"};
    for (const auto& [k, v] : j.items()) {
        if (!known.count(k)) throw InvalidParameter("unknown config key: " + k);
    }

    GatewayConfig c;
    try {
        if (j.contains("key_path") && !j["key_path"].is_null())
            c.key_path = j["key_path"].get<std::string>();
        c.relock_interval_s = j.value("relock_interval_s", c.relock_interval_s);
        c.notify_interval_s = j.value("notify_interval_s", c.notify_interval_s);
        c.area_threshold = j.value("area_threshold", c.area_threshold);
        c.strategy = j.value("strategy", c.strategy);
        c.closing_iterations = j.value("closing_iterations", c.closing_iterations);
        if (j.contains("outbox_dir")) c.outbox_dir = j["outbox_dir"].get<std::string>();
        if (j.contains("store_dir")) c.store_dir = j["store_dir"].get<std::string>();
        c.host = j.value("host", c.host);
        c.port = j.value("port", c.port);
        c.detector = j.value("detector", c.detector);
        c.channel = j.value("channel", c.channel);
        c.resident_contact = j.value("resident_contact", c.resident_contact);
        if (j.contains("harmful_lexicon"))
            c.harmful_lexicon = j["harmful_lexicon"].get<std::vector<std::string>>();
        c.pluralize = j.value("pluralize", c.pluralize);
        c.segment_gap_s = j.value("segment_gap_s", c.segment_gap_s);
        c.recording_window_min = j.value("recording_window_min", c.recording_window_min);
        c.token_ttl_s = j.value("token_ttl_s", c.token_ttl_s);
        c.model_retention = j.value("model_retention", c.model_retention);
    } catch (const json::exception& e) {
        throw InvalidParameter(std::string("bad config field: ") + e.what());
    }
    c.validate();
    return c;
}

GatewayConfig GatewayConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    GatewayConfig c = from_json(ss.str());
    const auto base = path.parent_path();
    auto anchor = [&](std::filesystem::path& p) {
        if (p.is_relative()) p = base / p;
    };
    anchor(c.outbox_dir);
    anchor(c.store_dir);
    if (c.key_path) anchor(*c.key_path);
    return c;
}

}  // namespace safegate::gateway
