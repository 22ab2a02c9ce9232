#include "secrely/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "secrely/errors.hpp"

namespace secrely {

namespace {

using nlohmann::json;

json parse_file(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw ConfigError(std::string("cannot open ") + what + " file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string(what) + " is not valid JSON (" + path + "): " + e.what());
    }
}

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError("missing required field: " + key);
    if (!j.at(key).is_number()) throw ConfigError("field " + key + " must be a number");
    return j.at(key).get<double>();
}

void reject_unknown_keys(const json& j, const std::set<std::string>& known, const char* what) {
    for (const auto& item : j.items()) {
        if (!known.count(item.key())) {
            throw ConfigError(std::string("unknown ") + what + " field: " + item.key());
        }
    }
}

LinkTarget parse_link_target(const std::string& s) {
    if (s == "gamma_c") return LinkTarget::GammaC;
    if (s == "gamma_ce") return LinkTarget::GammaCe;
    if (s == "avg_snr_sd") return LinkTarget::AvgSnrSd;
    if (s == "avg_snr_sr") return LinkTarget::AvgSnrSr;
    if (s == "avg_snr_rd") return LinkTarget::AvgSnrRd;
    if (s == "avg_snr_se") return LinkTarget::AvgSnrSe;
    if (s == "avg_snr_sb") return LinkTarget::AvgSnrSb;
    if (s == "avg_snr_be") return LinkTarget::AvgSnrBe;
    throw ConfigError("unknown linkage target: " + s);
}

LinkSource parse_link_source(const std::string& s) {
    if (s == "avg_snr_sd") return LinkSource::AvgSnrSd;
    if (s == "avg_snr_sr") return LinkSource::AvgSnrSr;
    if (s == "avg_snr_rd") return LinkSource::AvgSnrRd;
    if (s == "avg_snr_se") return LinkSource::AvgSnrSe;
    if (s == "avg_snr_sb") return LinkSource::AvgSnrSb;
    if (s == "avg_snr_be") return LinkSource::AvgSnrBe;
    throw ConfigError("unknown linkage source: " + s);
}

SweepAxis parse_axis(const std::string& s) {
    if (s == "avg_snr_sd_db") return SweepAxis::AvgSnrSdDb;
    if (s == "rho") return SweepAxis::Rho;
    if (s == "avg_snr_se_db") return SweepAxis::AvgSnrSeDb;
    if (s == "target_rate") return SweepAxis::TargetRate;
    throw ConfigError("unknown sweep axis: " + s +
                      " (expected avg_snr_sd_db | rho | avg_snr_se_db | target_rate)");
}

}  // namespace

SystemConfig load_config_json(const std::string& path) {
    const json j = parse_file(path, "config");
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown_keys(j,
                        {"n_relays", "rho", "avg_snr_sd_db", "avg_snr_sr_db", "avg_snr_rd_db",
                         "avg_snr_se_db", "avg_snr_sb_db", "avg_snr_be_db", "target_rate",
                         "rate_prefactor"},
                        "config");

    SystemConfig c;
    const double n_relays = require_number(j, "n_relays");
    if (n_relays != static_cast<double>(static_cast<int>(n_relays))) {
        throw ConfigError("field n_relays must be an integer");
    }
    c.n_relays = static_cast<int>(n_relays);
    c.rho = require_number(j, "rho");
    c.avg_snr_sd = db_to_linear(require_number(j, "avg_snr_sd_db"));
    c.avg_snr_sr = db_to_linear(require_number(j, "avg_snr_sr_db"));
    c.avg_snr_rd = db_to_linear(require_number(j, "avg_snr_rd_db"));
    c.avg_snr_se = db_to_linear(require_number(j, "avg_snr_se_db"));
    c.avg_snr_sb = db_to_linear(require_number(j, "avg_snr_sb_db"));
    c.avg_snr_be = db_to_linear(require_number(j, "avg_snr_be_db"));
    c.target_rate = require_number(j, "target_rate");
    if (j.contains("rate_prefactor")) {
        if (!j.at("rate_prefactor").is_string()) {
            throw ConfigError("field rate_prefactor must be \"half\" or \"unit\"");
        }
        const std::string p = j.at("rate_prefactor").get<std::string>();
        if (p == "half") c.rate_prefactor = RatePrefactor::Half;
        else if (p == "unit") c.rate_prefactor = RatePrefactor::Unit;
        else throw ConfigError("field rate_prefactor must be \"half\" or \"unit\", got \"" + p + "\"");
    }
    return validate(c);
}

SweepSpec load_sweep_json(const std::string& path, const SystemConfig& base) {
    const json j = parse_file(path, "sweep");
    if (!j.is_object()) throw ConfigError("sweep must be a JSON object");
    reject_unknown_keys(j, {"axis", "grid", "linkage"}, "sweep");

    SweepSpec spec;
    spec.base = base;
    if (!j.contains("axis") || !j.at("axis").is_string()) {
        throw ConfigError("sweep requires a string field \"axis\"");
    }
    spec.axis = parse_axis(j.at("axis").get<std::string>());

    if (!j.contains("grid") || !j.at("grid").is_array()) {
        throw ConfigError("sweep requires an array field \"grid\"");
    }
    for (const json& v : j.at("grid")) {
        if (!v.is_number()) throw ConfigError("sweep grid entries must be numbers");
        spec.grid.push_back(v.get<double>());
    }

    if (j.contains("linkage")) {
        if (!j.at("linkage").is_array()) throw ConfigError("sweep linkage must be an array");
        for (const json& r : j.at("linkage")) {
            if (!r.is_object()) throw ConfigError("linkage rules must be objects");
            reject_unknown_keys(r, {"target", "source", "factor"}, "linkage rule");
            if (!r.contains("target") || !r.at("target").is_string() ||
                !r.contains("source") || !r.at("source").is_string()) {
                throw ConfigError("linkage rules require string fields target and source");
            }
            LinkageRule rule;
            rule.target = parse_link_target(r.at("target").get<std::string>());
            rule.source = parse_link_source(r.at("source").get<std::string>());
            rule.factor = require_number(r, "factor");
            if (!(rule.factor > 0.0) || !std::isfinite(rule.factor)) {
                throw ConfigError("linkage factor must be a positive finite number");
            }
            spec.linkage.push_back(rule);
        }
    }

    validate_sweep(spec);
    return spec;
}

}  // namespace secrely
