#include "sic/channel.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "sic/kernels.hpp"

namespace sic::channel {

void ScenarioConfig::validate() const {
    if (si_taps.empty()) throw std::invalid_argument("scenario: si_taps empty");
    if (a1 == 0.0) throw std::invalid_argument("scenario: a1 must be nonzero");
    if (std::isnan(snr_db)) throw std::invalid_argument("scenario: snr_db is NaN");
    if (delay_samples < 0) throw std::invalid_argument("scenario: negative delay");
}

CVec add_noise(const CVec& x, double noise_power, Rng& rng) {
    if (noise_power == 0.0) return x;
    double sigma = std::sqrt(noise_power / 2.0);  // per component
    CVec y(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) y[n] = x[n] + rng.cgaussian(sigma);
    return y;
}

CVec add_awgn(const CVec& x, double snr_db, Rng& rng) {
    if (std::isinf(snr_db) && snr_db > 0) return x;
    double p = mean_power(x);
    return add_noise(x, p / std::pow(10.0, snr_db / 10.0), rng);
}

CVec apply_path(const CVec& x, const CVec& taps, double a1, double a3,
                double snr_db, int delay_samples, Rng& rng) {
    if (x.empty()) throw std::invalid_argument("apply_path: empty input");
    CVec v = kernels::fir(x, taps);
    if (a1 != 1.0 || a3 != 0.0)
        for (cplx& s : v) s = a1 * s + a3 * s * std::norm(s);
    v = add_awgn(v, snr_db, rng);
    if (delay_samples > 0) v.insert(v.begin(), std::size_t(delay_samples), cplx{0.0});
    return v;
}

CVec apply_channel(const CVec& x, const ScenarioConfig& cfg, Rng& rng) {
    cfg.validate();
    return apply_path(x, cfg.si_taps, cfg.a1, cfg.a3, cfg.snr_db, cfg.delay_samples, rng);
}

CVec apply_useful(const CVec& x, const ScenarioConfig& cfg) {
    cfg.validate();
    return kernels::fir(x, cfg.useful_taps);
}

CVec mix(const CVec& si, const CVec& useful) {
    if (si.size() != useful.size())
        throw std::invalid_argument("mix: length mismatch (" + std::to_string(si.size()) +
                                    " vs " + std::to_string(useful.size()) + ")");
    CVec y(si.size());
    for (std::size_t n = 0; n < y.size(); ++n) y[n] = si[n] + useful[n];
    return y;
}

double mean_power(const CVec& x) {
    if (x.empty()) throw std::invalid_argument("mean_power: empty input");
    double acc = 0.0;
    for (const cplx& s : x) acc += std::norm(s);
    return acc / double(x.size());
}

double relative_power_db(const CVec& x) {
    double p = mean_power(x);
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(p);
}

ScenarioConfig scenario(const std::string& name) {
    ScenarioConfig cfg;
    cfg.name = name;
    const double inf = std::numeric_limits<double>::infinity();
    if (name == "validation") {
        // the two-tap linear check: useful taps [1], SI taps [1, 1]
        cfg.si_taps = {cplx{1.0}, cplx{1.0}};
        cfg.useful_taps = {cplx{1.0}};
        cfg.a3 = 0.0;
        cfg.snr_db = inf;
        cfg.delay_samples = 0;
        cfg.seed = 1;
    } else if (name == "outdoor") {
        // fewest taps, highest SNR of the four environments
        cfg.si_taps = {cplx{1.0, 0.0}, cplx{0.15, -0.07}, cplx{0.04, 0.02}};
        cfg.useful_taps = {cplx{1.0}};
        cfg.a3 = 0.05;
        cfg.snr_db = 18.0;
        cfg.delay_samples = 17;
        cfg.seed = 2;
    } else if (name == "room1") {
        cfg.si_taps = {cplx{1.0, 0.0}, cplx{0.28, -0.10}, cplx{0.12, 0.06}, cplx{0.05, 0.0}};
        cfg.useful_taps = {cplx{1.0}};
        cfg.a3 = 0.05;
        cfg.snr_db = 15.0;
        cfg.delay_samples = 23;
        cfg.seed = 3;
    } else if (name == "room2") {
        cfg.si_taps = {cplx{1.0, 0.0}, cplx{0.32, 0.12}, cplx{0.18, -0.08},
                       cplx{0.09, 0.0}, cplx{0.0, 0.04}};
        cfg.useful_taps = {cplx{1.0}, cplx{0.05, 0.0}};
        cfg.a3 = 0.05;
        cfg.snr_db = 13.0;
        cfg.delay_samples = 31;
        cfg.seed = 4;
    } else if (name == "hallway") {
        // most taps, lowest SNR: the harshest preset
        cfg.si_taps = {cplx{1.0, 0.0},  cplx{0.40, -0.15}, cplx{0.25, 0.12},
                       cplx{0.15, -0.07}, cplx{0.10, 0.05}, cplx{0.06, 0.0},
                       cplx{0.0, 0.03}};
        cfg.useful_taps = {cplx{1.0}, cplx{0.08, -0.03}};
        cfg.a3 = 0.05;
        cfg.snr_db = 10.0;
        cfg.delay_samples = 41;
        cfg.seed = 5;
    } else {
        std::string valid;
        for (const auto& n : scenario_names()) valid += (valid.empty() ? "" : ", ") + n;
        throw std::invalid_argument("unknown scenario '" + name + "' (valid: " + valid + ")");
    }
    return cfg;
}

std::vector<std::string> scenario_names() {
    return {"room1", "room2", "outdoor", "hallway", "validation"};
}

namespace {

nlohmann::json taps_to_json(const CVec& taps) {
    nlohmann::json a = nlohmann::json::array();
    for (const cplx& t : taps) a.push_back({t.real(), t.imag()});
    return a;
}

CVec taps_from_json(const nlohmann::json& a) {
    CVec taps;
    for (const auto& p : a) taps.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    return taps;
}

}  // namespace

std::string to_json(const ScenarioConfig& cfg) {
    nlohmann::json j;
    j["name"] = cfg.name;
    j["si_taps"] = taps_to_json(cfg.si_taps);
    j["useful_taps"] = taps_to_json(cfg.useful_taps);
    j["nl_coeffs"] = {{"a1", cfg.a1}, {"a3", cfg.a3}};
    if (cfg.noiseless())
        j["snr_db"] = nullptr;  // null means noiseless
    else
        j["snr_db"] = cfg.snr_db;
    j["delay"] = cfg.delay_samples;
    j["seed"] = cfg.seed;
    return j.dump(2);
}

ScenarioConfig from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw format_error(std::string("scenario json: ") + e.what());
    }
    try {
        ScenarioConfig cfg;
        cfg.name = j.at("name").get<std::string>();
        cfg.si_taps = taps_from_json(j.at("si_taps"));
        cfg.useful_taps = taps_from_json(j.at("useful_taps"));
        cfg.a1 = j.at("nl_coeffs").at("a1").get<double>();
        cfg.a3 = j.at("nl_coeffs").at("a3").get<double>();
        if (j.at("snr_db").is_null())
            cfg.snr_db = std::numeric_limits<double>::infinity();
        else
            cfg.snr_db = j.at("snr_db").get<double>();
        cfg.delay_samples = j.at("delay").get<int>();
        cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.validate();
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("scenario json: ") + e.what());
    }
}

void save_scenario(const ScenarioConfig& cfg, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw io_error("cannot open " + path + " for writing");
    f << to_json(cfg) << "\n";
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return from_json(text);
}

}  // namespace sic::channel
