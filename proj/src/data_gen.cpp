#include "heatbvm/data_gen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "heatbvm/io_util.hpp"
#include "heatbvm/rng.hpp"

namespace heatbvm {

Observations generate(const TruthSpec& truth, double T, double n, int m, std::uint64_t seed,
                      double noise_scale) {
    if (!(n > 0.0)) throw std::invalid_argument("generate: n must be > 0");
    if (!(T > 0.0)) throw std::invalid_argument("generate: T must be > 0");
    if (!(noise_scale >= 0.0)) throw std::invalid_argument("generate: noise_scale must be >= 0");
    if (m < 1 || m > truth.f0.truncation()) {
        throw std::invalid_argument("generate: m must be in [1, truncation of f0]");
    }
    const double c = std::numbers::pi * std::numbers::pi * T;
    const double noise_sd = noise_scale / std::sqrt(n);

    Observations obs;
    obs.x1.resize(static_cast<std::size_t>(m));
    obs.x2.resize(static_cast<std::size_t>(m));
    obs.n = n;
    obs.T = T;
    obs.theta0 = truth.theta0.value();
    obs.seed = seed;
    for (int k = 1; k <= m; ++k) {
        const double kk = static_cast<double>(k) * static_cast<double>(k);
        const double f0k = truth.f0.coeff(k);
        GaussianStream z1(seed, Stream::noise_channel1, static_cast<std::uint64_t>(k));
        GaussianStream z2(seed, Stream::noise_channel2, static_cast<std::uint64_t>(k));
        obs.x1[static_cast<std::size_t>(k - 1)] = f0k + noise_sd * z1.next();
        obs.x2[static_cast<std::size_t>(k - 1)] =
            std::exp(-c * truth.theta0.value() * kk) * f0k + noise_sd * z2.next();
    }
    return obs;
}

namespace {

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
    std::filesystem::path p = csv_path;
    p.replace_extension(".meta.json");
    return p;
}

}  // namespace

void save_observations_csv(const Observations& obs, const std::filesystem::path& csv_path) {
    std::string csv = "k,x1,x2\n";
    for (int k = 1; k <= obs.truncation(); ++k) {
        csv += std::to_string(k);
        csv += ',';
        csv += format_double(obs.x1[static_cast<std::size_t>(k - 1)]);
        csv += ',';
        csv += format_double(obs.x2[static_cast<std::size_t>(k - 1)]);
        csv += '\n';
    }
    write_text_file(csv_path, csv);

    nlohmann::ordered_json meta;
    meta["n"] = obs.n;
    meta["m"] = obs.truncation();
    meta["T"] = obs.T;
    meta["theta0"] = obs.theta0;
    meta["seed"] = obs.seed;
    write_text_file(sidecar_path(csv_path), meta.dump(2) + "\n");
}

Observations load_observations_csv(const std::filesystem::path& csv_path) {
    const std::string text = read_text_file(csv_path);
    Observations obs;

    std::size_t pos = text.find('\n');
    if (pos == std::string::npos || text.substr(0, pos) != "k,x1,x2") {
        throw std::runtime_error("observations csv: bad header in " + csv_path.string());
    }
    ++pos;
    int expected_k = 1;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        const std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) continue;
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw std::runtime_error("observations csv: malformed row '" + line + "'");
        }
        const std::string context = "observations csv " + csv_path.string();
        if (parse_csv_int(line.substr(0, c1), context) != expected_k) {
            throw std::runtime_error("observations csv: rows must be numbered 1..m in order");
        }
        obs.x1.push_back(parse_csv_double(line.substr(c1 + 1, c2 - c1 - 1), context));
        obs.x2.push_back(parse_csv_double(line.substr(c2 + 1), context));
        ++expected_k;
    }
    if (obs.x1.empty()) throw std::runtime_error("observations csv: no rows");

    const auto meta = nlohmann::json::parse(read_text_file(sidecar_path(csv_path)));
    obs.n = meta.at("n").get<double>();
    obs.T = meta.at("T").get<double>();
    obs.theta0 = meta.at("theta0").get<double>();
    obs.seed = meta.at("seed").get<std::uint64_t>();
    if (meta.at("m").get<int>() != obs.truncation()) {
        throw std::runtime_error("observations csv: sidecar m disagrees with row count");
    }
    return obs;
}

}  // namespace heatbvm
