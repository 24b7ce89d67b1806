#include "eigenshape/config.hpp"

#include "eigenshape/errors.hpp"

#include <fstream>
#include <set>

namespace eigenshape {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : j.items())
        if (!allowed.contains(key)) throw InvalidArgument("config: unknown key '" + key + "' in " + where);
}

template <class T>
T get(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw InvalidArgument("config: missing '" + key + "' in " + where);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidArgument("config: '" + key + "' in " + where + " has the wrong type");
    }
}

int positive_count(const json& v) {
    if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > (1 << 24))
        throw InvalidArgument("config: resolution entries must be positive integers");
    return v.get<int>();
}

} // namespace

double RunConfig::volume_fraction() const {
    if (c) return *c;
    if (m0) return (1.0 - *m0) / (kappa + 1.0);
    throw InvalidArgument("config: neither c nor m0 given");
}

Mesh RunConfig::build_mesh() const {
    switch (domain) {
    case DomainKind::Interval: return gen_interval(nx);
    case DomainKind::Rectangle: return gen_rectangle(lx, ly, nx, ny);
    case DomainKind::Disk: return gen_disk(radius, nx);
    }
    throw InvalidArgument("config: unknown domain");
}

Mesh RunConfig::build_refined_mesh() const {
    RunConfig fine = *this;
    fine.nx *= 2;
    fine.ny *= 2;
    return fine.build_mesh();
}

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw InvalidArgument("config: top level must be an object");
    reject_unknown(j, {"domain", "resolution", "bc", "kappa", "c", "m0", "seeds", "output_dir", "threads", "options"},
                   "config");
    RunConfig cfg;

    const json domain = get<json>(j, "domain", "config");
    const auto dtype = get<std::string>(domain, "type", "domain");
    if (dtype == "interval") {
        reject_unknown(domain, {"type"}, "domain");
        cfg.domain = RunConfig::DomainKind::Interval;
    } else if (dtype == "rectangle") {
        reject_unknown(domain, {"type", "lx", "ly"}, "domain");
        cfg.domain = RunConfig::DomainKind::Rectangle;
        cfg.lx = get<double>(domain, "lx", "domain");
        cfg.ly = get<double>(domain, "ly", "domain");
        if (!(cfg.lx > 0.0 && cfg.ly > 0.0)) throw InvalidArgument("config: rectangle sides must be positive");
    } else if (dtype == "disk") {
        reject_unknown(domain, {"type", "R"}, "domain");
        cfg.domain = RunConfig::DomainKind::Disk;
        cfg.radius = get<double>(domain, "R", "domain");
        if (!(cfg.radius > 0.0)) throw InvalidArgument("config: disk radius must be positive");
    } else {
        throw InvalidArgument("config: unknown domain type '" + dtype + "'");
    }

    const json res = get<json>(j, "resolution", "config");
    if (res.is_array()) {
        if (res.size() != 2) throw InvalidArgument("config: resolution array must be [nx, ny]");
        cfg.nx = positive_count(res[0]);
        cfg.ny = positive_count(res[1]);
    } else {
        cfg.nx = cfg.ny = positive_count(res);
    }

    const json bc = get<json>(j, "bc", "config");
    const auto btype = get<std::string>(bc, "type", "bc");
    if (btype == "neumann") {
        reject_unknown(bc, {"type"}, "bc");
        cfg.bc = BoundaryCondition::neumann();
    } else if (btype == "robin") {
        reject_unknown(bc, {"type", "beta"}, "bc");
        cfg.bc = BoundaryCondition::robin(get<double>(bc, "beta", "bc"));
    } else if (btype == "dirichlet") {
        reject_unknown(bc, {"type"}, "bc");
        cfg.bc = BoundaryCondition::dirichlet();
    } else {
        throw InvalidArgument("config: unknown bc type '" + btype + "'");
    }

    cfg.kappa = get<double>(j, "kappa", "config");
    if (!(cfg.kappa > 0.0)) throw InvalidArgument("config: kappa must be positive");
    if (j.contains("c") == j.contains("m0")) throw InvalidArgument("config: give exactly one of c and m0");
    if (j.contains("c")) cfg.c = get<double>(j, "c", "config");
    if (j.contains("m0")) cfg.m0 = get<double>(j, "m0", "config");
    const double c = cfg.volume_fraction();
    if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("config: the volume fraction c must lie in (0,1)");

    if (j.contains("seeds")) cfg.seeds = get<std::vector<std::uint64_t>>(j, "seeds", "config");
    if (cfg.seeds.empty()) throw InvalidArgument("config: seeds must not be empty");
    if (j.contains("output_dir")) cfg.output_dir = get<std::string>(j, "output_dir", "config");
    if (j.contains("threads")) cfg.threads = get<int>(j, "threads", "config");
    if (cfg.threads < 0) throw InvalidArgument("config: threads must be nonnegative");
    if (j.contains("options")) {
        cfg.options = j.at("options");
        if (!cfg.options.is_object()) throw InvalidArgument("config: options must be an object");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("config: cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("config: ") + e.what());
    }
    return parse_config(j);
}

json to_json(const RunConfig& cfg) {
    json j;
    switch (cfg.domain) {
    case RunConfig::DomainKind::Interval: j["domain"] = {{"type", "interval"}}; break;
    case RunConfig::DomainKind::Rectangle: j["domain"] = {{"type", "rectangle"}, {"lx", cfg.lx}, {"ly", cfg.ly}}; break;
    case RunConfig::DomainKind::Disk: j["domain"] = {{"type", "disk"}, {"R", cfg.radius}}; break;
    }
    j["resolution"] = cfg.nx == cfg.ny ? json(cfg.nx) : json::array({cfg.nx, cfg.ny});
    if (cfg.bc.is_dirichlet())
        j["bc"] = {{"type", "dirichlet"}};
    else if (cfg.bc.is_neumann())
        j["bc"] = {{"type", "neumann"}};
    else
        j["bc"] = {{"type", "robin"}, {"beta", cfg.bc.beta}};
    j["kappa"] = cfg.kappa;
    if (cfg.c) j["c"] = *cfg.c;
    if (cfg.m0) j["m0"] = *cfg.m0;
    j["seeds"] = cfg.seeds;
    j["output_dir"] = cfg.output_dir;
    j["threads"] = cfg.threads;
    j["options"] = cfg.options;
    return j;
}

} // namespace eigenshape
