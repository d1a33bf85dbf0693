#include "hypdla/run_record.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "hypdla/errors.hpp"

namespace hypdla {

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* mode_name(GrowthMode m) { return m == GrowthMode::discrete ? "discrete" : "continuous"; }

GrowthMode mode_from(const std::string& s, long line) {
    if (s == "discrete") return GrowthMode::discrete;
    if (s == "continuous") return GrowthMode::continuous;
    throw MalformedRecord(line, "unknown mode '" + s + "'");
}

template <typename T>
T field(const nlohmann::json& j, const char* key, long line) {
    const auto it = j.find(key);
    if (it == j.end()) throw MalformedRecord(line, std::string("missing key '") + key + "'");
    try {
        return it->get<T>();
    } catch (const nlohmann::json::exception&) {
        throw MalformedRecord(line, std::string("bad value for key '") + key + "'");
    }
}

}  // namespace

std::string RunRecord::serialize() const {
    std::string out;
    out.reserve(64 * (rows.size() + 1));
    out += "{\"version\": ";
    out += std::to_string(version);
    out += ", \"seed\": ";
    out += std::to_string(meta.seed);
    out += ", \"mode\": \"";
    out += mode_name(meta.mode);
    out += "\", \"n_particles\": ";
    out += std::to_string(meta.n_particles);
    out += ", \"eps_offset\": ";
    out += fmt17(meta.probe.eps_offset);
    out += ", \"hit_shell\": ";
    out += fmt17(meta.probe.hit_shell);
    out += ", \"floor_shell\": ";
    out += fmt17(meta.probe.floor_shell);
    out += ", \"far_cutoff\": ";
    out += fmt17(meta.probe.far_cutoff);
    out += ", \"max_steps\": ";
    out += std::to_string(meta.probe.max_steps);
    out += ", \"capacity_probes\": ";
    out += std::to_string(meta.capacity_probes);
    out += ", \"emb_alpha\": ";
    out += fmt17(meta.embedding.alpha);
    out += ", \"emb_beta\": ";
    out += fmt17(meta.embedding.beta);
    out += ", \"emb_reflect\": ";
    out += meta.embedding.reflect ? "true" : "false";
    out += ", \"fixture\": ";
    out += meta.fixture ? "true" : "false";
    out += ", \"total_trials\": ";
    out += std::to_string(total_trials);
    if (meta.mode == GrowthMode::continuous) {
        out += ", \"cap0\": ";
        out += fmt17(std::isfinite(cap0) ? cap0 : 0.0);
        out += ", \"cap0_se\": ";
        out += fmt17(std::isfinite(cap0_se) ? cap0_se : 0.0);
    }
    out += "}\n";

    const bool continuous = meta.mode == GrowthMode::continuous;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Particle& p = rows[i];
        out += "{\"i\": ";
        out += std::to_string(i);
        out += ", \"x\": ";
        out += fmt17(p.center.x);
        out += ", \"y\": ";
        out += fmt17(p.center.y);
        out += ", \"t\": ";
        out += fmt17(p.birth_time);
        out += ", \"parent\": ";
        out += std::to_string(p.parent);
        out += ", \"trials\": ";
        out += std::to_string(p.trials);
        if (continuous && i >= 1) {
            // capacity of the aggregate this particle attached to (clock rate of its wait)
            out += ", \"cap\": ";
            out += fmt17(std::isfinite(p.cap) ? p.cap : 0.0);
            out += ", \"cap_se\": ";
            out += fmt17(std::isfinite(p.cap_se) ? p.cap_se : 0.0);
        }
        out += "}\n";
    }
    return out;
}

RunRecord RunRecord::parse(std::istream& in) {
    RunRecord rec;
    std::string line;
    long line_no = 1;
    if (!std::getline(in, line)) throw MalformedRecord(1, "empty record");
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedRecord(1, e.what());
    }
    rec.version = field<int>(header, "version", 1);
    rec.meta.seed = field<std::uint64_t>(header, "seed", 1);
    rec.meta.mode = mode_from(field<std::string>(header, "mode", 1), 1);
    rec.meta.n_particles = field<long>(header, "n_particles", 1);
    rec.meta.probe.eps_offset = field<double>(header, "eps_offset", 1);
    rec.meta.probe.hit_shell = field<double>(header, "hit_shell", 1);
    rec.meta.probe.floor_shell = field<double>(header, "floor_shell", 1);
    rec.meta.probe.far_cutoff = field<double>(header, "far_cutoff", 1);
    rec.meta.probe.max_steps = field<long>(header, "max_steps", 1);
    rec.meta.capacity_probes = field<long>(header, "capacity_probes", 1);
    const double emb_alpha = field<double>(header, "emb_alpha", 1);
    const double emb_beta = field<double>(header, "emb_beta", 1);
    const bool emb_reflect = field<bool>(header, "emb_reflect", 1);
    try {
        rec.meta.embedding = HypIsometry(emb_alpha, emb_beta, emb_reflect);
    } catch (const std::invalid_argument& e) {
        throw MalformedRecord(1, e.what());
    }
    rec.meta.fixture = field<bool>(header, "fixture", 1);
    rec.total_trials = field<long>(header, "total_trials", 1);
    if (rec.meta.mode == GrowthMode::continuous) {
        rec.cap0 = field<double>(header, "cap0", 1);
        rec.cap0_se = field<double>(header, "cap0_se", 1);
    }

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json row;
        try {
            row = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw MalformedRecord(line_no, e.what());
        }
        const long i = field<long>(row, "i", line_no);
        if (i != static_cast<long>(rec.rows.size()))
            throw MalformedRecord(line_no, "row index " + std::to_string(i) + " out of order");
        Particle p;
        const double x = field<double>(row, "x", line_no);
        const double y = field<double>(row, "y", line_no);
        if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
            throw MalformedRecord(line_no, "coordinates must be finite with y > 0");
        p.center = HalfPlanePoint(x, y);
        p.birth_time = field<double>(row, "t", line_no);
        p.parent = field<int>(row, "parent", line_no);
        p.trials = field<long>(row, "trials", line_no);
        if (row.contains("cap")) {
            p.cap = field<double>(row, "cap", line_no);
            p.cap_se = field<double>(row, "cap_se", line_no);
        }
        rec.rows.push_back(p);
    }
    return rec;
}

void RunRecord::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    const std::string bytes = serialize();
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

RunRecord RunRecord::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return parse(in);
}

Aggregate aggregate_from_record(const RunRecord& rec) {
    if (rec.rows.empty()) throw MalformedRecord(2, "record has no particle rows");
    Aggregate a(rec.meta);
    for (const Particle& p : rec.rows) a.append(p);
    return a;
}

RunRecord record_from_aggregate(const Aggregate& a) {
    RunRecord rec;
    rec.meta = a.meta();
    rec.rows = a.particles();
    for (const Particle& p : rec.rows) rec.total_trials += p.trials;
    if (rec.meta.mode == GrowthMode::continuous && rec.rows.size() > 1) {
        rec.cap0 = rec.rows[1].cap;
        rec.cap0_se = rec.rows[1].cap_se;
    }
    return rec;
}

}  // namespace hypdla
