// SPDX-License-Identifier: MIT

#include "ngmzi/sweep.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ngmzi/oracle.hpp"

namespace ngmzi {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& tok, const std::string& key) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != tok.size() || tok.empty()) {
        throw ConfigError("config: key '" + key + "': not a number: '" + tok +
                          "'");
    }
    return v;
}

long parse_int(const std::string& tok, const std::string& key) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(tok, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != tok.size() || tok.empty()) {
        throw ConfigError("config: key '" + key + "': not an integer: '" +
                          tok + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

/// Value grammar for numeric axes: single number | comma list | lo:hi:count.
std::vector<double> parse_axis_values(const std::string& value,
                                      const std::string& key) {
    if (value.find(',') != std::string::npos) {
        std::vector<double> vals;
        for (const std::string& tok : split(value, ',')) {
            vals.push_back(parse_double(tok, key));
        }
        return vals;
    }
    const std::vector<std::string> parts = split(value, ':');
    if (parts.size() == 3) {
        const double lo = parse_double(parts[0], key);
        const double hi = parse_double(parts[1], key);
        const long count = parse_int(parts[2], key);
        if (count < 2) {
            throw ConfigError("config: key '" + key +
                              "': range needs count >= 2");
        }
        std::vector<double> vals(static_cast<std::size_t>(count));
        for (long i = 0; i < count; ++i) {
            vals[static_cast<std::size_t>(i)] =
                lo + (hi - lo) * double(i) / double(count - 1);
        }
        return vals;
    }
    if (parts.size() != 1) {
        throw ConfigError("config: key '" + key + "': malformed value '" +
                          value + "'");
    }
    return {parse_double(value, key)};
}

std::vector<std::pair<int, int>> parse_mn_pairs(const std::string& value) {
    std::vector<std::pair<int, int>> pairs;
    for (const std::string& tok : split(value, ',')) {
        const std::vector<std::string> mn = split(tok, ':');
        if (mn.size() != 2) {
            throw ConfigError("config: key 'mn': expected m:n pairs, got '" +
                              tok + "'");
        }
        const long m = parse_int(mn[0], "mn");
        const long n = parse_int(mn[1], "mn");
        if (m < 0 || n < 0) {
            throw ConfigError("config: key 'mn': negative photon number");
        }
        pairs.emplace_back(int(m), int(n));
    }
    if (pairs.empty()) throw ConfigError("config: key 'mn': empty list");
    return pairs;
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config: key '" + key + "': not a boolean: '" + value +
                      "'");
}

void check_axis_domain(const std::string& name,
                       const std::vector<double>& values) {
    for (double v : values) {
        bool ok = true;
        if (name == "lambda") ok = v >= 0.0 && v < 1.0;
        if (name == "r_sq") ok = v >= 0.0;
        if (name == "tau") ok = v > 0.0 && v <= 1.0;
        if (name == "kappa") ok = v >= 0.5;
        if (name == "n_th") ok = v >= 0.0;
        if (!ok) {
            std::ostringstream msg;
            msg << "config: key '" << name << "': value " << v
                << " outside its domain";
            throw ConfigError(msg.str());
        }
    }
}

/// The grid point assembled for one record.
struct GridPoint {
    double lambda = 0.0;
    double kappa = 0.5;
    double tau = 1.0;
    double phi = 0.01;
    int m = 0, n = 0;
};

std::size_t axis_size(const SweepConfig& config, const AxisSpec& axis) {
    return axis.name == "mn" ? config.mn_pairs.size() : axis.values.size();
}

GridPoint resolve_point(const SweepConfig& config, std::size_t index) {
    GridPoint pt;
    pt.m = config.mn_pairs.front().first;
    pt.n = config.mn_pairs.front().second;
    // Row-major decomposition, last declared axis fastest.
    std::size_t rem = index;
    std::vector<std::size_t> idx(config.axes.size(), 0);
    for (std::size_t a = config.axes.size(); a-- > 0;) {
        const std::size_t sz = axis_size(config, config.axes[a]);
        idx[a] = rem % sz;
        rem /= sz;
    }
    for (std::size_t a = 0; a < config.axes.size(); ++a) {
        const AxisSpec& axis = config.axes[a];
        if (axis.name == "mn") {
            pt.m = config.mn_pairs[idx[a]].first;
            pt.n = config.mn_pairs[idx[a]].second;
            continue;
        }
        const double v = axis.values[idx[a]];
        if (axis.name == "lambda") pt.lambda = v;
        else if (axis.name == "r_sq") pt.lambda = std::tanh(v);
        else if (axis.name == "tau") pt.tau = v;
        else if (axis.name == "phi") pt.phi = v;
        else if (axis.name == "kappa") pt.kappa = v;
        else if (axis.name == "n_th") pt.kappa = v + 0.5;
    }
    return pt;
}

SweepRecord evaluate_point(const SweepConfig& config, std::size_t index) {
    const GridPoint pt = resolve_point(config, index);
    SweepRecord rec;
    rec.index = index;
    rec.op_kind = classify(pt.m, pt.n);
    rec.point.params.lambda = pt.lambda;
    rec.point.params.kappa = pt.kappa;
    rec.point.params.tau = pt.tau;
    rec.point.params.m = pt.m;
    rec.point.params.n = pt.n;
    rec.point.phi = pt.phi;
    rec.merit_thermal = kNaN;
    rec.merit_vacuum = kNaN;
    try {
        const NGParams p = NGParams::from_lambda(pt.lambda, pt.kappa, pt.tau,
                                                 pt.m, pt.n);
        rec.point = sensitivity_record(p, pt.phi);
        rec.merit_thermal =
            phase_uncertainty_tmst(p.lambda, p.kappa, pt.phi) -
            rec.point.delta_phi;
        if (std::abs(p.kappa - 0.5) <= 1e-12) {
            rec.merit_vacuum =
                phase_uncertainty_tmst(p.lambda, 0.5, pt.phi) -
                rec.point.delta_phi;
        }
    } catch (const Error& e) {
        rec.error = e.what();
        rec.point.parity = kNaN;
        rec.point.dparity_dphi = kNaN;
        rec.point.delta_phi = kNaN;
        rec.point.probability = kNaN;
        return rec;
    }

    if (config.verify &&
        index % static_cast<std::size_t>(config.verify_stride) == 0) {
        try {
            const HeraldedEnsemble oracle(rec.point.params.r_sq(),
                                          pt.kappa - 0.5, pt.tau, pt.m, pt.n,
                                          config.cutoff);
            if (oracle.trace_deficit() >= kDefaultTailTol) {
                std::ostringstream msg;
                msg << "verify skipped: trace deficit "
                    << oracle.trace_deficit() << " at cutoff "
                    << config.cutoff;
                rec.error = msg.str();
            } else {
                rec.dev_probability =
                    std::abs(rec.point.probability - oracle.probability());
                rec.dev_parity =
                    std::abs(rec.point.parity - oracle.parity(pt.phi));
                rec.verified = true;
            }
        } catch (const Error& e) {
            rec.error = std::string("verify: ") + e.what();
        }
    }
    return rec;
}

/// Invariants re-checked on every record before it is written.
void revalidate(SweepRecord& rec) {
    if (!rec.error.empty()) return;
    std::ostringstream bad;
    if (!(std::abs(rec.point.parity) <= 1.0 + 1e-9)) {
        bad << "parity " << rec.point.parity << " outside [-1, 1]; ";
    }
    if (std::isnan(rec.point.delta_phi) || rec.point.delta_phi < 0.0) {
        bad << "delta_phi " << rec.point.delta_phi << " invalid; ";
    }
    if (!(rec.point.probability >= -1e-12 &&
          rec.point.probability <= 1.0 + 1e-9)) {
        bad << "probability " << rec.point.probability << " outside [0, 1]; ";
    }
    const std::string msg = bad.str();
    if (!msg.empty()) rec.error = "invariant violation: " + msg;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

nlohmann::ordered_json json_number(double v) {
    if (std::isfinite(v)) return v;
    return format_number(v);
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in) {
    SweepConfig config;
    std::vector<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "config line " << lineno << ": expected key = value";
            throw ConfigError(msg.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            std::ostringstream msg;
            msg << "config line " << lineno << ": empty key or value";
            throw ConfigError(msg.str());
        }
        for (const std::string& s : seen) {
            if (s == key) {
                throw ConfigError("config: duplicate key '" + key + "'");
            }
        }
        seen.push_back(key);

        if (key == "lambda" || key == "r_sq" || key == "tau" ||
            key == "phi" || key == "kappa" || key == "n_th") {
            AxisSpec axis;
            axis.name = key;
            axis.values = parse_axis_values(value, key);
            check_axis_domain(key, axis.values);
            config.axes.push_back(std::move(axis));
        } else if (key == "mn") {
            config.mn_pairs = parse_mn_pairs(value);
            config.axes.push_back(AxisSpec{"mn", {}});
        } else if (key == "out") {
            config.out_path = value;
        } else if (key == "format") {
            if (value != "csv" && value != "jsonl") {
                throw ConfigError("config: format must be csv or jsonl");
            }
            config.format = value;
        } else if (key == "workers") {
            const long w = parse_int(value, key);
            if (w < 1) throw ConfigError("config: workers must be >= 1");
            config.workers = int(w);
        } else if (key == "verify") {
            config.verify = parse_bool(value, key);
        } else if (key == "cutoff") {
            const long c = parse_int(value, key);
            if (c < 2) throw ConfigError("config: cutoff must be >= 2");
            config.cutoff = int(c);
        } else if (key == "verify_stride") {
            const long s = parse_int(value, key);
            if (s < 1) throw ConfigError("config: verify_stride must be >= 1");
            config.verify_stride = int(s);
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    const auto has = [&](const char* k) {
        for (const AxisSpec& a : config.axes) {
            if (a.name == k) return true;
        }
        return false;
    };
    if (has("lambda") && has("r_sq")) {
        throw ConfigError("config: declare at most one of lambda | r_sq");
    }
    if (has("kappa") && has("n_th")) {
        throw ConfigError("config: declare at most one of kappa | n_th");
    }
    return config;
}

SweepConfig parse_sweep_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    return parse_sweep_config(in);
}

std::size_t run_sweep(const SweepConfig& config,
                      const std::function<void(const SweepRecord&)>& sink) {
    std::size_t total = 1;
    for (const AxisSpec& axis : config.axes) {
        const std::size_t sz = axis_size(config, axis);
        if (sz == 0) throw ConfigError("config: axis '" + axis.name +
                                       "' has no values");
        total *= sz;
    }
    if (config.mn_pairs.empty()) {
        throw ConfigError("config: empty mn pair list");
    }

    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::map<std::size_t, SweepRecord> buffer;
    std::size_t next_emit = 0;
    std::size_t error_count = 0;

    auto deliver = [&](SweepRecord&& rec) {
        std::lock_guard<std::mutex> lock(mu);
        buffer.emplace(rec.index, std::move(rec));
        while (!buffer.empty() && buffer.begin()->first == next_emit) {
            SweepRecord& head = buffer.begin()->second;
            revalidate(head);
            if (!head.error.empty()) ++error_count;
            sink(head);
            buffer.erase(buffer.begin());
            ++next_emit;
        }
    };
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= total) break;
            deliver(evaluate_point(config, i));
        }
    };

    const int nw = std::max(1, std::min<int>(config.workers,
                                             int(std::min<std::size_t>(
                                                 total, 256))));
    if (nw == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nw));
        for (int t = 0; t < nw; ++t) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    return error_count;
}

std::vector<SweepRecord> run_sweep_collect(const SweepConfig& config) {
    std::vector<SweepRecord> records;
    run_sweep(config, [&](const SweepRecord& rec) { records.push_back(rec); });
    return records;
}

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_csv_header(std::ostream& out, bool verify_columns) {
    out << "m,n,op_kind,lambda,r_sq,kappa,n_th,tau,phi_rad,parity,"
           "dparity_dphi,delta_phi_rad,probability,merit_thermal,"
           "merit_vacuum,error";
    if (verify_columns) out << ",verified,dev_probability,dev_parity";
    out << "\n";
}

void write_csv_record(std::ostream& out, const SweepRecord& rec,
                      bool verify_columns) {
    const NGParams& p = rec.point.params;
    out << p.m << ',' << p.n << ',' << op_kind_name(rec.op_kind) << ','
        << format_number(p.lambda) << ',' << format_number(p.r_sq()) << ','
        << format_number(p.kappa) << ',' << format_number(p.n_th()) << ','
        << format_number(p.tau) << ',' << format_number(rec.point.phi) << ','
        << format_number(rec.point.parity) << ','
        << format_number(rec.point.dparity_dphi) << ','
        << format_number(rec.point.delta_phi) << ','
        << format_number(rec.point.probability) << ','
        << format_number(rec.merit_thermal) << ','
        << format_number(rec.merit_vacuum) << ',' << csv_escape(rec.error);
    if (verify_columns) {
        out << ',' << (rec.verified ? 1 : 0) << ','
            << format_number(rec.dev_probability) << ','
            << format_number(rec.dev_parity);
    }
    out << "\n";
}

void write_jsonl_record(std::ostream& out, const SweepRecord& rec) {
    const NGParams& p = rec.point.params;
    nlohmann::ordered_json j;
    j["index"] = rec.index;
    j["m"] = p.m;
    j["n"] = p.n;
    j["op_kind"] = op_kind_name(rec.op_kind);
    j["lambda"] = json_number(p.lambda);
    j["r_sq"] = json_number(p.r_sq());
    j["kappa"] = json_number(p.kappa);
    j["n_th"] = json_number(p.n_th());
    j["tau"] = json_number(p.tau);
    j["phi_rad"] = json_number(rec.point.phi);
    j["parity"] = json_number(rec.point.parity);
    j["dparity_dphi"] = json_number(rec.point.dparity_dphi);
    j["delta_phi_rad"] = json_number(rec.point.delta_phi);
    j["probability"] = json_number(rec.point.probability);
    j["merit_thermal"] = json_number(rec.merit_thermal);
    j["merit_vacuum"] = json_number(rec.merit_vacuum);
    j["error"] = rec.error;
    j["verified"] = rec.verified;
    if (rec.verified) {
        j["dev_probability"] = json_number(rec.dev_probability);
        j["dev_parity"] = json_number(rec.dev_parity);
    }
    out << j.dump() << "\n";
}

}  // namespace ngmzi
