#include "bideconv/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "bideconv/errors.hpp"
#include "bideconv/rng.hpp"

namespace bideconv::io {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string &line, char delim) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, delim)) out.push_back(field);
    if (!line.empty() && line.back() == delim) out.push_back("");
    return out;
}

std::ifstream open_in(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string &path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write " + path);
    return out;
}

double parse_double(const std::string &s, const std::string &ctx) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw data_error("");
        return v;
    } catch (...) {
        throw data_error("bad number '" + s + "' in " + ctx);
    }
}

json component_to_json(const ComponentParams &p) {
    return json{{"mu0", p.mu0}, {"mu1", p.mu1}, {"tau0", p.tau0}, {"tau1", p.tau1},
                {"rho", p.rho}};
}

ComponentParams component_from_json(const json &j) {
    ComponentParams p;
    p.mu0 = j.at("mu0");
    p.mu1 = j.at("mu1");
    p.tau0 = j.at("tau0");
    p.tau1 = j.at("tau1");
    p.rho = j.at("rho");
    return p;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Dataset read_counts_tsv(const std::string &path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw data_error(path + ": empty file");
    const auto header = split(line, '\t');
    if (header.size() < 3 || header[0] != "feature_id")
        throw data_error(path + ": expected header starting with feature_id");

    // Patient columns come in `<id>_pre` / `<id>_post` pairs.
    std::vector<std::string> patients;
    for (std::size_t k = 1; k < header.size(); k += 2) {
        const std::string &pre = header[k];
        if (pre.size() < 5 || pre.substr(pre.size() - 4) != "_pre")
            throw data_error(path + ": column " + pre + " is not a *_pre column");
        const std::string id = pre.substr(0, pre.size() - 4);
        if (k + 1 >= header.size() || header[k + 1] != id + "_post")
            throw data_error(path + ": missing paired column " + id + "_post");
        patients.push_back(id);
    }

    struct Row {
        std::string id;
        std::vector<double> values;
    };
    std::vector<Row> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split(line, '\t');
        if (fields.size() != header.size())
            throw data_error(path + ":" + std::to_string(line_no) + ": wrong field count");
        Row row;
        row.id = fields[0];
        row.values.reserve(fields.size() - 1);
        for (std::size_t k = 1; k < fields.size(); ++k)
            row.values.push_back(parse_double(fields[k], path + ":" + std::to_string(line_no)));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw data_error(path + ": no data rows");

    std::sort(rows.begin(), rows.end(), [](const Row &a, const Row &b) { return a.id < b.id; });
    for (std::size_t j = 0; j + 1 < rows.size(); ++j)
        if (rows[j].id == rows[j + 1].id)
            throw data_error(path + ": duplicate feature id " + rows[j].id);

    std::vector<std::string> feature_ids;
    feature_ids.reserve(rows.size());
    for (const auto &r : rows) feature_ids.push_back(r.id);

    Dataset d = Dataset::zeros(patients, feature_ids);
    for (std::size_t j = 0; j < rows.size(); ++j) {
        for (std::size_t i = 0; i < patients.size(); ++i) {
            d.set(i, j, rows[j].values[2 * i], rows[j].values[2 * i + 1]);
        }
    }
    return d;
}

void write_counts_tsv(const std::string &path, const Dataset &d) {
    auto out = open_out(path);
    out << "feature_id";
    for (const auto &id : d.patient_ids) out << '\t' << id << "_pre" << '\t' << id << "_post";
    out << '\n';
    for (std::size_t j = 0; j < d.n_features(); ++j) {
        out << d.feature_ids[j];
        for (std::size_t i = 0; i < d.n_patients(); ++i) {
            const auto obs = d.obs(i, j);
            out << '\t' << format_double(obs.y0) << '\t' << format_double(obs.y1);
        }
        out << '\n';
    }
}

ReferenceProfile read_reference_tsv(const std::string &path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw data_error(path + ": empty file");
    const auto header = split(line, '\t');
    if (header.size() != 3 || header[0] != "feature_id" || header[1] != "log_mean" ||
        header[2] != "log_var")
        throw data_error(path + ": expected header feature_id\tlog_mean\tlog_var");

    ReferenceProfile ref;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split(line, '\t');
        if (fields.size() != 3)
            throw data_error(path + ":" + std::to_string(line_no) + ": wrong field count");
        ref.feature_id.push_back(fields[0]);
        ref.log_mean.push_back(parse_double(fields[1], path));
        ref.log_var.push_back(parse_double(fields[2], path));
    }
    if (ref.feature_id.empty()) throw data_error(path + ": no data rows");
    return ref;
}

void write_reference_tsv(const std::string &path, const ReferenceProfile &ref) {
    auto out = open_out(path);
    out << "feature_id\tlog_mean\tlog_var\n";
    for (std::size_t k = 0; k < ref.feature_id.size(); ++k) {
        out << ref.feature_id[k] << '\t' << format_double(ref.log_mean[k]) << '\t'
            << format_double(ref.log_var[k]) << '\n';
    }
}

void write_truth_json(const std::string &path, const SimTruth &truth) {
    json j;
    j["patients"] = json::array();
    for (std::size_t i = 0; i < truth.pi.size(); ++i) {
        j["patients"].push_back(json{{"patient_id", truth.patient_ids[i]},
                                     {"pi0", truth.pi[i].pi0},
                                     {"pi1", truth.pi[i].pi1}});
    }
    j["features"] = json::array();
    for (std::size_t k = 0; k < truth.theta.size(); ++k) {
        j["features"].push_back(json{{"feature_id", truth.feature_ids[k]},
                                     {"tumour", component_to_json(truth.theta[k].tumour)},
                                     {"background",
                                      component_to_json(truth.theta[k].background)}});
    }
    open_out(path) << j.dump(2) << '\n';
}

SimTruth read_truth_json(const std::string &path) {
    json j;
    try {
        open_in(path) >> j;
    } catch (const json::exception &e) {
        throw data_error(path + ": " + e.what());
    }
    SimTruth truth;
    try {
        for (const auto &pat : j.at("patients")) {
            truth.patient_ids.push_back(pat.at("patient_id"));
            truth.pi.push_back({pat.at("pi0"), pat.at("pi1")});
        }
        for (const auto &feat : j.at("features")) {
            truth.feature_ids.push_back(feat.at("feature_id"));
            FeatureTheta th;
            th.tumour = component_from_json(feat.at("tumour"));
            th.background = component_from_json(feat.at("background"));
            truth.theta.push_back(th);
        }
    } catch (const json::exception &e) {
        throw data_error(path + ": " + e.what());
    }
    return truth;
}

void write_pi_csv(const std::string &path, const std::vector<std::string> &patient_ids,
                  const std::vector<TumourFractions> &pi) {
    auto out = open_out(path);
    out << "patient_id,pi0,pi1\n";
    for (std::size_t i = 0; i < pi.size(); ++i) {
        out << patient_ids[i] << ',' << format_double(pi[i].pi0) << ','
            << format_double(pi[i].pi1) << '\n';
    }
}

std::pair<std::vector<std::string>, std::vector<TumourFractions>> read_pi_csv(
    const std::string &path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || split(line, ',') != std::vector<std::string>{"patient_id", "pi0", "pi1"})
        throw data_error(path + ": expected header patient_id,pi0,pi1");
    std::vector<std::string> ids;
    std::vector<TumourFractions> pi;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 3)
            throw data_error(path + ":" + std::to_string(line_no) + ": wrong field count");
        ids.push_back(fields[0]);
        pi.push_back({parse_double(fields[1], path), parse_double(fields[2], path)});
    }
    return {ids, pi};
}

void write_theta_csv(const std::string &path, const std::vector<std::string> &feature_ids,
                     const std::vector<FeatureTheta> &theta) {
    auto out = open_out(path);
    out << "feature_id,t_mu0,t_mu1,t_tau0,t_tau1,t_rho,b_mu0,b_mu1,b_tau0,b_tau1,b_rho\n";
    for (std::size_t j = 0; j < theta.size(); ++j) {
        const auto &t = theta[j].tumour;
        const auto &b = theta[j].background;
        out << feature_ids[j];
        for (double v : {t.mu0, t.mu1, t.tau0, t.tau1, t.rho, b.mu0, b.mu1, b.tau0, b.tau1,
                         b.rho})
            out << ',' << format_double(v);
        out << '\n';
    }
}

void write_trace_csv(const std::string &path, const std::vector<std::string> &labels,
                     const std::vector<double> &values, double initial) {
    auto out = open_out(path);
    out << "step,block,loglik\n";
    out << "0,initial," << format_double(initial) << '\n';
    for (std::size_t k = 0; k < values.size(); ++k)
        out << (k + 1) << ',' << labels[k] << ',' << format_double(values[k]) << '\n';
}

std::vector<OutcomeRecord> read_outcomes_tsv(const std::string &path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw data_error(path + ": empty file");
    const auto header = split(line, '\t');
    auto col = [&](const std::string &name) -> int {
        for (std::size_t k = 0; k < header.size(); ++k)
            if (header[k] == name) return int(k);
        return -1;
    };
    const int c_id = col("patient_id"), c_rel = col("relapse_1yr");
    const int c_time = col("time_days"), c_event = col("event");
    if (c_id < 0 || c_rel < 0)
        throw data_error(path + ": need patient_id and relapse_1yr columns");

    std::vector<OutcomeRecord> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split(line, '\t');
        if (fields.size() != header.size())
            throw data_error(path + ":" + std::to_string(line_no) + ": wrong field count");
        OutcomeRecord rec;
        rec.patient_id = fields[c_id];
        rec.relapse_1yr = int(parse_double(fields[c_rel], path));
        if (rec.relapse_1yr != 0 && rec.relapse_1yr != 1)
            throw data_error(path + ":" + std::to_string(line_no) + ": relapse_1yr must be 0/1");
        if (c_time >= 0) rec.time_days = parse_double(fields[c_time], path);
        if (c_event >= 0) {
            rec.event = int(parse_double(fields[c_event], path));
            if (rec.event != 0 && rec.event != 1)
                throw data_error(path + ":" + std::to_string(line_no) + ": event must be 0/1");
        }
        out.push_back(rec);
    }
    return out;
}

void write_km_csv(const std::string &path,
                  const std::vector<std::pair<std::string, std::vector<KmPoint>>> &curves) {
    auto out = open_out(path);
    out << "group,time,n_risk,n_events,survival\n";
    for (const auto &[group, curve] : curves) {
        for (const auto &pt : curve) {
            out << group << ',' << format_double(pt.time) << ',' << pt.n_risk << ','
                << pt.n_events << ',' << format_double(pt.survival) << '\n';
        }
    }
}

std::string file_digest_hex(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open " + path + " for hashing");
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 14];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize k = 0; k < got; ++k) {
            h ^= static_cast<unsigned char>(buf[k]);
            h *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    char hex[20];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

}  // namespace bideconv::io
