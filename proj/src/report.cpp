#include "sepscope/report.hpp"

#include "sepscope/errors.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace sepscope {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json report_to_json(const MeasureReport& r) {
    Json j;
    j["task"] = r.task;
    j["weight_mode"] = std::string(to_string(r.weight_mode));
    j["ls_star"] = r.ls_star;
    j["ls0"] = r.ls0;
    j["ls1"] = r.ls1;
    j["ls2"] = r.ls2;
    j["j_omega"] = r.j_omega ? Json(*r.j_omega) : Json(nullptr);
    j["counts"] = {{"pos", r.pair_stats.pos_count}, {"neg", r.pair_stats.neg_count}, {"zero", r.pair_stats.zero_count}};
    j["degenerate"] = r.degenerate;
    return j;
}

MeasureReport report_from_json(const Json& j) {
    try {
        MeasureReport r;
        r.task = j.at("task").get<std::string>();
        r.weight_mode = parse_weight_mode(j.at("weight_mode").get<std::string>());
        r.ls_star = j.at("ls_star").get<double>();
        r.ls0 = j.at("ls0").get<double>();
        r.ls1 = j.at("ls1").get<double>();
        r.ls2 = j.at("ls2").get<double>();
        if (!j.at("j_omega").is_null()) r.j_omega = j.at("j_omega").get<double>();
        const auto& c = j.at("counts");
        r.pair_stats.pos_count = c.at("pos").get<std::uint64_t>();
        r.pair_stats.neg_count = c.at("neg").get<std::uint64_t>();
        r.pair_stats.zero_count = c.at("zero").get<std::uint64_t>();
        r.degenerate = j.at("degenerate").get<bool>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report JSON: ") + e.what());
    }
}

std::string report_csv_header() { return "task,weight_mode,ls_star,ls0,ls1,ls2,j_omega,pos,neg,zero,degenerate"; }

std::string report_csv_row(const MeasureReport& r) {
    std::ostringstream os;
    os << r.task << ',' << to_string(r.weight_mode) << ',' << format_double(r.ls_star) << ','
       << format_double(r.ls0) << ',' << format_double(r.ls1) << ',' << format_double(r.ls2) << ','
       << (r.j_omega ? format_double(*r.j_omega) : std::string()) << ',' << r.pair_stats.pos_count << ','
       << r.pair_stats.neg_count << ',' << r.pair_stats.zero_count << ',' << (r.degenerate ? 1 : 0);
    return os.str();
}

void write_reports_csv(std::ostream& os, const std::vector<MeasureReport>& reports) {
    os << report_csv_header() << '\n';
    for (const auto& r : reports) os << report_csv_row(r) << '\n';
}

std::vector<MeasureReport> read_reports_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != report_csv_header()) throw ParseError("unexpected report CSV header");
    std::vector<MeasureReport> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (line.back() == ',') f.emplace_back();
        if (f.size() != 11) throw ParseError("report CSV row has " + std::to_string(f.size()) + " fields");
        try {
            MeasureReport r;
            r.task = f[0];
            r.weight_mode = parse_weight_mode(f[1]);
            r.ls_star = std::stod(f[2]);
            r.ls0 = std::stod(f[3]);
            r.ls1 = std::stod(f[4]);
            r.ls2 = std::stod(f[5]);
            if (!f[6].empty()) r.j_omega = std::stod(f[6]);
            r.pair_stats.pos_count = std::stoull(f[7]);
            r.pair_stats.neg_count = std::stoull(f[8]);
            r.pair_stats.zero_count = std::stoull(f[9]);
            r.degenerate = f[10] == "1";
            out.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw ParseError("bad number in report CSV row: " + line);
        }
    }
    return out;
}

Json maxls_to_json(const BinaryTask& task, const MaxLsResult& result, bool verified) {
    auto source = [](const std::vector<Index>& rows, Index local) {
        return rows.empty() ? local : rows[static_cast<std::size_t>(local)];
    };
    Json j;
    j["major_side"] = result.major_side;
    Json ka = Json::array(), kb = Json::array(), removed = Json::array();
    for (Index i : result.kept_a) ka.push_back(source(task.rows_a, i));
    for (Index i : result.kept_b) kb.push_back(source(task.rows_b, i));
    for (const auto& r : result.removed) {
        const bool a = r.set == SetSide::a;
        removed.push_back({{"set", a ? "A" : "B"},
                           {"index", source(a ? task.rows_a : task.rows_b, r.index)},
                           {"degree", r.degree}});
    }
    j["kept_a"] = std::move(ka);
    j["kept_b"] = std::move(kb);
    j["removed"] = std::move(removed);
    j["empty_side"] = result.empty_side;
    j["verified"] = verified;
    return j;
}

}  // namespace sepscope
