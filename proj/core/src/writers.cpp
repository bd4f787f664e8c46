#include "osb/writers.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "osb/errors.hpp"

namespace osb {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt8(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.8g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + p.parent_path().string());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw IoError("write failed for " + path);
}

Json table_to_json(const Table& t) {
    Json j;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    return j;
}

}  // namespace

std::string render_orbit_csv(const OrbitRecord& record) {
    const int dim = static_cast<int>(record.x0.size());
    std::ostringstream os;
    os << "k";
    for (int i = 1; i <= dim; ++i) os << ",x_" << i;
    os << ",H,eucl_norm";
    for (int i = 1; i <= dim; ++i) os << ",m_" << i;
    os << ",residual\n";

    for (std::size_t k = 0; k < record.points.size(); ++k) {
        const Vec& x = record.points[k];
        os << k;
        for (int i = 0; i < dim; ++i) os << "," << fmt17(x[i]);
        os << "," << fmt17(record.H_values[k]) << "," << fmt17(x.norm());
        if (k >= 1) {
            const auto& [first, second] = record.reflections[k - 1];
            for (int i = 0; i < dim; ++i) os << "," << fmt17(first.m[i]);
            os << "," << fmt17(std::max(first.residual, second.residual));
        } else {
            for (int i = 0; i < dim; ++i) os << "," << fmt17(0.0);
            os << "," << fmt17(0.0);
        }
        os << "\n";
    }
    return os.str();
}

void write_orbit_csv(const OrbitRecord& record, const std::string& path) {
    write_file(path, render_orbit_csv(record));
}

std::string render_report_json(const ExperimentReport& report, const RunConfig* config) {
    Json j;
    j["experiment"] = report.experiment;
    j["body"] = report.body_description;
    j["seed"] = report.seed;
    if (config) j["config"] = Json::parse(normalize_config(*config));

    Json params = Json::object();
    for (const auto& [k, v] : report.params) params[k] = v;
    j["params"] = params;

    Json verdicts = Json::array();
    for (const auto& v : report.verdicts) {
        Json jv;
        jv["name"] = v.name;
        jv["pass"] = v.pass;
        jv["value"] = v.value;
        jv["threshold"] = v.threshold;
        jv["relation"] = v.relation;
        verdicts.push_back(jv);
    }
    j["verdicts"] = verdicts;
    j["all_pass"] = report.all_pass();

    Json summary = Json::object();
    for (const auto& [k, v] : report.summary) summary[k] = v;
    j["summary"] = summary;

    Json tables = Json::object();
    for (const auto& [name, t] : report.tables) tables[name] = table_to_json(t);
    j["tables"] = tables;

    j["truncated"] = report.truncated;
    if (!report.note.empty()) j["note"] = report.note;
    return j.dump(2) + "\n";
}

void write_report_json(const ExperimentReport& report, const std::string& path,
                       const RunConfig* config) {
    write_file(path, render_report_json(report, config));
}

std::string render_scatter_svg(const std::vector<Vec>& points, const ConvexBody& body,
                               const std::string& annotation) {
    if (points.empty()) throw ValidationError("render_scatter_svg needs at least one point");

    // data extent over the projected points and the body outline
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    auto grow = [&](double x, double y) {
        if (first) {
            xmin = xmax = x;
            ymin = ymax = y;
            first = false;
        } else {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    };
    for (const Vec& p : points) grow(p[0], p[1]);

    // outline of the body's projection onto the first coordinate plane:
    // for in-plane normals the projected support point is the support point
    // of the projection
    const int outline_n = 256;
    std::vector<std::pair<double, double>> outline;
    outline.reserve(outline_n);
    for (int i = 0; i < outline_n; ++i) {
        const double th = 2.0 * std::numbers::pi * i / outline_n;
        Vec v = Vec::Zero(body.dim());
        v[0] = std::cos(th);
        v[1] = std::sin(th);
        const Vec q = body.support_point(v);
        outline.emplace_back(q[0], q[1]);
        grow(q[0], q[1]);
    }

    const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
    const double pad = 0.05 * span;
    const double w = 800.0;
    const double scale = w / (span + 2 * pad);
    auto px = [&](double x) { return (x - xmin + pad) * scale; };
    auto py = [&](double y) { return (ymax - y + pad) * scale; };  // svg y grows downward
    const double hpx = (ymax - ymin + 2 * pad) * scale;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt8(w) << "\" height=\""
       << fmt8(hpx) << "\" viewBox=\"0 0 " << fmt8(w) << " " << fmt8(hpx) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!annotation.empty())
        os << "<text x=\"10\" y=\"20\" font-family=\"monospace\" font-size=\"14\">" << annotation
           << "</text>\n";
    os << "<polygon points=\"";
    for (const auto& [x, y] : outline) os << fmt8(px(x)) << "," << fmt8(py(y)) << " ";
    os << "\" fill=\"#d0d8ff\" stroke=\"#3050c0\" stroke-width=\"1\"/>\n";
    for (const Vec& p : points)
        os << "<circle cx=\"" << fmt8(px(p[0])) << "\" cy=\"" << fmt8(py(p[1]))
           << "\" r=\"1.5\" fill=\"#c03030\"/>\n";
    os << "</svg>\n";
    return os.str();
}

void write_scatter_svg(const std::vector<Vec>& points, const ConvexBody& body,
                       const std::string& annotation, const std::string& path) {
    write_file(path, render_scatter_svg(points, body, annotation));
}

std::vector<std::vector<double>> parse_csv_rows(const std::string& csv_text) {
    std::vector<std::vector<double>> rows;
    std::istringstream is(csv_text);
    std::string line;
    bool header = true;
    while (std::getline(is, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace osb
