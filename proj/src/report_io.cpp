#include "ggm/report_io.hpp"
#include "ggm/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ggm {

using nlohmann::json;

namespace {

// Splits one CSV record; `line` has no trailing newline.
std::vector<std::string> split_record(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": unterminated quote");
    fields.push_back(std::move(cur));
    return fields;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

bool parse_double(const std::string& text, double& out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace

Dataset read_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    Dataset data;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_record(line, line_no);
        if (data.names.empty()) {
            for (auto& f : fields) data.names.push_back(trim(f));
            continue;
        }
        if (fields.size() != data.names.size())
            throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": expected " +
                                               std::to_string(data.names.size()) + " fields, found " +
                                               std::to_string(fields.size()));
        std::vector<double> row(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c)
            if (!parse_double(fields[c], row[c]))
                throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ", column " +
                                                   std::to_string(c + 1) + ": '" + fields[c] +
                                                   "' is not a finite number");
        rows.push_back(std::move(row));
    }
    if (data.names.empty()) throw Error(Errc::parse_error, "empty CSV input");
    const auto n = static_cast<Index>(rows.size());
    const auto p = static_cast<Index>(data.names.size());
    data.values.resize(n, p);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < p; ++j)
            data.values(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return data;
}

Dataset read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::parse_error, "cannot open '" + path + "'");
    return read_csv(in);
}

void write_csv(std::ostream& out, const Dataset& data) {
    for (std::size_t c = 0; c < data.names.size(); ++c) {
        if (c) out << ',';
        const std::string& name = data.names[c];
        if (name.find_first_of(",\"\n") != std::string::npos) {
            out << '"';
            for (char ch : name) out << (ch == '"' ? "\"\"" : std::string(1, ch));
            out << '"';
        } else {
            out << name;
        }
    }
    out << '\n';
    for (Index i = 0; i < data.n(); ++i) {
        for (Index j = 0; j < data.p(); ++j) {
            if (j) out << ',';
            out << format_double(data.values(i, j));
        }
        out << '\n';
    }
}

namespace {

Index resolve_node(const std::string& token, const std::vector<std::string>& names) {
    for (std::size_t c = 0; c < names.size(); ++c)
        if (names[c] == token) return static_cast<Index>(c);
    long idx = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), idx);
    if (ec == std::errc() && ptr == token.data() + token.size()) {
        if (idx < 1 || idx > static_cast<long>(names.size()))
            throw Error(Errc::parse_error, "edge index '" + token + "' is outside 1.." +
                                               std::to_string(names.size()));
        return static_cast<Index>(idx - 1);
    }
    if (token == "p" && !names.empty()) return static_cast<Index>(names.size() - 1);
    throw Error(Errc::parse_error, "unknown column '" + token + "' in edge list");
}

} // namespace

EdgeSet parse_edges(std::string_view text, const std::vector<std::string>& names) {
    EdgeSet edges;
    std::string token;
    auto flush = [&] {
        const std::string t = trim(token);
        token.clear();
        if (t.empty()) return;
        const auto colon = t.find(':');
        if (colon == std::string::npos || t.find(':', colon + 1) != std::string::npos)
            throw Error(Errc::parse_error, "edge '" + t + "' must have the form a:b");
        const Index a = resolve_node(trim(t.substr(0, colon)), names);
        const Index b = resolve_node(trim(t.substr(colon + 1)), names);
        if (a == b) throw Error(Errc::parse_error, "edge '" + t + "': self-loop not a valid edge");
        edges.push_back(Edge::of(a, b));
    };
    for (char c : text) {
        if (c == ',' || c == '\n' || c == '\r' || c == ';' || c == ' ' || c == '\t')
            flush();
        else
            token += c;
    }
    flush();
    if (edges.empty()) throw Error(Errc::parse_error, "edge list is empty");
    return edges;
}

namespace {

json region_json(const RegionOutcome& r) {
    return {
        {"kind", std::string(to_string(r.spec.kind))},
        {"S", r.spec.S},
        {"exp", r.spec.exp},
        {"tail", r.spec.tail == Tail::upper ? "upper" : "two_sided"},
        {"alpha", r.spec.alpha},
        {"statistic", r.statistic},
        {"critical", {{"upper", r.criticals.upper},
                      {"lower_half", r.criticals.lower_half},
                      {"upper_half", r.criticals.upper_half}}},
        {"reject", r.reject},
    };
}

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

json to_json(const TestReport& report, const std::vector<std::string>& names) {
    auto name_of = [&](Index i) {
        return i < static_cast<Index>(names.size()) ? names[static_cast<std::size_t>(i)]
                                                    : "X" + std::to_string(i + 1);
    };
    const InferenceConfig& cfg = report.config;
    json edges = json::array();
    for (const EdgeResult& e : report.edges) {
        edges.push_back({
            {"j", e.edge.j + 1},
            {"k", e.edge.k + 1},
            {"name_j", name_of(e.edge.j)},
            {"name_k", name_of(e.edge.k)},
            {"theta_hat", e.theta_hat},
            {"sigma_hat", e.sigma_hat},
            {"jacobian_hat", e.jacobian_hat},
            {"t_stat", e.t_stat},
            {"ci", {e.interval.lo, e.interval.hi}},
            {"theta_init", e.theta_init},
        });
    }
    json regions = json::array();
    for (const RegionOutcome& r : report.regions) regions.push_back(region_json(r));
    const Diagnostics& dg = report.diagnostics;
    return {
        {"schema", 1},
        {"n", report.n},
        {"p", report.p},
        {"d", static_cast<Index>(report.edges.size())},
        {"folds", report.folds},
        {"seed", report.seed},
        {"config",
         {{"solver", std::string(to_string(cfg.solver))},
          {"c_lambda", cfg.penalty.c_lambda},
          {"gamma", cfg.penalty.gamma_for(report.n)},
          {"m_iterations", cfg.penalty.m_iterations},
          {"d_total", cfg.penalty.d_total},
          {"lambda", report.lambda},
          {"bootstrap_B", cfg.bootstrap_B},
          {"center", cfg.center},
          {"lasso_tol", cfg.lasso.tol},
          {"lasso_max_iter", cfg.lasso.max_iter}}},
        {"edges", std::move(edges)},
        {"regions", std::move(regions)},
        {"reject", report.reject()},
        {"diagnostics",
         {{"lasso_fits", dg.lasso_fits},
          {"nonconverged_fits", dg.nonconverged_fits},
          {"post_lasso_dropped", dg.post_lasso_dropped},
          {"uneven_folds", dg.uneven_folds},
          {"warnings", dg.warnings}}},
    };
}

json to_json(const PrecisionModel& model, Design design, Index p, Index n, std::uint64_t seed,
             const DesignParams& params) {
    json edges = json::array();
    for (const Edge& e : model.true_edges) edges.push_back({e.j + 1, e.k + 1});
    const double prob = params.prob < 0.0 ? std::min(1.0, 5.0 / static_cast<double>(p)) : params.prob;
    return {
        {"schema", 1},
        {"design", std::string(to_string(design))},
        {"p", p},
        {"n", n},
        {"seed", seed},
        {"params", {{"prob", prob}, {"groups", params.groups}, {"a", params.a}, {"v", model.v}, {"u", model.u}}},
        {"phi", matrix_json(model.phi)},
        {"sigma", matrix_json(model.sigma)},
        {"true_edges", std::move(edges)},
    };
}

json to_json(const SimResult& result) {
    const SimConfig& cfg = result.config;
    json cells = json::array();
    for (const CellResult& c : result.cells) {
        cells.push_back({
            {"solver", std::string(to_string(c.key.solver))},
            {"region", region_label(c.key.region.region)},
            {"S", c.key.region.S},
            {"exp", c.key.region.exp},
            {"K", c.key.K},
            {"rate", c.rate},
            {"se", c.se},
            {"accepted", c.accepted},
            {"l", c.replications},
            {"seconds", c.seconds},
        });
    }
    return {
        {"schema", 1},
        {"design", std::string(to_string(cfg.design))},
        {"p", cfg.p},
        {"d", result.d},
        {"n", cfg.n},
        {"l", cfg.replications},
        {"B", cfg.bootstrap_B},
        {"alpha", cfg.alpha},
        {"seed", cfg.base_seed},
        {"c_lambda", cfg.penalty.c_lambda},
        {"m_iterations", cfg.penalty.m_iterations},
        {"cells", std::move(cells)},
        {"diagnostics",
         {{"lasso_fits", result.diagnostics.lasso_fits},
          {"nonconverged_fits", result.diagnostics.nonconverged_fits},
          {"post_lasso_dropped", result.diagnostics.post_lasso_dropped}}},
        {"wall_seconds", result.wall_seconds},
    };
}

void write_sim_csv_header(std::ostream& out) { out << "design,p,d,solver,region,S,exp,K,rate,se,l\n"; }

void write_sim_csv_rows(std::ostream& out, const SimResult& result) {
    const SimConfig& cfg = result.config;
    for (const CellResult& c : result.cells) {
        out << to_string(cfg.design) << ',' << cfg.p << ',' << result.d << ',' << to_string(c.key.solver)
            << ',' << region_label(c.key.region.region) << ',' << c.key.region.S << ',' << c.key.region.exp
            << ',' << c.key.K << ',' << format_double(c.rate) << ',' << format_double(c.se) << ','
            << c.replications << '\n';
    }
}

} // namespace ggm
