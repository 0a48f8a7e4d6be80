#pragma once

#include "ggm/edge_inference.hpp"
#include "ggm/graph_gen.hpp"
#include "ggm/sim_harness.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ggm {

/// Reads a numeric CSV with a header row of column names. Quoted fields and
/// CRLF line ends are accepted. Errors name the offending line.
Dataset read_csv(std::istream& in);
Dataset read_csv_file(const std::string& path);

/// Writes the header and rows with shortest round-trip number formatting.
void write_csv(std::ostream& out, const Dataset& data);

/// Parses "a:b" pairs separated by commas, whitespace or newlines. Each side is
/// a column name, a 1-based index, or `p` for the last column.
EdgeSet parse_edges(std::string_view text, const std::vector<std::string>& names);

nlohmann::json to_json(const TestReport& report, const std::vector<std::string>& names);
nlohmann::json to_json(const PrecisionModel& model, Design design, Index p, Index n,
                       std::uint64_t seed, const DesignParams& params);
nlohmann::json to_json(const SimResult& result);

/// design,p,d,solver,region,S,exp,K,rate,se,l
void write_sim_csv_header(std::ostream& out);
void write_sim_csv_rows(std::ostream& out, const SimResult& result);

} // namespace ggm
