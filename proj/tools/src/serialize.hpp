#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cwgng/cwgng.hpp"

namespace cwgng::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// 17 significant digits, enough to round-trip a double.
std::string fmt(double x);

Json opt(const std::optional<double>& x);

Json to_json(const ModelParams& p);
Json to_json(const BifurcationReport& r);
Json to_json(const CrossoverTimes& c);
Json to_json(const GibbsTimeline& tl);
Json to_json(const OvershootProfile& o);
Json to_json(const MinimizerSet& s);

/// Comma-separated rows with a single header line.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  std::size_t rows() const noexcept { return rows_; }

 private:
  std::ostream& os_;
  std::size_t width_;
  std::size_t rows_ = 0;
};

/// RunReport envelope.
struct Report {
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  std::vector<std::string> warnings;
  std::optional<double> wall_clock_s;

  Json to_json() const;
};

}  // namespace cwgng::cli
