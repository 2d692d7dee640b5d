#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "regrkit/dataset.hpp"
#include "regrkit/ingest.hpp"

namespace regrkit::testing {

inline constexpr const char* kMonth = "Month";
inline constexpr const char* kST = "Subscribers_total";
inline constexpr const char* kBAS = "Banner_Ad_Spend";
inline constexpr const char* kPPC = "PPC_Spend";
inline constexpr const char* kREM = "Reminder_Emails_Sent";
inline constexpr const char* kVU = "Videos_Upload";
inline constexpr const char* kPV = "Page_Views";

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string web_traffic_path() { return std::string(REGRKIT_DATA_DIR) + "/web_traffic.csv"; }

/// The 15-month web-analytics export, ingested.
inline const Dataset& web_traffic() {
  static const Dataset d = ingest_csv(read_text(web_traffic_path()), {kMonth});
  return d;
}

inline std::vector<std::string> all_inputs() { return {kST, kBAS, kPPC, kREM, kVU}; }

/// Published correlation matrix, printed at two decimals, in ST, BAS, PPC, REM, VU, PV order.
inline const std::vector<std::vector<double>>& published_correlations() {
  static const std::vector<std::vector<double>> m = {
      {1, 0.95, 0.9, 0.93, 0.78, 0.99},  {0.95, 1, 0.98, 0.84, 0.82, 0.94}, {0.9, 0.98, 1, 0.74, 0.78, 0.88},
      {0.93, 0.84, 0.74, 1, 0.75, 0.95}, {0.78, 0.82, 0.78, 0.75, 1, 0.77}, {0.99, 0.94, 0.88, 0.95, 0.77, 1},
  };
  return m;
}

inline CorrelationMatrix published_correlation_matrix() {
  std::vector<double> flat;
  for (const auto& row : published_correlations()) flat.insert(flat.end(), row.begin(), row.end());
  return CorrelationMatrix({kST, kBAS, kPPC, kREM, kVU, kPV}, flat);
}

/// Published prediction columns, one entry per month.
struct PredictionColumn {
  const char* heading;
  std::vector<double> predicted;
  std::vector<double> error_pct;
};

inline const PredictionColumn& published_linear_full() {
  static const PredictionColumn c{
      "linear-full",
      {82075, 122368, 172733, 258909, 291308, 405251, 546349, 657569, 678259, 743938, 858830, 1098891, 1360869,
       1544234, 1873442},
      {310.375, 22.368, -13.634, 3.564, -2.898, 1.313, -0.664, 1.165, -3.106, -7.008, -4.575, -4.445, 4.683, 4.694,
       -1.398}};
  return c;
}

inline const PredictionColumn& published_linear_limited() {
  static const PredictionColumn c{
      "linear-limited",
      {141951, 139223, 187656, 259068, 291865, 403649, 543034, 623342, 653772, 741948, 846335, 1066700, 1297356,
       1556915, 1942216},
      {609.755, 39.223, -6.173, 3.627, -2.712, 0.913, -1.267, -4.102, -6.605, -7.257, -5.963, -7.244, -0.204, 5.554,
       2.222}};
  return c;
}

inline const PredictionColumn& published_svr_column_a() {
  static const PredictionColumn c{"svr-a",
                                  {54318, 97317, 150549, 260284, 258030, 409121, 591375, 667621, 699142, 785714,
                                   819846, 1144763, 1334870, 1474142, 1900859},
                                  {}};
  return c;
}

inline const PredictionColumn& published_svr_column_b() {
  static const PredictionColumn c{"svr-b",
                                  {51677, 100028, 156728, 261642, 259821, 399979, 577329, 660063, 699389, 782411,
                                   817285, 1137599, 1385749, 1475022, 1901074},
                                  {}};
  return c;
}

inline const PredictionColumn& published_svr_raw() {
  static const PredictionColumn c{"svr-raw",
                                  {34053, 131724, 200000, 280052, 285896, 390942, 550000, 662888, 700000, 768048,
                                   831864, 1150000, 1436100, 1475000, 1900000},
                                  {}};
  return c;
}

/// Growth table rows: total cost, estimated views, diff, profit %, trend.
struct PublishedGrowthRow {
  double total_cost;
  double estimated;
  double diff;
  double profit_pct;
  const char* trend;
};

inline const std::vector<PublishedGrowthRow>& published_growth() {
  static const std::vector<PublishedGrowthRow> rows = {
      {650, 20000, 0, 0, "NIL"},           {2500, 76924, 23076, 24, "INC"},
      {3000, 92308, 107692, 54, "INC"},    {1600, 49231, 200769, 81, "INC"},
      {1550, 47693, 252307, 85, "INC"},    {9734, 299508, 100492, 26, "DEC"},
      {16832, 517908, 32092, 6, "DEC"},    {11339, 348893, 301107, 47, "INC"},
      {3489, 107354, 592646, 85, "INC"},   {11723, 360708, 439292, 55, "DEC"},
      {14372, 442216, 457784, 51, "DEC"},  {29282, 900985, 249015, 22, "DEC"},
      {29378, 903939, 396061, 31, "INC"},  {24783, 762554, 712446, 49, "INC"},
      {55486, 1707262, 192738, 11, "DEC"},
  };
  return rows;
}

/// Correlation coefficients of the five published models.
inline constexpr double kCcLinearFull = 0.9973;
inline constexpr double kCcLinearLimited = 0.9931;
inline constexpr double kCcSvrA = 0.9975;
inline constexpr double kCcSvrB = 0.9977;
inline constexpr double kCcSvrRaw = 0.997;

}  // namespace regrkit::testing
