#pragma once

#include <array>
#include <cstddef>
#include <string_view>

// Published measurements of Partition Sort, transcribed digit for digit.
// Times are mean seconds over 50 readings each.

namespace pslab::fixtures {

/// Cauchy inputs, mean time against array size.
inline constexpr std::string_view kTable1Csv =
    "n,time\n"
    "10000,0.05168\n"
    "20000,0.10816\n"
    "30000,0.1487\n"
    "40000,0.17218\n"
    "50000,0.20494\n"
    "60000,0.24078\n"
    "70000,0.2659\n"
    "80000,0.31322\n"
    "90000,0.35128\n"
    "100000,0.39496\n";

/// Binomial(m, p) inputs on the 3^3 design, one cell mean per row.
inline constexpr std::string_view kTable2Csv =
    "n,m,p,time\n"
    "50000,100,0.2,0.07248\n"
    "50000,100,0.5,0.07968\n"
    "50000,100,0.8,0.07314\n"
    "50000,1000,0.2,0.09662\n"
    "50000,1000,0.5,0.10186\n"
    "50000,1000,0.8,0.09884\n"
    "50000,1500,0.2,0.10032\n"
    "50000,1500,0.5,0.10618\n"
    "50000,1500,0.8,0.10212\n"
    "100000,100,0.2,0.16502\n"
    "100000,100,0.5,0.1734\n"
    "100000,100,0.8,0.16638\n"
    "100000,1000,0.2,0.21394\n"
    "100000,1000,0.5,0.22318\n"
    "100000,1000,0.8,0.21468\n"
    "100000,1500,0.2,0.22194\n"
    "100000,1500,0.5,0.23084\n"
    "100000,1500,0.8,0.22356\n"
    "150000,100,0.2,0.26242\n"
    "150000,100,0.5,0.27632\n"
    "150000,100,0.8,0.26322\n"
    "150000,1000,0.2,0.33988\n"
    "150000,1000,0.5,0.35744\n"
    "150000,1000,0.8,0.34436\n"
    "150000,1500,0.2,0.35648\n"
    "150000,1500,0.5,0.37\n"
    "150000,1500,0.8,0.35572\n";

/// Binomial(m, 0.5) inputs, n = 50000.
inline constexpr std::string_view kTable4Csv =
    "m,time\n"
    "100,0.07968\n"
    "300,0.09066\n"
    "500,0.09586\n"
    "700,0.09968\n"
    "900,0.10154\n"
    "1100,0.10438\n"
    "1300,0.10282\n"
    "1500,0.10618\n";

/// Binomial(1000, p) inputs, n = 50000.
inline constexpr std::string_view kTable5Csv =
    "p,time\n"
    "0.1,0.09084\n"
    "0.2,0.09662\n"
    "0.3,0.09884\n"
    "0.4,0.10198\n"
    "0.5,0.10186\n"
    "0.6,0.10034\n"
    "0.7,0.0989\n"
    "0.8,0.09884\n"
    "0.9,0.09096\n";

/// Published ANOVA on the Table 2 data: source, DF, Seq SS.
struct PublishedAnovaRow {
  std::string_view source;
  std::size_t df;
  double seq_ss;
};

inline constexpr std::array<PublishedAnovaRow, 9> kTable3 = {{
    {"n", 2, 0.731167},
    {"m", 2, 0.056680},
    {"p", 2, 0.001440},
    {"n*m", 4, 0.011331},
    {"n*p", 4, 0.000283},
    {"m*p", 4, 0.000034},
    {"n*m*p", 8, 0.000046},
    {"Error", 54, 0.000001},
    {"Total", 80, 0.800982},
}};

}  // namespace pslab::fixtures
