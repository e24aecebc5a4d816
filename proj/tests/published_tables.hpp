#pragma once

// Published efficiencies and (q*)^{k/2} of B(q*, K*(k)) for k = 2^{t+1}
// (table 2) and k = 2^{t+2} - 1 (table 3).

#include <vector>

struct PublishedRow {
  long k;
  int t;
  double efficiency;
  double half_power;
};

inline const std::vector<PublishedRow> kTable2 = {
    {2, 0, 1, 2},
    {4, 1, 1.527864045, 2.61803399},
    {8, 2, 1.446619893, 2.220744085},
    {16, 3, 1.414522345, 2.096981559},
    {32, 4, 1.399982156, 2.045751025},
    {64, 5, 1.393037798, 2.022250526},
    {128, 6, 1.389641669, 2.010975735},
    {256, 7, 1.389039657, 2.006538067},
    {512, 8, 1.38976776, 2.005370202},
    {1024, 9, 1.389961428, 2.004616597},
    {2048, 10, 1.389901672, 2.004083324},
    {4096, 11, 1.3897339, 2.003678733},
    {8192, 12, 1.389529892, 2.003356204},
    {16384, 13, 1.389323191, 2.003090123},
    {32768, 14, 1.389128152, 2.002865287},
    {65536, 15, 1.388949844, 2.002671985},
    {131072, 16, 1.388789052, 2.002503614},
    {262144, 17, 1.388644741, 2.002355444},
};

inline const std::vector<PublishedRow> kTable3 = {
    {3, 0, 1.145898034, 2.058171027},
    {7, 1, 1.318433761, 2.075892596},
    {15, 2, 1.408092224, 2.09450451},
    {31, 3, 1.448810165, 2.099878619},
    {63, 4, 1.46399549, 2.097270918},
    {127, 5, 1.466865403, 2.091122952},
    {255, 6, 1.464278319, 2.083917032},
    {511, 7, 1.459602376, 2.076835761},
    {1023, 8, 1.454408143, 2.070357915},
    {2047, 9, 1.449377613, 2.064618545},
    {4095, 10, 1.444769023, 2.059600382},
    {8191, 11, 1.440647199, 2.055228333},
    {16383, 12, 1.436994729, 2.051413108},
    {32767, 13, 1.43376402, 2.048069607},
    {65535, 14, 1.430900622, 2.045123383},
    {131071, 15, 1.428352881, 2.042511814},
    {262143, 16, 1.426075306, 2.040183169},
};
