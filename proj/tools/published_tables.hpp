#pragma once

#include <array>
#include <string_view>

namespace blend::cli {

// Printed values of the five published runs, rows N = 1..8, with the step
// each run is reproduced at.
struct PublishedTable {
    int id;
    std::string_view title;
    double h;
    double tolerance;  // absolute, for the match column
    std::array<double, 8> values;
    std::string_view note;
};

inline constexpr std::array<PublishedTable, 5> kPublishedTables{{
    {1, "sin at theta=0, small h", 0.1, 1e-12,
     {0.998334166468282, 1.003321678961257, 1.000029893016725, 0.999980308400858,
      0.999999646316608, 1.000000137620388, 1.000000003815154, 0.999999998963623},
     "printed caption says h=0.01; every row is reproduced at h=0.1 (N=1 equals sin(0.1)/0.1)"},
    {2, "sin at theta=0, large h", 1.0, 1e-12,
     {0.841470984807897, 1.228293256202952, 1.207506816871789, 1.015352293328013,
      0.885486080979581, 0.903764738896000, 1.003453862663737, 1.071046882890327},
     "h=1 lies outside the step domain h < 1/(2e); the trace oscillates"},
    {3, "5 theta^4 at theta=2", 0.001, 1e-9,
     {160.1200400049834, 159.9999199699909, 160.0000299999870, 159.9999999999799,
      159.9999999999719, 159.9999999999577, 159.9999999999281, 159.9999999999981},
     "printed caption says h=0.01; the N=1 row equals the h=0.001 forward difference, so the run uses h=0.001"},
    {4, "directional derivative of sum 2^-i theta_i^2, m=9", 0.01, 1e-9,
     {3.958029296875054, 3.957031250000576, 3.957031250002056, 3.957031250004276,
      3.957031250005520, 3.957031250007444, 3.957031250013154, 3.957031250013043},
     "published values are not reproduced by the stated function and direction; the analytic "
     "directional derivative is reported alongside"},
    {5, "tandem queue blocking probability, d/d lambda at lambda=1", 0.01, 1e-8,
     {0.613180514116096, 0.610046682208255, 0.609671969013386, 0.609661671019043,
      0.609662935724646, 0.609663162694883, 0.609663173459084, 0.609663170509458},
     "model: lambda=1, mu1=1, mu2=2, capacities 10/10 counting the job in service, "
     "station 1 stopped while station 2 is full, loss metric P(n1 = cap1)"},
}};

inline constexpr double kPublishedQueueDerivative = 0.609663168;

} // namespace blend::cli
