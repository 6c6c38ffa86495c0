#ifndef RATWAVE_REFERENCE_TABLES_HPP
#define RATWAVE_REFERENCE_TABLES_HPP

#include <string_view>
#include <vector>

namespace ratwave::reference {

/// One rational approximation column of a reference coefficient table.
struct RationalColumn {
    int dyadic_bits;                        // phi rounded to multiples of 2^-bits
    std::vector<std::string_view> taps;     // exact h0 as "p/q"
    std::vector<std::string_view> moments;  // printed M_1, M_2, ... (rounded)
};

struct CoefficientTable {
    int genus;
    std::vector<std::string_view> daubechies; // printed float column, 15 digits
    std::vector<RationalColumn> columns;
};

/// Genus 2. The printed M_1 of the first rational column reads 0.59 while
/// its taps give 1/17 = 0.0588...; the list keeps the printed text.
inline const CoefficientTable& genus2_table() {
    static const CoefficientTable t{
        2,
        {"0.683012701892219", "1.18301270189222", "0.316987298107781", "-0.183012701892219"},
        {
            {2, {"12/17", "20/17", "5/17", "-3/17"}, {"0.59"}},
            {6, {"3008/4385", "5184/4385", "1377/4385", "-799/4385"}, {"0.008"}},
            {9, {"192000/280913", "332288/280913", "88913/280913", "-51375/280913"}, {"0.001"}},
        }};
    return t;
}

inline const CoefficientTable& genus3_table() {
    static const CoefficientTable t{
        3,
        {"0.470467207784164", "1.14111691583144", "0.650365000526232", "-0.190934415568327", "-0.120832208310396",
         "0.0498174997368838"},
        {
            {3, {"2888/5249", "5944/5249", "3104/5249", "-1056/5249", "-743/5249", "361/5249"}, {"0.256", "1.622"}},
            {6,
             {"2132672/4439725", "5059904/4439725", "572096/887945", "-170688/887945", "-553427/4439725",
              "233261/4439725"},
             {"0.0357", "0.2169"}},
            {9,
             {"2677170944/5703228401", "6509075712/5703228401", "3712561536/5703228401", "-1088205184/5703228401",
              "-686504079/5703228401", "282357873/5703228401"},
             {"-0.0040", "-0.0239"}},
        }};
    return t;
}

inline std::vector<const CoefficientTable*> all_tables() { return {&genus2_table(), &genus3_table()}; }

} // namespace ratwave::reference

#endif // RATWAVE_REFERENCE_TABLES_HPP
