#pragma once

#include <algorithm>
#include <vector>

#include "rrtcut/exact.hpp"
#include "rrtcut/stats.hpp"

namespace testing {

// Pearson p-value of integer samples against an exact law. Atoms whose
// expected count is below 5 are pooled with their left neighbour.
inline double law_p_value(const std::vector<std::int64_t>& samples, const rrtcut::ExactPmf& law) {
    const double m = static_cast<double>(samples.size());
    std::vector<std::uint64_t> counts;
    std::vector<double> probs;
    for (std::int64_t k = law.first; k <= law.last(); ++k) {
        const auto c = static_cast<std::uint64_t>(std::count(samples.begin(), samples.end(), k));
        const double p = law.at(k).get_d();
        if (!probs.empty() && (p * m < 5 || probs.back() * m < 5)) {
            counts.back() += c;
            probs.back() += p;
        } else {
            counts.push_back(c);
            probs.push_back(p);
        }
    }
    return rrtcut::stats::chi_square_gof(counts, probs).p_value;
}

}  // namespace testing
