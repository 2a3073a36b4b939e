#include "nrgit/homdim.hpp"

#include <numeric>

namespace nrgit {

long monomial_count_degree(int d) {
    if (d < 0) return 0;
    long count = 0;
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j)
            if (i + j == d) ++count;
    return count;
}

HomDimResult homdim(const HNType& type) {
    if (type.a.empty() || type.b.empty())
        throw MathError("HN type needs nonempty degree lists");
    long sa = std::accumulate(type.a.begin(), type.a.end(), 0L);
    long sb = std::accumulate(type.b.begin(), type.b.end(), 0L);
    // mean(a) > mean(b), compared exactly
    if (sa * static_cast<long>(type.b.size()) <= sb * static_cast<long>(type.a.size()))
        throw MathError("slope condition violated: mean(a) must exceed mean(b)");
    HomDimResult out;
    for (int ai : type.a) {
        std::vector<long> row;
        for (int bj : type.b) {
            long d = monomial_count_degree(ai - bj);
            row.push_back(d);
            out.delta += d;
        }
        out.table.push_back(std::move(row));
    }
    return out;
}

} // namespace nrgit
