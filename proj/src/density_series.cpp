#include "spikewalk/density_series.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "spikewalk/error.hpp"

namespace spikewalk {

void DensitySeries::write_csv(std::ostream& os) const {
    os << "step,state_id,count\n";
    for (Eigen::Index k = 0; k < counts.rows(); ++k) {
        for (Eigen::Index s = 0; s < counts.cols(); ++s) {
            if (counts(k, s) != 0) {
                os << k << ',' << s << ',' << counts(k, s) << '\n';
            }
        }
    }
}

DensitySeries DensitySeries::read_csv(std::istream& is, int n_states, double dt) {
    if (n_states <= 0) raise(ErrorKind::domain, "density: n_states must be positive");
    std::string line;
    if (!std::getline(is, line)) raise(ErrorKind::config, "density: empty csv");
    struct Row {
        long step;
        long state;
        long long count;
    };
    std::vector<Row> rows;
    long max_step = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Row r{};
        char c1 = 0, c2 = 0;
        if (!(ls >> r.step >> c1 >> r.state >> c2 >> r.count) || c1 != ',' || c2 != ',') {
            raise(ErrorKind::config, "density: malformed csv row: " + line);
        }
        if (r.step < 0 || r.state < 0 || r.state >= n_states) {
            raise(ErrorKind::config, "density: csv row out of range: " + line);
        }
        max_step = std::max(max_step, r.step);
        rows.push_back(r);
    }
    DensitySeries out;
    out.dt = dt;
    out.counts.setZero(max_step + 1, n_states);
    for (const Row& r : rows) out.counts(r.step, r.state) += r.count;
    return out;
}

} // namespace spikewalk
