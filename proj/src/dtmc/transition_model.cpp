#include "spikewalk/dtmc/transition_model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <vector>

#include <nlohmann/json.hpp>

#include "spikewalk/error.hpp"

namespace spikewalk::dtmc {

const Eigen::MatrixXd& TransitionModel::matrix(int k) const {
    if (steps.empty()) raise(ErrorKind::structural, "transition model has no matrices");
    if (k < 0) raise(ErrorKind::domain, "step index must be non-negative");
    const size_t idx = std::min<size_t>(static_cast<size_t>(k), steps.size() - 1);
    return steps[idx];
}

void TransitionModel::validate(double tol) const {
    if (steps.empty()) raise(ErrorKind::structural, "transition model has no matrices");
    const Eigen::Index n = steps.front().rows();
    if (n == 0) raise(ErrorKind::structural, "transition model has zero states");
    for (const Eigen::MatrixXd& m : steps) {
        if (m.rows() != n || m.cols() != n) {
            raise(ErrorKind::structural, "transition matrices must be square and uniformly sized");
        }
        if ((m.array() < -0.0).any() || (m.array() > 1.0).any()) {
            raise(ErrorKind::structural, "transition probabilities must lie in [0,1]");
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            const double s = m.row(i).sum();
            if (std::abs(s - 1.0) > tol) {
                raise(ErrorKind::structural,
                      "row " + std::to_string(i) + " sums to " + std::to_string(s));
            }
        }
    }
    if (positions.size() != 0 && positions.rows() != n) {
        raise(ErrorKind::structural, "positions row count does not match state count");
    }
    if (absorbing) {
        if (*absorbing < 0 || *absorbing >= n) {
            raise(ErrorKind::structural, "absorbing state out of range");
        }
        for (const Eigen::MatrixXd& m : steps) {
            if (m(*absorbing, *absorbing) != 1.0) {
                raise(ErrorKind::structural, "absorbing state must self-loop with probability 1");
            }
        }
    }
}

void repair_row_sum(RowRef row) {
    std::vector<Eigen::Index> order(static_cast<size_t>(row.size()));
    for (Eigen::Index i = 0; i < row.size(); ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&row](Eigen::Index a, Eigen::Index b) { return row[a] > row[b]; });

    // Bulk phase: fold the whole defect into the largest nonzero entry that
    // can represent the change. This brings the sum within a few ulps of 1.
    for (int pass = 0; pass < 8; ++pass) {
        const double s = row.sum();
        if (s == 1.0) return;
        const double defect = 1.0 - s;
        bool applied = false;
        for (Eigen::Index idx : order) {
            if (row[idx] <= 0.0) continue; // never create a new transition
            const double candidate = row[idx] + defect;
            if (candidate != row[idx] && candidate >= 0.0) {
                row[idx] = candidate;
                applied = true;
                break;
            }
        }
        if (!applied) break;
    }

    // Fine phase: whole-defect corrections can cycle around 1.0 without ever
    // landing on it, because the summation's rounding granularity near 1.0
    // differs from the perturbed entry's. The sum is monotone in each entry,
    // so stepping one entry ulp by ulp toward the defect lands exactly on 1.0
    // whenever that entry's rounding phase allows it; otherwise try the next.
    for (Eigen::Index idx : order) {
        if (row[idx] <= 0.0) continue;
        const double saved = row[idx];
        const double first_defect = 1.0 - row.sum();
        for (int step = 0; step < 64; ++step) {
            const double s = row.sum();
            if (s == 1.0) return;
            const double defect = 1.0 - s;
            if (defect * first_defect < 0.0) break; // stepped over; give up here
            const double next = std::nextafter(
                row[idx], defect > 0.0 ? std::numeric_limits<double>::infinity()
                                       : -std::numeric_limits<double>::infinity());
            if (next < 0.0) break;
            row[idx] = next;
        }
        if (row.sum() == 1.0) return;
        row[idx] = saved;
    }
    // Some rows cannot reach a floating-point sum of exactly 1.0: the
    // summation chain's rounding grid near 1.0 can skip it for every entry
    // perturbation. Accept a residual within a few ulps; anything larger is a
    // genuine construction failure.
    if (std::abs(1.0 - row.sum()) >
        4.0 * std::numeric_limits<double>::epsilon())
        raise(ErrorKind::structural, "row-sum repair failed to converge");
}

void TransitionModel::write_json(std::ostream& os) const {
    nlohmann::json j;
    j["dt"] = dt;
    j["n_states"] = n_states();
    if (absorbing) {
        j["absorbing_id"] = *absorbing;
    } else {
        j["absorbing_id"] = nullptr;
    }
    if (positions.size() != 0) {
        nlohmann::json states = nlohmann::json::array();
        for (Eigen::Index i = 0; i < positions.rows(); ++i) {
            nlohmann::json pos = nlohmann::json::array();
            for (Eigen::Index d = 0; d < positions.cols(); ++d) pos.push_back(positions(i, d));
            states.push_back({{"id", i}, {"position", pos}});
        }
        j["states"] = std::move(states);
    }
    nlohmann::json layers = nlohmann::json::array();
    for (const Eigen::MatrixXd& m : steps) {
        nlohmann::json rows = nlohmann::json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                if (m(i, c) != 0.0) {
                    // Entries carry the exact probability and its 8-bit grid
                    // image round(256 p).
                    row.push_back({c, m(i, c), std::llround(256.0 * m(i, c))});
                }
            }
            rows.push_back(std::move(row));
        }
        layers.push_back(std::move(rows));
    }
    j["layers"] = std::move(layers);
    os << j.dump(2) << '\n';
}

TransitionModel TransitionModel::read_json(std::istream& is) {
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorKind::config, std::string("transition model json parse: ") + e.what());
    }
    TransitionModel out;
    try {
        out.dt = j.at("dt").get<double>();
        const int n = j.at("n_states").get<int>();
        if (n <= 0) raise(ErrorKind::config, "transition model: n_states must be positive");
        if (!j.at("absorbing_id").is_null()) out.absorbing = j["absorbing_id"].get<int>();
        if (j.contains("states")) {
            const auto& states = j["states"];
            if (static_cast<int>(states.size()) != n) {
                raise(ErrorKind::config, "transition model: states array size mismatch");
            }
            const size_t dims = states.empty() ? 0 : states.front().at("position").size();
            out.positions.resize(n, static_cast<Eigen::Index>(dims));
            for (const auto& st : states) {
                const int id = st.at("id").get<int>();
                if (id < 0 || id >= n) raise(ErrorKind::config, "transition model: state id out of range");
                const auto& pos = st.at("position");
                if (pos.size() != dims) raise(ErrorKind::config, "transition model: ragged positions");
                for (size_t d = 0; d < dims; ++d) {
                    out.positions(id, static_cast<Eigen::Index>(d)) = pos[d].get<double>();
                }
            }
        }
        for (const auto& rows : j.at("layers")) {
            if (static_cast<int>(rows.size()) != n) {
                raise(ErrorKind::config, "transition model: layer row count mismatch");
            }
            Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
            for (int i = 0; i < n; ++i) {
                for (const auto& entry : rows[i]) {
                    const int c = entry.at(0).get<int>();
                    if (c < 0 || c >= n) raise(ErrorKind::config, "transition model: column out of range");
                    m(i, c) = entry.at(1).get<double>();
                }
            }
            out.steps.push_back(std::move(m));
        }
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorKind::config, std::string("transition model json: ") + e.what());
    }
    out.validate();
    return out;
}

} // namespace spikewalk::dtmc
