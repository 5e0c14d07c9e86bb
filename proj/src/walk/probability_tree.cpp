#include "spikewalk/walk/probability_tree.hpp"

#include <algorithm>
#include <cmath>

#include "spikewalk/error.hpp"

namespace spikewalk::walk {

namespace {

void check_distribution(const double* nu, size_t n) {
    double sum = 0;
    for (size_t i = 0; i < n; ++i) {
        if (!(nu[i] >= 0.0))
            raise(ErrorKind::domain, "exit probabilities must be >= 0");
        sum += nu[i];
    }
    if (std::abs(sum - 1.0) > 1e-9)
        raise(ErrorKind::domain, "exit probabilities must sum to 1");
}

} // namespace

int ProbabilityTree::depth() const {
    int d = 0;
    for (int m = 1; m < n_leaves; m <<= 1) ++d;
    return d;
}

std::vector<std::pair<int, bool>> ProbabilityTree::path(int leaf) const {
    std::vector<std::pair<int, bool>> out;
    int idx = n_leaves - 1 + leaf;
    while (idx > 0) {
        const int parent = (idx - 1) / 2;
        out.emplace_back(parent, idx == 2 * parent + 1);
        idx = parent;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

double ProbabilityTree::leaf_probability(int leaf) const {
    double prob = 1.0;
    for (const auto& [node, positive] : path(leaf))
        prob *= positive ? p[node] : 1.0 - p[node];
    return prob;
}

ProbabilityTree build_probability_tree(const std::vector<double>& nu) {
    if (nu.empty())
        raise(ErrorKind::domain, "exit distribution is empty");
    check_distribution(nu.data(), nu.size());

    ProbabilityTree tree;
    tree.n_original = static_cast<int>(nu.size());
    tree.n_leaves = 1;
    while (tree.n_leaves < tree.n_original) tree.n_leaves <<= 1;
    tree.nu = nu;
    tree.nu.resize(tree.n_leaves, 0.0);

    // Subtree sums bottom-up, then conditional left-branch probabilities.
    std::vector<double> sum(2 * tree.n_leaves - 1, 0.0);
    for (int j = 0; j < tree.n_leaves; ++j)
        sum[tree.n_leaves - 1 + j] = tree.nu[j];
    for (int i = tree.n_leaves - 2; i >= 0; --i)
        sum[i] = sum[2 * i + 1] + sum[2 * i + 2];

    tree.p.assign(tree.n_leaves - 1, 0.0);
    for (int i = 0; i < tree.n_leaves - 1; ++i)
        tree.p[i] = sum[i] > 0.0 ? sum[2 * i + 1] / sum[i] : 0.0;
    return tree;
}

QuantizedProb quantize_probability(double p) {
    if (!(p >= 0.0) || !(p <= 1.0))
        raise(ErrorKind::domain, "probability outside [0, 1]");
    const int k = static_cast<int>(std::llround(p * 256.0));
    if (k == 0) return {true, 0};
    return {false, k};
}

int loihi_weight_for_probability(double p) {
    if (!(p >= 0.0) || !(p <= 1.0))
        raise(ErrorKind::domain, "probability outside [0, 1]");
    return static_cast<int>(std::llround(128.0 * p + 36.0));
}

double loihi_fire_rate_for_weight(int w) {
    // #{n in [-127, 128] : w + n >= 100} = w + 29, clamped to [0, 256].
    int count = w + 29;
    if (count < 0) count = 0;
    if (count > 256) count = 256;
    return count / 256.0;
}

TruenorthSplit build_truenorth_split(const std::array<double, 4>& nu) {
    check_distribution(nu.data(), nu.size());

    const double pair01 = nu[0] + nu[1];
    const double pair23 = nu[2] + nu[3];
    TruenorthSplit split;
    split.r0 = quantize_probability(pair01);
    split.r1 = quantize_probability(pair01 > 0.0 ? nu[0] / pair01 : 0.0);
    split.r2 = quantize_probability(pair23 > 0.0 ? nu[2] / pair23 : 0.0);

    // Integer products over a 65536 denominator stay exact in double.
    const int k0 = split.r0.k, k1 = split.r1.k, k2 = split.r2.k;
    split.realized[0] = (k0 * k1) / 65536.0;
    split.realized[1] = (k0 * (256 - k1)) / 65536.0;
    split.realized[2] = ((256 - k0) * k2) / 65536.0;
    split.realized[3] = ((256 - k0) * (256 - k2)) / 65536.0;
    return split;
}

} // namespace spikewalk::walk
