#include "rrw/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace rrw {

namespace {

constexpr int kIn = MlpModel::kIn;
constexpr int kH1 = MlpModel::kH1;
constexpr int kH2 = MlpModel::kH2;
constexpr int kOut = MlpModel::kOut;

void affine(const std::vector<double>& w, const std::vector<double>& b, const double* x, int in,
            int out, double* z)
{
    for (int o = 0; o < out; ++o) {
        double acc = b[o];
        const double* row = &w[(size_t)o * in];
        for (int i = 0; i < in; ++i) acc += row[i] * x[i];
        z[o] = acc;
    }
}

void softmax(const double* z, int n, double* p)
{
    double maxz = z[0];
    for (int i = 1; i < n; ++i) maxz = std::max(maxz, z[i]);
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        p[i] = std::exp(z[i] - maxz);
        sum += p[i];
    }
    for (int i = 0; i < n; ++i) p[i] /= sum;
}

struct Scratch {
    std::array<double, kH1> z1, a1;
    std::array<double, kH2> z2, a2;
    std::array<double, kOut> z3, p;
};

// Forward pass with optional dropout scale masks (train time only).
void forward_pass(const MlpModel& m, const double* x, const double* mask1, const double* mask2,
                  Scratch& s)
{
    affine(m.w1, m.b1, x, kIn, kH1, s.z1.data());
    for (int i = 0; i < kH1; ++i) {
        s.a1[i] = s.z1[i] > 0 ? s.z1[i] : 0.0;
        if (mask1) s.a1[i] *= mask1[i];
    }
    affine(m.w2, m.b2, s.a1.data(), kH1, kH2, s.z2.data());
    for (int i = 0; i < kH2; ++i) {
        s.a2[i] = s.z2[i] > 0 ? s.z2[i] : 0.0;
        if (mask2) s.a2[i] *= mask2[i];
    }
    affine(m.w3, m.b3, s.a2.data(), kH2, kOut, s.z3.data());
    softmax(s.z3.data(), kOut, s.p.data());
}

void zero_grads(MlpGradients& g)
{
    g.w1.assign((size_t)kH1 * kIn, 0.0);
    g.b1.assign(kH1, 0.0);
    g.w2.assign((size_t)kH2 * kH1, 0.0);
    g.b2.assign(kH2, 0.0);
    g.w3.assign((size_t)kOut * kH2, 0.0);
    g.b3.assign(kOut, 0.0);
}

// Accumulates gradients for one sample (already scaled by `weight`).
void backward_pass(const MlpModel& m, const double* x, int label, const double* mask1,
                   const double* mask2, const Scratch& s, double weight, MlpGradients& g)
{
    std::array<double, kOut> dz3;
    for (int o = 0; o < kOut; ++o) dz3[o] = (s.p[o] - (o == label ? 1.0 : 0.0)) * weight;
    for (int o = 0; o < kOut; ++o) {
        for (int i = 0; i < kH2; ++i) g.w3[(size_t)o * kH2 + i] += dz3[o] * s.a2[i];
        g.b3[o] += dz3[o];
    }
    std::array<double, kH2> dz2;
    for (int i = 0; i < kH2; ++i) {
        double da = 0;
        for (int o = 0; o < kOut; ++o) da += m.w3[(size_t)o * kH2 + i] * dz3[o];
        if (mask2) da *= mask2[i];
        dz2[i] = s.z2[i] > 0 ? da : 0.0;
    }
    for (int o = 0; o < kH2; ++o) {
        for (int i = 0; i < kH1; ++i) g.w2[(size_t)o * kH1 + i] += dz2[o] * s.a1[i];
        g.b2[o] += dz2[o];
    }
    std::array<double, kH1> dz1;
    for (int i = 0; i < kH1; ++i) {
        double da = 0;
        for (int o = 0; o < kH2; ++o) da += m.w2[(size_t)o * kH1 + i] * dz2[o];
        if (mask1) da *= mask1[i];
        dz1[i] = s.z1[i] > 0 ? da : 0.0;
    }
    for (int o = 0; o < kH1; ++o) {
        for (int i = 0; i < kIn; ++i) g.w1[(size_t)o * kIn + i] += dz1[o] * x[i];
        g.b1[o] += dz1[o];
    }
}

void write_array(std::ostream& out, const std::vector<double>& a)
{
    for (size_t i = 0; i < a.size(); ++i) out << (i ? " " : "") << a[i];
    out << '\n';
}

std::vector<double> read_array(std::istream& in, size_t n)
{
    std::vector<double> a(n);
    for (size_t i = 0; i < n; ++i)
        if (!(in >> a[i])) throw ParseError("truncated model file");
    return a;
}

}  // namespace

std::array<double, MlpModel::kOut> MlpModel::forward(const std::array<double, kIn>& x) const
{
    Scratch s;
    forward_pass(*this, x.data(), nullptr, nullptr, s);
    return s.p;
}

void MlpModel::save(const std::string& path) const
{
    std::ofstream out(path);
    out << "rrw-mlp v1\n";
    out << kIn << ' ' << kH1 << ' ' << kH2 << ' ' << kOut << '\n';
    write_array(out, w1);
    write_array(out, b1);
    write_array(out, w2);
    write_array(out, b2);
    write_array(out, w3);
    write_array(out, b3);
}

MlpModel MlpModel::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model " + path);
    std::string magic, version;
    in >> magic >> version;
    if (magic != "rrw-mlp" || version != "v1") throw ParseError("model version mismatch");
    int i, h1, h2, o;
    if (!(in >> i >> h1 >> h2 >> o) || i != kIn || h1 != kH1 || h2 != kH2 || o != kOut)
        throw ParseError("model layer dimensions mismatch");
    MlpModel m;
    m.w1 = read_array(in, (size_t)kH1 * kIn);
    m.b1 = read_array(in, kH1);
    m.w2 = read_array(in, (size_t)kH2 * kH1);
    m.b2 = read_array(in, kH2);
    m.w3 = read_array(in, (size_t)kOut * kH2);
    m.b3 = read_array(in, kOut);
    return m;
}

double mlp_loss_and_grad(const MlpModel& m, const std::vector<std::array<double, kIn>>& xs,
                         const std::vector<int>& ys, MlpGradients* grads)
{
    assert(xs.size() == ys.size() && !xs.empty());
    if (grads) zero_grads(*grads);
    Scratch s;
    double loss = 0;
    const double weight = 1.0 / (double)xs.size();
    for (size_t i = 0; i < xs.size(); ++i) {
        forward_pass(m, xs[i].data(), nullptr, nullptr, s);
        loss += -std::log(std::max(s.p[ys[i]], 1e-300)) * weight;
        if (grads) backward_pass(m, xs[i].data(), ys[i], nullptr, nullptr, s, weight, *grads);
    }
    return loss;
}

std::array<double, MlpModel::kIn> feature_array(const FeatureVector& fv)
{
    return {(double)fv.is_critical,    (double)fv.input_size,
            (double)fv.node_size,      (double)fv.fanout_size,
            (double)fv.positive_edges, (double)fv.negative_edges,
            (double)fv.max_depth};
}

std::pair<MlpModel, double> mlp_train(const Dataset& dataset, const MlpTrainParams& params)
{
    std::array<bool, kOut> present{};
    for (const auto& [fv, label] : dataset.rows) present[(int)label] = true;
    if ((int)present[0] + (int)present[1] + (int)present[2] < 2)
        throw DegenerateDataset("dataset has fewer than 2 classes");

    std::mt19937_64 rng(params.seed);
    std::vector<size_t> order(dataset.rows.size());
    std::iota(order.begin(), order.end(), 0);
    for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);

    size_t train_count = (size_t)((double)order.size() * params.split_ratio);
    train_count = std::clamp(train_count, (size_t)1, order.size() - 1);

    std::vector<std::array<double, kIn>> xs(order.size());
    std::vector<int> ys(order.size());
    for (size_t i = 0; i < order.size(); ++i) {
        xs[i] = feature_array(dataset.rows[order[i]].first);
        ys[i] = (int)dataset.rows[order[i]].second;
    }

    // Standardize on the training split; folded into layer 1 afterwards.
    std::array<double, kIn> mean{}, sdev{};
    for (size_t i = 0; i < train_count; ++i)
        for (int f = 0; f < kIn; ++f) mean[f] += xs[i][f];
    for (int f = 0; f < kIn; ++f) mean[f] /= (double)train_count;
    for (size_t i = 0; i < train_count; ++i)
        for (int f = 0; f < kIn; ++f) sdev[f] += (xs[i][f] - mean[f]) * (xs[i][f] - mean[f]);
    for (int f = 0; f < kIn; ++f) {
        sdev[f] = std::sqrt(sdev[f] / (double)train_count);
        if (sdev[f] < 1e-12) sdev[f] = 1.0;
    }
    std::vector<std::array<double, kIn>> xn = xs;
    for (auto& x : xn)
        for (int f = 0; f < kIn; ++f) x[f] = (x[f] - mean[f]) / sdev[f];

    MlpModel m;
    auto init = [&](std::vector<double>& w, int fan_in, int fan_out) {
        const double r = std::sqrt(6.0 / (double)(fan_in + fan_out));
        w.resize((size_t)fan_in * fan_out);
        for (double& v : w) v = ((double)(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0) * r;
    };
    init(m.w1, kIn, kH1);
    m.b1.assign(kH1, 0.0);
    init(m.w2, kH1, kH2);
    m.b2.assign(kH2, 0.0);
    init(m.w3, kH2, kOut);
    m.b3.assign(kOut, 0.0);

    const double keep = 1.0 - params.dropout;
    MlpGradients g;
    Scratch s;
    std::vector<double> mask1(kH1), mask2(kH2);
    std::vector<size_t> idx(train_count);
    std::iota(idx.begin(), idx.end(), 0);

    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        for (size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[rng() % i]);
        for (size_t start = 0; start < idx.size(); start += (size_t)params.batch_size) {
            const size_t end = std::min(idx.size(), start + (size_t)params.batch_size);
            zero_grads(g);
            const double weight = 1.0 / (double)(end - start);
            for (size_t k = start; k < end; ++k) {
                const size_t i = idx[k];
                if (params.dropout > 0) {
                    for (double& v : mask1)
                        v = ((double)(rng() >> 11) * 0x1.0p-53 < keep) ? 1.0 / keep : 0.0;
                    for (double& v : mask2)
                        v = ((double)(rng() >> 11) * 0x1.0p-53 < keep) ? 1.0 / keep : 0.0;
                }
                const double* m1 = params.dropout > 0 ? mask1.data() : nullptr;
                const double* m2 = params.dropout > 0 ? mask2.data() : nullptr;
                forward_pass(m, xn[i].data(), m1, m2, s);
                backward_pass(m, xn[i].data(), ys[i], m1, m2, s, weight, g);
            }
            auto step = [&](std::vector<double>& w, const std::vector<double>& gw) {
                for (size_t k = 0; k < w.size(); ++k) w[k] -= params.lr * gw[k];
            };
            step(m.w1, g.w1);
            step(m.b1, g.b1);
            step(m.w2, g.w2);
            step(m.b2, g.b2);
            step(m.w3, g.w3);
            step(m.b3, g.b3);
        }
    }

    // Fold standardization: W1' = W1 / sdev (per column), b1' = b1 - W1 (mean/sdev).
    for (int o = 0; o < kH1; ++o) {
        double shift = 0;
        for (int f = 0; f < kIn; ++f) {
            shift += m.w1[(size_t)o * kIn + f] * mean[f] / sdev[f];
            m.w1[(size_t)o * kIn + f] /= sdev[f];
        }
        m.b1[o] -= shift;
    }

    size_t correct = 0;
    for (size_t i = train_count; i < xs.size(); ++i) {
        const auto probs = m.forward(xs[i]);
        const int pred = (int)(std::max_element(probs.begin(), probs.end()) - probs.begin());
        if (pred == ys[i]) ++correct;
    }
    const double accuracy = (double)correct / (double)(xs.size() - train_count);
    return {std::move(m), accuracy};
}

Action select_strategy(const MlpModel* model, const FeatureVector& fv)
{
    const std::vector<Action> allowed = possible_actions(fv);
    if (!model) return fv.input_size <= 5 ? Action::Exact : Action::Isop;
    const auto probs = model->forward(feature_array(fv));
    const int argmax = (int)(std::max_element(probs.begin(), probs.end()) - probs.begin());
    Action best = allowed[0];
    double best_p = -1;
    for (Action a : allowed) {
        if ((int)a == argmax) return a;
        if (probs[(int)a] > best_p) {
            best_p = probs[(int)a];
            best = a;
        }
    }
    return best;
}

}  // namespace rrw
