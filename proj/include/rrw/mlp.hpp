#pragma once

#include <array>
#include <string>
#include <vector>

#include "rrw/qlearn.hpp"
#include "rrw/strategy.hpp"

namespace rrw {

/// Dense 7 -> 128 -> 32 -> 3 classifier with ReLU hidden layers, dropout
/// after each hidden layer during training, and a softmax output.
/// Feature standardization is folded into the first layer after training, so
/// inference takes raw feature values.
struct MlpModel {
    static constexpr int kIn = 7;
    static constexpr int kH1 = 128;
    static constexpr int kH2 = 32;
    static constexpr int kOut = 3;

    std::vector<double> w1, b1, w2, b2, w3, b3;  // row-major [rows x cols]

    /// Softmax class probabilities; dropout is inference-off by construction.
    std::array<double, kOut> forward(const std::array<double, kIn>& x) const;

    void save(const std::string& path) const;
    static MlpModel load(const std::string& path);
};

struct MlpGradients {
    std::vector<double> w1, b1, w2, b2, w3, b3;
};

/// Mean cross-entropy over the batch; fills parameter gradients by
/// backpropagation (no dropout). The finite-difference oracle in the tests
/// checks these.
double mlp_loss_and_grad(const MlpModel& m, const std::vector<std::array<double, MlpModel::kIn>>& xs,
                         const std::vector<int>& ys, MlpGradients* grads);

struct MlpTrainParams {
    int epochs = 10000;
    double lr = 1e-3;
    double dropout = 0.2;
    double split_ratio = 0.8;
    uint64_t seed = 1;
    int batch_size = 32;
};

/// Shuffled split, minibatch gradient descent on cross-entropy, dropout
/// active only during training. Returns the model and held-out accuracy.
/// Throws DegenerateDataset when only one class is present.
std::pair<MlpModel, double> mlp_train(const Dataset& dataset, const MlpTrainParams& params);

std::array<double, MlpModel::kIn> feature_array(const FeatureVector& fv);

/// Classifier-driven strategy selection projected onto the allowed actions;
/// with no model, the rule fallback picks exact synthesis for cones of up to
/// 5 inputs and ISOP otherwise.
Action select_strategy(const MlpModel* model, const FeatureVector& fv);

}  // namespace rrw
