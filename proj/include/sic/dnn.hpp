#pragma once

#include <span>
#include <string>

#include "sic/types.hpp"

namespace sic::dnn {

inline constexpr int kHidden1 = 20;
inline constexpr int kHidden2 = 5;

// dense row-major matrix
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> v;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), v(std::size_t(r) * c, 0.0) {}
    double& at(int r, int c) { return v[std::size_t(r) * cols + c]; }
    double at(int r, int c) const { return v[std::size_t(r) * cols + c]; }
    const double* row(int r) const { return v.data() + std::size_t(r) * cols; }
    bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }
};

// in_dim -> 20 -> 5 -> 1, ReLU after the two hidden layers, none after the
// last. in_dim is K in the per-component (paper-literal) layout and 2K in
// the joint I/Q layout.
struct MlpParams {
    int in_dim = 0;
    Mat w1, w2, w3;                  // in_dim x 20, 20 x 5, 5 x 1
    std::vector<double> b1, b2, b3;  // 20, 5, 1

    bool finite() const;
};

// How a complex sample window becomes a real input row.
//   joint_iq:  [I(w1) Q(w1) ... I(wK) Q(wK)], 2K columns
//   literal_i: [I(w1) ... I(wK)], K columns
//   literal_q: [Q(w1) ... Q(wK)], K columns
enum class DatasetMode { joint_iq, literal_i, literal_q };
enum class Component { I, Q };

// Windowed regression set: row r holds samples x[r] .. x[r+K-1] (oldest
// first) and predicts the chosen component of y[r+K-1].
struct SlidingDataset {
    Mat inputs;                   // (N-K+1) x in_dim
    std::vector<double> targets;  // aligned to each window's last sample
    int window = 0;               // K
};

SlidingDataset build_dataset(const CVec& x, const CVec& y, int K,
                             DatasetMode mode, Component target);

struct TrainConfig {
    int batch_size = 64;
    int epochs = 50;
    double learning_rate = 1e-3;
    std::uint64_t seed = 0;
};

// Glorot-uniform weights, zero biases; deterministic per rng state.
MlpParams init_params(int in_dim, Rng& rng);

struct ForwardCache {
    Mat x, o1, a1, o2, a2, y;  // y is B x 1
};

// single-sample forward pass; cache may be null
double forward(const MlpParams& p, std::span<const double> x, ForwardCache* cache = nullptr);

// batched forward over the rows of x
Mat forward_batch(const MlpParams& p, const Mat& x, ForwardCache* cache = nullptr);

// sum of squared errors over the batch (the mini-batch loss convention)
double mse_loss(std::span<const double> y_e, std::span<const double> y_real);

struct Gradients {
    Mat w1, w2, w3;
    std::vector<double> b1, b2, b3;
};

// exact gradients for the cached forward pass; grad_out is dLoss/dy per
// batch row. ReLU subgradient at 0 is taken as 0.
Gradients backward(const MlpParams& p, const ForwardCache& cache,
                   std::span<const double> grad_out);

struct TrainResult {
    MlpParams params;
    std::vector<double> loss_history;  // mean per-epoch mini-batch loss
};

// Plain mini-batch SGD on the summed-square loss. Rows are reshuffled each
// epoch with the config seed; identical inputs give identical parameters.
// Throws train_error if the loss stops being finite.
TrainResult train(const SlidingDataset& ds, const TrainConfig& cfg);
TrainResult train(const SlidingDataset& ds, const TrainConfig& cfg, MlpParams start);

// Portable parameter file: self-describing text headers per named array,
// little-endian float64 payload. load(save(p)) is bit-exact.
void save_params(const MlpParams& p, const std::string& path);
MlpParams load_params(const std::string& path);

// Sliding-window inference over a complex record: out[n] is the network
// output for the window ending at x[n]; missing history before the start
// of the record is taken as silence (zeros).
std::vector<double> predict_record(const MlpParams& p, const CVec& x, int K,
                                   DatasetMode mode);

}  // namespace sic::dnn
