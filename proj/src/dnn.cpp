#include "sic/dnn.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include "sic/kernels.hpp"

namespace sic::dnn {

namespace {

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

void fill_window(const CVec& x, std::int64_t last, int K, DatasetMode mode,
                 double* row) {
    // window covers x[last-K+1 .. last]; indices before 0 read as zero
    int c = 0;
    for (int k = K - 1; k >= 0; --k) {
        std::int64_t idx = last - k;
        cplx s = idx >= 0 ? x[idx] : cplx{0.0, 0.0};
        switch (mode) {
            case DatasetMode::joint_iq:
                row[c++] = s.real();
                row[c++] = s.imag();
                break;
            case DatasetMode::literal_i: row[c++] = s.real(); break;
            case DatasetMode::literal_q: row[c++] = s.imag(); break;
        }
    }
}

int mode_width(int K, DatasetMode mode) {
    return mode == DatasetMode::joint_iq ? 2 * K : K;
}

}  // namespace

bool MlpParams::finite() const {
    return all_finite(w1.v) && all_finite(w2.v) && all_finite(w3.v) &&
           all_finite(b1) && all_finite(b2) && all_finite(b3);
}

SlidingDataset build_dataset(const CVec& x, const CVec& y, int K,
                             DatasetMode mode, Component target) {
    if (K < 1) throw std::invalid_argument("build_dataset: K must be >= 1");
    if (x.size() != y.size())
        throw std::invalid_argument("build_dataset: x and y lengths differ");
    if (std::int64_t(x.size()) < K)
        throw std::invalid_argument("build_dataset: need at least K samples, have " +
                                    std::to_string(x.size()));
    const std::int64_t n_rows = std::int64_t(x.size()) - K + 1;
    SlidingDataset ds;
    ds.window = K;
    ds.inputs = Mat(int(n_rows), mode_width(K, mode));
    ds.targets.resize(n_rows);
    for (std::int64_t r = 0; r < n_rows; ++r) {
        fill_window(x, r + K - 1, K, mode, ds.inputs.v.data() + r * ds.inputs.cols);
        cplx t = y[r + K - 1];
        ds.targets[r] = target == Component::I ? t.real() : t.imag();
    }
    return ds;
}

MlpParams init_params(int in_dim, Rng& rng) {
    if (in_dim < 1) throw std::invalid_argument("init_params: in_dim must be >= 1");
    MlpParams p;
    p.in_dim = in_dim;
    p.w1 = Mat(in_dim, kHidden1);
    p.w2 = Mat(kHidden1, kHidden2);
    p.w3 = Mat(kHidden2, 1);
    p.b1.assign(kHidden1, 0.0);
    p.b2.assign(kHidden2, 0.0);
    p.b3.assign(1, 0.0);
    auto glorot = [&rng](Mat& w) {
        double limit = std::sqrt(6.0 / (w.rows + w.cols));
        for (double& v : w.v) v = rng.uniform(-limit, limit);
    };
    glorot(p.w1);
    glorot(p.w2);
    glorot(p.w3);
    return p;
}

namespace {

Mat dense_relu(const Mat& a, const Mat& w, const std::vector<double>& bias,
               Mat* pre, bool relu) {
    Mat out(a.rows, w.cols);
    kernels::dense_forward(a.v.data(), a.rows, a.cols, w.v.data(), w.cols,
                           bias.data(), out.v.data());
    if (pre) *pre = out;
    if (relu)
        for (double& v : out.v) v = v > 0.0 ? v : 0.0;
    return out;
}

}  // namespace

Mat forward_batch(const MlpParams& p, const Mat& x, ForwardCache* cache) {
    if (x.cols != p.in_dim)
        throw std::invalid_argument("forward: input width " + std::to_string(x.cols) +
                                    " != in_dim " + std::to_string(p.in_dim));
    ForwardCache local;
    ForwardCache& c = cache ? *cache : local;
    c.x = x;
    c.a1 = dense_relu(x, p.w1, p.b1, &c.o1, true);
    c.a2 = dense_relu(c.a1, p.w2, p.b2, &c.o2, true);
    c.y = dense_relu(c.a2, p.w3, p.b3, nullptr, false);
    return c.y;
}

double forward(const MlpParams& p, std::span<const double> x, ForwardCache* cache) {
    if (int(x.size()) != p.in_dim)
        throw std::invalid_argument("forward: input width mismatch");
    Mat xm(1, p.in_dim);
    std::copy(x.begin(), x.end(), xm.v.begin());
    return forward_batch(p, xm, cache).v[0];
}

double mse_loss(std::span<const double> y_e, std::span<const double> y_real) {
    if (y_e.size() != y_real.size())
        throw std::invalid_argument("mse_loss: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < y_e.size(); ++i) {
        double d = y_real[i] - y_e[i];
        acc += d * d;
    }
    return acc;
}

Gradients backward(const MlpParams& p, const ForwardCache& c,
                   std::span<const double> grad_out) {
    const int B = c.x.rows;
    if (int(grad_out.size()) != B)
        throw std::invalid_argument("backward: grad_out length != batch size");

    Gradients g;
    g.w1 = Mat(p.w1.rows, p.w1.cols);
    g.w2 = Mat(p.w2.rows, p.w2.cols);
    g.w3 = Mat(p.w3.rows, p.w3.cols);
    g.b1.assign(kHidden1, 0.0);
    g.b2.assign(kHidden2, 0.0);
    g.b3.assign(1, 0.0);

    // layer 3 (linear)
    Mat d3(B, 1);
    for (int b = 0; b < B; ++b) d3.at(b, 0) = grad_out[b];
    kernels::dense_grad_w(c.a2.v.data(), B, kHidden2, d3.v.data(), 1, g.w3.v.data());
    for (int b = 0; b < B; ++b) g.b3[0] += d3.at(b, 0);

    // layer 2 (ReLU)
    Mat d2(B, kHidden2);
    kernels::dense_grad_x(d3.v.data(), B, 1, p.w3.v.data(), kHidden2, d2.v.data());
    for (int b = 0; b < B; ++b)
        for (int j = 0; j < kHidden2; ++j)
            if (c.o2.at(b, j) <= 0.0) d2.at(b, j) = 0.0;
    kernels::dense_grad_w(c.a1.v.data(), B, kHidden1, d2.v.data(), kHidden2, g.w2.v.data());
    for (int b = 0; b < B; ++b)
        for (int j = 0; j < kHidden2; ++j) g.b2[j] += d2.at(b, j);

    // layer 1 (ReLU)
    Mat d1(B, kHidden1);
    kernels::dense_grad_x(d2.v.data(), B, kHidden2, p.w2.v.data(), kHidden1, d1.v.data());
    for (int b = 0; b < B; ++b)
        for (int j = 0; j < kHidden1; ++j)
            if (c.o1.at(b, j) <= 0.0) d1.at(b, j) = 0.0;
    kernels::dense_grad_w(c.x.v.data(), B, p.in_dim, d1.v.data(), kHidden1, g.w1.v.data());
    for (int b = 0; b < B; ++b)
        for (int j = 0; j < kHidden1; ++j) g.b1[j] += d1.at(b, j);

    return g;
}

TrainResult train(const SlidingDataset& ds, const TrainConfig& cfg) {
    Rng rng(cfg.seed);
    MlpParams start = init_params(ds.inputs.cols, rng);
    return train(ds, cfg, std::move(start));
}

TrainResult train(const SlidingDataset& ds, const TrainConfig& cfg, MlpParams start) {
    if (ds.inputs.rows < 1) throw std::invalid_argument("train: empty dataset");
    if (cfg.batch_size < 1 || cfg.epochs < 0 || !(cfg.learning_rate >= 0.0))
        throw std::invalid_argument("train: bad config");
    if (start.in_dim != ds.inputs.cols)
        throw std::invalid_argument("train: params in_dim != dataset width");

    TrainResult res;
    res.params = std::move(start);
    MlpParams& p = res.params;

    // shuffle stream is separate from the init stream so that warm starts
    // see the same batch order
    Rng shuffle_rng(Rng(cfg.seed).child(0x5hu11).next_u64());

    const int n = ds.inputs.rows;
    std::vector<std::int64_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    Mat bx, d3;
    std::vector<double> by;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        double epoch_loss = 0.0;
        int n_batches = 0;
        for (int begin = 0; begin < n; begin += cfg.batch_size) {
            const int B = std::min(cfg.batch_size, n - begin);
            bx = Mat(B, ds.inputs.cols);
            by.resize(B);
            for (int b = 0; b < B; ++b) {
                std::int64_t r = order[begin + b];
                std::memcpy(bx.v.data() + std::size_t(b) * bx.cols,
                            ds.inputs.row(int(r)), sizeof(double) * bx.cols);
                by[b] = ds.targets[r];
            }
            ForwardCache cache;
            Mat y = forward_batch(p, bx, &cache);
            double loss = mse_loss(std::span(y.v), std::span(by));
            if (!std::isfinite(loss))
                throw train_error("training diverged at epoch " + std::to_string(epoch));
            epoch_loss += loss;
            ++n_batches;

            std::vector<double> grad_out(B);
            for (int b = 0; b < B; ++b) grad_out[b] = 2.0 * (y.v[b] - by[b]);
            Gradients g = backward(p, cache, grad_out);

            const double lr = cfg.learning_rate;
            auto step_mat = [lr](Mat& w, const Mat& gw) {
                for (std::size_t i = 0; i < w.v.size(); ++i) w.v[i] -= lr * gw.v[i];
            };
            auto step_vec = [lr](std::vector<double>& b, const std::vector<double>& gb) {
                for (std::size_t i = 0; i < b.size(); ++i) b[i] -= lr * gb[i];
            };
            step_mat(p.w1, g.w1);
            step_mat(p.w2, g.w2);
            step_mat(p.w3, g.w3);
            step_vec(p.b1, g.b1);
            step_vec(p.b2, g.b2);
            step_vec(p.b3, g.b3);
        }
        res.loss_history.push_back(epoch_loss / std::max(1, n_batches));
    }
    return res;
}

namespace {

constexpr char kMagic[] = "sicmlp 1";

void write_array(std::ofstream& f, const std::string& name, int rows, int cols,
                 const double* data) {
    f << name << " " << rows << " " << cols << "\n";
    f.write(reinterpret_cast<const char*>(data),
            std::streamsize(sizeof(double)) * rows * cols);
}

}  // namespace

void save_params(const MlpParams& p, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open " + path + " for writing");
    f << kMagic << " in_dim=" << p.in_dim << " arrays=6\n";
    write_array(f, "w1", p.w1.rows, p.w1.cols, p.w1.v.data());
    write_array(f, "b1", 1, int(p.b1.size()), p.b1.data());
    write_array(f, "w2", p.w2.rows, p.w2.cols, p.w2.v.data());
    write_array(f, "b2", 1, int(p.b2.size()), p.b2.data());
    write_array(f, "w3", p.w3.rows, p.w3.cols, p.w3.v.data());
    write_array(f, "b3", 1, int(p.b3.size()), p.b3.data());
    if (!f) throw io_error("short write to " + path);
}

MlpParams load_params(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open " + path);

    std::string line;
    if (!std::getline(f, line)) throw format_error(path + ": empty file");
    int in_dim = 0, arrays = 0;
    if (std::sscanf(line.c_str(), "sicmlp 1 in_dim=%d arrays=%d", &in_dim, &arrays) != 2)
        throw format_error(path + ": bad magic line '" + line + "'");
    if (in_dim < 1 || arrays != 6) throw format_error(path + ": bad header values");

    MlpParams p;
    p.in_dim = in_dim;
    auto read_array = [&](const std::string& want, int want_rows, int want_cols,
                          double* out) {
        std::string header;
        if (!std::getline(f, header)) throw format_error(path + ": truncated before " + want);
        char name[16];
        int rows = 0, cols = 0;
        if (std::sscanf(header.c_str(), "%15s %d %d", name, &rows, &cols) != 3)
            throw format_error(path + ": bad array header '" + header + "'");
        if (want != name)
            throw format_error(path + ": expected array " + want + ", found " + name);
        if (rows != want_rows || cols != want_cols)
            throw shape_error(path + ": array " + want + " is " + std::to_string(rows) +
                              "x" + std::to_string(cols) + ", expected " +
                              std::to_string(want_rows) + "x" + std::to_string(want_cols));
        f.read(reinterpret_cast<char*>(out), std::streamsize(sizeof(double)) * rows * cols);
        if (f.gcount() != std::streamsize(sizeof(double)) * rows * cols)
            throw format_error(path + ": truncated payload in " + want);
    };

    p.w1 = Mat(in_dim, kHidden1);
    p.b1.assign(kHidden1, 0.0);
    p.w2 = Mat(kHidden1, kHidden2);
    p.b2.assign(kHidden2, 0.0);
    p.w3 = Mat(kHidden2, 1);
    p.b3.assign(1, 0.0);
    read_array("w1", in_dim, kHidden1, p.w1.v.data());
    read_array("b1", 1, kHidden1, p.b1.data());
    read_array("w2", kHidden1, kHidden2, p.w2.v.data());
    read_array("b2", 1, kHidden2, p.b2.data());
    read_array("w3", kHidden2, 1, p.w3.v.data());
    read_array("b3", 1, 1, p.b3.data());
    return p;
}

std::vector<double> predict_record(const MlpParams& p, const CVec& x, int K,
                                   DatasetMode mode) {
    if (mode_width(K, mode) != p.in_dim)
        throw std::invalid_argument("predict_record: K/mode do not match in_dim");
    const std::int64_t n = std::int64_t(x.size());
    std::vector<double> out(n);
    // bounded-memory chunks; each chunk is one batched forward pass
    const std::int64_t chunk = 8192;
    Mat rows;
    for (std::int64_t begin = 0; begin < n; begin += chunk) {
        const std::int64_t B = std::min(chunk, n - begin);
        rows = Mat(int(B), p.in_dim);
        for (std::int64_t b = 0; b < B; ++b)
            fill_window(x, begin + b, K, mode, rows.v.data() + b * rows.cols);
        Mat y = forward_batch(p, rows);
        for (std::int64_t b = 0; b < B; ++b) out[begin + b] = y.v[b];
    }
    return out;
}

}  // namespace sic::dnn
