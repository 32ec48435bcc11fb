#include "docq/linear_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "docq/error.hpp"
#include "docq/tsv.hpp"

namespace docq {

namespace {

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + e^z) without overflow
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::fabs(z))); }

struct Standardized {
    std::vector<std::vector<double>> x;  // row-major
    std::vector<double> y;
    std::vector<double> means, stddevs;
};

Standardized standardize(const Dataset& train) {
    const std::size_t n = train.rows.size();
    const std::size_t d = train.feature_names.size();
    Standardized s;
    s.means.assign(d, 0.0);
    s.stddevs.assign(d, 0.0);
    s.x.assign(n, std::vector<double>(d, 0.0));
    s.y.reserve(n);

    for (const auto& row : train.rows) {
        if (!row.label) throw Error("unlabeled row in training data: " + row.doc_id);
        if (row.values.size() != d)
            throw DimensionMismatch("row " + row.doc_id + " has " +
                                    std::to_string(row.values.size()) + " features, expected " +
                                    std::to_string(d));
        for (const double v : row.values)
            if (!std::isfinite(v)) throw NonFinite("non-finite feature in row " + row.doc_id);
        s.y.push_back(*row.label == Label::High ? 1.0 : 0.0);
    }
    const bool any_pos = std::find(s.y.begin(), s.y.end(), 1.0) != s.y.end();
    const bool any_neg = std::find(s.y.begin(), s.y.end(), 0.0) != s.y.end();
    if (!any_pos || !any_neg) throw SingleClass("training data holds a single class");

    for (std::size_t j = 0; j < d; ++j) {
        double sum = 0;
        for (const auto& row : train.rows) sum += row.values[j];
        s.means[j] = sum / static_cast<double>(n);
        double ss = 0;
        for (const auto& row : train.rows) {
            const double dev = row.values[j] - s.means[j];
            ss += dev * dev;
        }
        s.stddevs[j] = std::sqrt(ss / static_cast<double>(n));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            s.x[i][j] = s.stddevs[j] > 0
                            ? (train.rows[i].values[j] - s.means[j]) / s.stddevs[j]
                            : 0.0;
    return s;
}

// Deterministic Fisher-Yates; std::shuffle's draw sequence is
// implementation-defined, this is not.
template <typename T>
void shuffle_deterministic(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (v.size() - i));
        std::swap(v[i], v[j]);
    }
}

}  // namespace

std::string model_kind_name(ModelKind kind) {
    return kind == ModelKind::Logistic ? "logistic" : "svm_hinge";
}

LinearModel fit_logistic(const Dataset& train, const LogisticConfig& config,
                         FitDiagnostics* diagnostics) {
    if (train.rows.size() < 2) throw TooSmall("fit_logistic: need at least two rows");
    const Standardized s = standardize(train);
    const std::size_t n = train.rows.size();
    const std::size_t d = train.feature_names.size();
    const double inv_n = 1.0 / static_cast<double>(n);

    std::vector<double> w(d, 0.0);
    double b = 0;

    const auto objective = [&](const std::vector<double>& wv, double bv) {
        double loss = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double z = bv;
            for (std::size_t j = 0; j < d; ++j) z += wv[j] * s.x[i][j];
            loss += softplus(z) - s.y[i] * z;
        }
        double reg = 0;
        for (const double wj : wv) reg += wj * wj;
        return loss * inv_n + 0.5 * config.lambda * reg;
    };
    const auto gradient = [&](const std::vector<double>& wv, double bv,
                              std::vector<double>& gw, double& gb) {
        gw.assign(d, 0.0);
        gb = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double z = bv;
            for (std::size_t j = 0; j < d; ++j) z += wv[j] * s.x[i][j];
            const double r = sigmoid(z) - s.y[i];
            for (std::size_t j = 0; j < d; ++j) gw[j] += r * s.x[i][j];
            gb += r;
        }
        for (std::size_t j = 0; j < d; ++j) gw[j] = gw[j] * inv_n + config.lambda * wv[j];
        gb *= inv_n;
    };

    double obj = objective(w, b);
    if (diagnostics) {
        diagnostics->objective_history.clear();
        diagnostics->objective_history.push_back(obj);
        diagnostics->converged = false;
    }

    std::vector<double> gw(d), wt(d);
    double gb = 0;
    int iter = 0;
    double grad_norm = 0;
    for (; iter < config.max_iters; ++iter) {
        gradient(w, b, gw, gb);
        grad_norm = std::fabs(gb);
        for (const double g : gw) grad_norm = std::max(grad_norm, std::fabs(g));
        if (grad_norm < config.tol) {
            if (diagnostics) diagnostics->converged = true;
            break;
        }
        double g2 = gb * gb;
        for (const double g : gw) g2 += g * g;

        double step = 1.0;
        bool accepted = false;
        for (int halvings = 0; halvings < 60; ++halvings) {
            for (std::size_t j = 0; j < d; ++j) wt[j] = w[j] - step * gw[j];
            const double bt = b - step * gb;
            const double trial = objective(wt, bt);
            if (trial <= obj - 1e-4 * step * g2) {
                w.swap(wt);
                b = bt;
                obj = trial;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // numerically at the floor
        if (diagnostics) diagnostics->objective_history.push_back(obj);
    }

    LinearModel model;
    model.kind = ModelKind::Logistic;
    model.feature_names = train.feature_names;
    model.weights = std::move(w);
    model.means = s.means;
    model.stddevs = s.stddevs;
    model.bias = b;
    model.regularization = config.lambda;
    model.rounds = iter;
    if (diagnostics) {
        diagnostics->iterations = iter;
        diagnostics->final_grad_norm = grad_norm;
        for (std::size_t j = 0; j < d; ++j)
            if (s.stddevs[j] == 0) diagnostics->dropped_features.push_back(train.feature_names[j]);
    }
    return model;
}

double predict_score(const LinearModel& model, const FeatureVector& fv) {
    const std::size_t d = model.weights.size();
    if (fv.values.size() != d)
        throw DimensionMismatch("feature vector has " + std::to_string(fv.values.size()) +
                                " values, model expects " + std::to_string(d));
    double z = model.bias;
    for (std::size_t j = 0; j < d; ++j) {
        const double x = model.stddevs[j] > 0
                             ? (fv.values[j] - model.means[j]) / model.stddevs[j]
                             : 0.0;
        z += model.weights[j] * x;
    }
    if (model.kind == ModelKind::SvmHinge) return z;
    const double p = sigmoid(z);
    return std::min(std::max(p, 1e-300), 1.0 - 1e-16);
}

std::vector<double> predict_scores(const LinearModel& model, const Dataset& data) {
    if (!data.feature_names.empty() && data.feature_names != model.feature_names)
        throw DimensionMismatch("feature columns do not match the model");
    std::vector<double> out;
    out.reserve(data.rows.size());
    for (const auto& row : data.rows) out.push_back(predict_score(model, row));
    return out;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t n, double test_fraction, std::uint64_t seed) {
    if (n < 2) throw TooSmall("train_test_split: need at least two rows");
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw TooSmall("train_test_split: test fraction must lie in (0,1)");
    std::size_t n_test =
        static_cast<std::size_t>(std::floor(static_cast<double>(n) * test_fraction));
    n_test = std::clamp<std::size_t>(n_test, 1, n - 1);

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::mt19937_64 rng(seed);
    shuffle_deterministic(order, rng);

    std::vector<std::size_t> test(order.begin(), order.begin() + static_cast<long>(n_test));
    std::vector<std::size_t> train(order.begin() + static_cast<long>(n_test), order.end());
    return {std::move(train), std::move(test)};
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& data, double test_fraction,
                                             std::uint64_t seed) {
    const auto [train_idx, test_idx] = split_indices(data.rows.size(), test_fraction, seed);
    Dataset train, test;
    train.feature_names = data.feature_names;
    test.feature_names = data.feature_names;
    train.rows.reserve(train_idx.size());
    test.rows.reserve(test_idx.size());
    for (const std::size_t i : train_idx) train.rows.push_back(data.rows[i]);
    for (const std::size_t i : test_idx) test.rows.push_back(data.rows[i]);
    return {std::move(train), std::move(test)};
}

LinearModel fit_svm_sgd(std::span<const SparseExample> train, std::size_t dim,
                        const SvmConfig& config, std::span<const std::string> feature_names) {
    if (train.size() < 2) throw TooSmall("fit_svm_sgd: need at least two examples");
    bool any_pos = false, any_neg = false;
    for (const auto& ex : train) (ex.label ? any_pos : any_neg) = true;
    if (!any_pos || !any_neg) throw SingleClass("training data holds a single class");
    if (!feature_names.empty() && feature_names.size() != dim)
        throw DimensionMismatch("feature name count does not match dimension");
    for (const auto& ex : train)
        for (const auto& [idx, v] : ex.x)
            if (idx >= dim)
                throw DimensionMismatch("sparse index " + std::to_string(idx) +
                                        " out of range for dimension " + std::to_string(dim));

    std::vector<double> w(dim, 0.0);
    double b = 0;
    double scale = 1.0;

    const double alpha = config.alpha;
    const double eta0 = std::sqrt(1.0 / std::sqrt(alpha));
    const double t0 = 1.0 / (eta0 * alpha);

    std::vector<std::size_t> order(train.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(config.seed);

    std::uint64_t t = 0;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle_deterministic(order, rng);
        for (const std::size_t i : order) {
            const SparseExample& ex = train[i];
            const double y = ex.label ? 1.0 : -1.0;
            const double eta = 1.0 / (alpha * (t0 + static_cast<double>(t)));
            ++t;

            double dot = 0;
            for (const auto& [idx, v] : ex.x) dot += w[idx] * v;
            const double margin = y * (scale * dot + b);

            scale *= 1.0 - eta * alpha;  // L2 shrink on w only, not the bias
            if (margin < 1.0) {
                const double step = eta * y / scale;
                for (const auto& [idx, v] : ex.x) w[idx] += step * v;
                b += eta * y;
            }
            if (scale < 1e-9) {
                for (auto& wj : w) wj *= scale;
                scale = 1.0;
            }
        }
    }
    for (auto& wj : w) wj *= scale;

    LinearModel model;
    model.kind = ModelKind::SvmHinge;
    if (feature_names.empty()) {
        model.feature_names.reserve(dim);
        for (std::size_t j = 0; j < dim; ++j) model.feature_names.push_back("f" + std::to_string(j));
    } else {
        model.feature_names.assign(feature_names.begin(), feature_names.end());
    }
    model.weights = std::move(w);
    model.means.assign(dim, 0.0);
    model.stddevs.assign(dim, 1.0);
    model.bias = b;
    model.seed = config.seed;
    model.regularization = alpha;
    model.rounds = config.epochs;
    return model;
}

double predict_margin(const LinearModel& model, const SparseVector& x) {
    double z = model.bias;
    for (const auto& [idx, v] : x) {
        if (idx >= model.weights.size())
            throw DimensionMismatch("sparse index " + std::to_string(idx) +
                                    " out of range for model of size " +
                                    std::to_string(model.weights.size()));
        z += model.weights[idx] * v;
    }
    return z;
}

void save_model(const LinearModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << "# docq-model 1\n";
    out << "# kind=" << model_kind_name(model.kind) << '\n';
    out << "# bias=" << tsv::format_double(model.bias) << '\n';
    out << "# seed=" << model.seed << '\n';
    out << "# regularization=" << tsv::format_double(model.regularization) << '\n';
    out << "# rounds=" << model.rounds << '\n';
    out << "feature\tweight\tmean\tstddev\n";
    for (std::size_t j = 0; j < model.weights.size(); ++j) {
        out << model.feature_names[j] << '\t' << tsv::format_double(model.weights[j]) << '\t'
            << tsv::format_double(model.means[j]) << '\t' << tsv::format_double(model.stddevs[j])
            << '\n';
    }
    if (!out) throw Error("write failed: " + path.string());
}

LinearModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    const std::string file = path.string();

    LinearModel model;
    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = line.substr(1);
            const auto eq = body.find('=');
            if (eq == std::string::npos) continue;
            std::string key = body.substr(0, eq);
            const std::string value = body.substr(eq + 1);
            while (!key.empty() && key.front() == ' ') key.erase(key.begin());
            try {
                if (key == "kind") {
                    if (value == "logistic")
                        model.kind = ModelKind::Logistic;
                    else if (value == "svm_hinge")
                        model.kind = ModelKind::SvmHinge;
                    else
                        throw FormatError(file, lineno, "unknown model kind: " + value);
                } else if (key == "bias") {
                    model.bias = tsv::parse_double(value);
                } else if (key == "seed") {
                    model.seed = tsv::parse_uint(value);
                } else if (key == "regularization") {
                    model.regularization = tsv::parse_double(value);
                } else if (key == "rounds") {
                    model.rounds = static_cast<int>(tsv::parse_uint(value));
                }
            } catch (const FormatError&) {
                throw;
            } catch (const Error&) {
                throw FormatError(file, lineno, "bad meta value for " + key + ": " + value);
            }
            continue;
        }
        const std::vector<std::string> fields = tsv::split(line);
        if (!saw_header) {
            if (fields != std::vector<std::string>{"feature", "weight", "mean", "stddev"})
                throw FormatError(file, lineno, "expected header feature\tweight\tmean\tstddev");
            saw_header = true;
            continue;
        }
        if (fields.size() != 4)
            throw FormatError(file, lineno,
                              "expected 4 fields, got " + std::to_string(fields.size()));
        try {
            model.feature_names.push_back(fields[0]);
            model.weights.push_back(tsv::parse_double(fields[1]));
            model.means.push_back(tsv::parse_double(fields[2]));
            model.stddevs.push_back(tsv::parse_double(fields[3]));
        } catch (const Error& e) {
            throw FormatError(file, lineno, e.what());
        }
    }
    if (!saw_header) throw FormatError(file, lineno == 0 ? 1 : lineno, "missing header row");
    return model;
}

}  // namespace docq
