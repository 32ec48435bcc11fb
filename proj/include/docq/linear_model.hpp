#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "docq/features.hpp"
#include "docq/tfidf.hpp"

namespace docq {

enum class ModelKind { Logistic, SvmHinge };

std::string model_kind_name(ModelKind kind);

struct LogisticConfig {
    double lambda = 1e-4;  // L2 strength
    int max_iters = 5000;
    double tol = 1e-6;  // gradient infinity-norm
};

struct SvmConfig {
    double alpha = 1e-4;  // L2 strength
    int epochs = 20;
    std::uint64_t seed = 42;
};

struct LinearModel {
    ModelKind kind = ModelKind::Logistic;
    std::vector<std::string> feature_names;
    std::vector<double> weights;  // in standardized space
    std::vector<double> means;
    std::vector<double> stddevs;  // 0 marks a constant feature, dropped
    double bias = 0;
    std::uint64_t seed = 0;
    double regularization = 0;  // lambda (logistic) or alpha (svm)
    int rounds = 0;             // iterations run / epochs
};

struct FitDiagnostics {
    std::vector<double> objective_history;  // accepted line-search steps
    int iterations = 0;
    double final_grad_norm = 0;
    bool converged = false;
    std::vector<std::string> dropped_features;  // constant columns
};

/// L2-regularized logistic regression: full-batch gradient descent with
/// backtracking line search on standardized features. High maps to y = 1.
LinearModel fit_logistic(const Dataset& train, const LogisticConfig& config = {},
                         FitDiagnostics* diagnostics = nullptr);

/// Logistic: sigmoid of the standardized margin, strictly inside (0,1).
/// SVM: raw margin.
double predict_score(const LinearModel& model, const FeatureVector& fv);
std::vector<double> predict_scores(const LinearModel& model, const Dataset& data);

/// Deterministic shuffled partition. Test size floor(n * fraction),
/// clamped to [1, n-1].
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t n, double test_fraction, std::uint64_t seed);
std::pair<Dataset, Dataset> train_test_split(const Dataset& data, double test_fraction,
                                             std::uint64_t seed);

struct SparseExample {
    SparseVector x;
    bool label = false;  // true == High
};

/// L2-regularized hinge loss by SGD with the eta_t = 1/(alpha*(t+t0))
/// schedule and a weight-scale trick; deterministic under seed. Inputs are
/// used as-is (tf-idf vectors are already normalized), so the stored
/// standardization is the identity.
LinearModel fit_svm_sgd(std::span<const SparseExample> train, std::size_t dim,
                        const SvmConfig& config = {},
                        std::span<const std::string> feature_names = {});

double predict_margin(const LinearModel& model, const SparseVector& x);

void save_model(const LinearModel& model, const std::filesystem::path& path);
LinearModel load_model(const std::filesystem::path& path);

}  // namespace docq
