// Copyright 2026 The derivguide Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "derivguide/model/model.hpp"
#include "derivguide/training/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <exception>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>

namespace derivguide::training {

using derivation::Batch;
using model::Model;

void validate(const TrainConfig& config) {
  if (!(config.split > 0.0 && config.split < 1.0)) {
    throw std::invalid_argument("split must lie strictly between 0 and 1");
  }
  if (config.epochs > 0 && (config.warmup_epochs < 1 || config.warmup_epochs > config.epochs)) {
    throw std::invalid_argument("warmup epochs must lie in [1, epochs]");
  }
  if (!(config.alpha_max > 0.0)) throw std::invalid_argument("alpha_max must be positive");
  if (!(config.swapout_p >= 0.0 && config.swapout_p <= 1.0)) {
    throw std::invalid_argument("swapout probability must lie in [0, 1]");
  }
  if (config.workers < 1) throw std::invalid_argument("at least one worker is required");
}

double lr_schedule(std::size_t epoch, const TrainConfig& config) {
  const double t = static_cast<double>(epoch);
  const double warmup = static_cast<double>(config.warmup_epochs);
  if (epoch <= config.warmup_epochs) return t * config.alpha_max / warmup;
  return warmup * config.alpha_max / t;
}

std::vector<std::uint8_t> apply_swapout(const Batch& batch, double p, std::mt19937_64& rng) {
  std::vector<std::uint8_t> mask(batch.size(), 0);
  if (p <= 0.0) return mask;
  std::bernoulli_distribution coin(p);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (std::holds_alternative<derivation::NetDerived>(batch.nodes[i])) mask[i] = coin(rng) ? 1 : 0;
  }
  return mask;
}

Split split_batches(std::size_t count, double split, std::uint64_t seed) {
  Split out;
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  if (count == 1) {
    out.train = order;
    out.validation = order;
    return out;
  }
  auto val = static_cast<std::size_t>(std::llround(static_cast<double>(count) * (1.0 - split)));
  val = std::clamp<std::size_t>(val, count >= 2 ? 1 : 0, count - 1);
  out.validation.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(val));
  out.train.assign(order.begin() + static_cast<std::ptrdiff_t>(val), order.end());
  return out;
}

Rates rates(const Model& model, std::span<const Batch> batches, std::span<const std::size_t> which) {
  double pos_total = 0, pos_hit = 0, neg_total = 0, neg_hit = 0;
  auto visit = [&](const Batch& batch) {
    auto fwd = model::forward_dag(model, batch.nodes);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (!batch.is_example[i]) continue;
      const bool predicted = model::classify(fwd.scores[i]);
      if (batch.target[i] > 0.5) {
        pos_total += batch.weight[i];
        if (predicted) pos_hit += batch.weight[i];
      } else {
        neg_total += batch.weight[i];
        if (!predicted) neg_hit += batch.weight[i];
      }
    }
  };
  if (which.empty()) {
    for (const auto& b : batches) visit(b);
  } else {
    for (auto k : which) visit(batches[k]);
  }
  Rates r;
  r.has_positives = pos_total > 0;
  r.has_negatives = neg_total > 0;
  r.tpr = r.has_positives ? pos_hit / pos_total : 1.0;
  r.tnr = r.has_negatives ? neg_hit / neg_total : 1.0;
  return r;
}

namespace {

double total_weight(std::span<const Batch> batches, std::span<const std::size_t> which) {
  double w = 0;
  for (auto k : which) w += batches[k].total_weight();
  return w;
}

double normalized(double loss, double weight) { return weight > 0 ? loss / weight : 0.0; }

// Bookkeeping shared by both trainers: split, evaluation, model selection.
class Session {
 public:
  Session(Model initial, std::span<const Batch> batches, const TrainConfig& config)
      : batches_(batches), config_(config), model_(std::move(initial)) {
    validate(config);
    if (config.swapout_p > 0.0 && !model_.config().generic_blocks) {
      throw std::invalid_argument("swapout needs a model with generic deriv blocks");
    }
    split_ = split_batches(batches.size(), config.split, config.seed);
    rng_.seed(config.seed ^ 0x9e3779b97f4a7c15ULL);
    train_weight_ = total_weight(batches, split_.train);
    val_weight_ = total_weight(batches, split_.validation);
    best_params_ = model_.params();

    double initial_loss = 0;
    for (auto k : split_.train) initial_loss += loss(model_, batches_[k]);
    finish_epoch(0, initial_loss, 0.0, 0.0);
  }

  Model& model() { return model_; }
  const TrainConfig& config() const { return config_; }
  const Batch& batch(std::size_t k) const { return batches_[k]; }

  /// Shuffled training order for the epoch.
  std::vector<std::size_t> epoch_order() {
    auto order = split_.train;
    std::shuffle(order.begin(), order.end(), rng_);
    return order;
  }

  std::vector<std::uint8_t> draw_swapout(std::size_t k) {
    if (config_.swapout_p <= 0.0) return {};
    return apply_swapout(batches_[k], config_.swapout_p, rng_);
  }

  void apply(const std::vector<double>& gradient, double alpha) {
    auto& params = model_.mutable_params();
    for (std::size_t i = 0; i < params.size(); ++i) params[i] -= alpha * gradient[i];
  }

  void finish_epoch(std::size_t epoch, double train_loss, double alpha, double drift) {
    EpochStats s;
    s.epoch = epoch;
    s.train_loss = normalized(train_loss, train_weight_);
    double val = 0;
    for (auto k : split_.validation) val += loss(model_, batches_[k]);
    s.val_loss = normalized(val, val_weight_);
    if (!std::isfinite(s.train_loss) || !std::isfinite(s.val_loss)) {
      throw TrainingDiverged(epoch, "loss became non-finite in epoch " + std::to_string(epoch));
    }
    const Rates r = rates(model_, batches_, split_.validation);
    s.tpr = r.tpr;
    s.tnr = r.tnr;
    s.alpha = alpha;
    s.mean_drift = drift;
    if (stats_.empty() || s.val_loss < stats_[best_epoch_].val_loss) {
      best_epoch_ = stats_.size();
      best_params_ = model_.params();
    }
    stats_.push_back(s);
  }

  TrainResult result() {
    return TrainResult{Model(model_.config(), best_params_), best_epoch_, std::move(stats_),
                       std::move(split_)};
  }

 private:
  std::span<const Batch> batches_;
  TrainConfig config_;
  Model model_;
  Split split_;
  std::mt19937_64 rng_;
  double train_weight_ = 0;
  double val_weight_ = 0;
  std::vector<EpochStats> stats_;
  std::size_t best_epoch_ = 0;
  std::vector<double> best_params_;
};

LossGradient checked_backward(const Model& model, const Batch& batch,
                              std::span<const std::uint8_t> mask, std::size_t epoch) {
  try {
    auto lg = backward(model, batch, mask);
    if (!std::isfinite(lg.loss)) {
      throw TrainingDiverged(epoch, "loss became non-finite in epoch " + std::to_string(epoch));
    }
    return lg;
  } catch (const NonFiniteGradient& e) {
    throw TrainingDiverged(epoch, std::string(e.what()) + " in epoch " + std::to_string(epoch));
  }
}

}  // namespace

TrainResult train_sequential(Model initial, std::span<const Batch> batches, const TrainConfig& config) {
  Session session(std::move(initial), batches, config);
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    const double alpha = lr_schedule(epoch, config);
    double epoch_loss = 0;
    for (auto k : session.epoch_order()) {
      auto mask = session.draw_swapout(k);
      auto lg = checked_backward(session.model(), session.batch(k), mask, epoch);
      epoch_loss += lg.loss;
      session.apply(lg.gradient, alpha);
    }
    session.finish_epoch(epoch, epoch_loss, alpha, 0.0);
  }
  return session.result();
}

namespace {

struct Task {
  std::size_t batch = 0;
  std::shared_ptr<const std::vector<double>> params;
  std::size_t timestamp = 0;  // number of updates applied to params
  std::vector<std::uint8_t> swapout;
  int attempts = 0;
};

struct Result {
  Task task;
  std::optional<LossGradient> value;
  std::exception_ptr error;
};

class WorkerPool {
 public:
  WorkerPool(std::size_t workers, const model::ModelConfig& config, std::span<const Batch> batches)
      : config_(config), batches_(batches) {
    for (std::size_t i = 0; i < workers; ++i) threads_.emplace_back([this] { work(); });
  }

  ~WorkerPool() {
    {
      std::lock_guard lock(mutex_);
      stop_ = true;
    }
    task_ready_.notify_all();
    for (auto& t : threads_) t.join();
  }

  void submit(Task task) {
    {
      std::lock_guard lock(mutex_);
      tasks_.push_back(std::move(task));
    }
    task_ready_.notify_one();
  }

  Result next_result() {
    std::unique_lock lock(mutex_);
    result_ready_.wait(lock, [this] { return !results_.empty(); });
    Result r = std::move(results_.front());
    results_.pop_front();
    return r;
  }

 private:
  void work() {
    while (true) {
      Task task;
      {
        std::unique_lock lock(mutex_);
        task_ready_.wait(lock, [this] { return stop_ || !tasks_.empty(); });
        if (stop_) return;
        task = std::move(tasks_.front());
        tasks_.pop_front();
      }
      Result r;
      try {
        Model snapshot(config_, *task.params);
        r.value = backward(snapshot, batches_[task.batch], task.swapout);
      } catch (...) {
        r.error = std::current_exception();
      }
      r.task = std::move(task);
      {
        std::lock_guard lock(mutex_);
        results_.push_back(std::move(r));
      }
      result_ready_.notify_one();
    }
  }

  model::ModelConfig config_;
  std::span<const Batch> batches_;
  std::mutex mutex_;
  std::condition_variable task_ready_;
  std::condition_variable result_ready_;
  std::deque<Task> tasks_;
  std::deque<Result> results_;
  bool stop_ = false;
  std::vector<std::thread> threads_;
};

}  // namespace

TrainResult train_parallel(Model initial, std::span<const Batch> batches, const TrainConfig& config) {
  Session session(std::move(initial), batches, config);
  WorkerPool pool(config.workers, session.model().config(), batches);
  std::size_t timestamp = 0;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    const double alpha = lr_schedule(epoch, config);
    const auto order = session.epoch_order();
    std::size_t next = 0, applied = 0, in_flight = 0;
    double epoch_loss = 0, drift = 0;
    auto dispatch = [&](Task task) {
      task.params = std::make_shared<const std::vector<double>>(session.model().params());
      task.timestamp = timestamp;
      pool.submit(std::move(task));
      ++in_flight;
    };
    while (applied < order.size()) {
      while (in_flight < config.workers && next < order.size()) {
        Task task;
        task.batch = order[next++];
        task.swapout = session.draw_swapout(task.batch);
        dispatch(std::move(task));
      }
      Result r = pool.next_result();
      --in_flight;
      if (r.error) {
        if (r.task.attempts == 0) {
          r.task.attempts = 1;
          dispatch(std::move(r.task));
          continue;
        }
        try {
          std::rethrow_exception(r.error);
        } catch (const NonFiniteGradient& e) {
          throw TrainingDiverged(epoch, std::string(e.what()) + " in epoch " + std::to_string(epoch));
        }
      }
      if (!std::isfinite(r.value->loss)) {
        throw TrainingDiverged(epoch, "loss became non-finite in epoch " + std::to_string(epoch));
      }
      epoch_loss += r.value->loss;
      drift += static_cast<double>(timestamp - r.task.timestamp);
      session.apply(r.value->gradient, alpha);
      ++timestamp;
      ++applied;
    }
    session.finish_epoch(epoch, epoch_loss, alpha, order.empty() ? 0.0 : drift / static_cast<double>(order.size()));
  }
  return session.result();
}

}  // namespace derivguide::training
