#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

namespace hypercover {

/// Fixed-size pool where each worker owns a deque: it pushes and pops at the front, idle workers
/// steal from the back of other deques. Tasks may submit further tasks.
class WorkStealingPool {
 public:
  using Task = std::function<void()>;

  explicit WorkStealingPool(unsigned threads) {
    if (threads == 0) threads = 1;
    queues_.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) queues_.push_back(std::make_unique<Queue>());
    workers_.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) workers_.emplace_back([this, i] { run(i); });
  }

  WorkStealingPool(const WorkStealingPool&) = delete;
  WorkStealingPool& operator=(const WorkStealingPool&) = delete;

  ~WorkStealingPool() {
    {
      std::lock_guard lock(sleep_mutex_);
      stopping_ = true;
    }
    wake_.notify_all();
    for (auto& t : workers_) t.join();
  }

  unsigned size() const noexcept { return static_cast<unsigned>(queues_.size()); }

  void submit(Task task) {
    pending_.fetch_add(1, std::memory_order_acq_rel);
    const std::size_t target =
        current_owner() == this ? current_index() : next_.fetch_add(1, std::memory_order_relaxed) % queues_.size();
    {
      std::lock_guard lock(queues_[target]->mutex);
      queues_[target]->tasks.push_front(std::move(task));
    }
    {
      std::lock_guard lock(sleep_mutex_);
      ++generation_;
    }
    wake_.notify_one();
  }

  /// Blocks until every submitted task (including tasks they spawned) has finished. Rethrows the
  /// first exception raised by a task.
  void wait_idle() {
    std::unique_lock lock(sleep_mutex_);
    done_.wait(lock, [this] { return pending_.load(std::memory_order_acquire) == 0; });
    if (error_) {
      auto e = error_;
      error_ = nullptr;
      std::rethrow_exception(e);
    }
  }

 private:
  struct Queue {
    std::mutex mutex;
    std::deque<Task> tasks;
  };

  static WorkStealingPool*& current_owner() {
    thread_local WorkStealingPool* owner = nullptr;
    return owner;
  }
  static std::size_t& current_index() {
    thread_local std::size_t index = 0;
    return index;
  }

  bool try_pop(std::size_t i, Task& out) {
    std::lock_guard lock(queues_[i]->mutex);
    if (queues_[i]->tasks.empty()) return false;
    out = std::move(queues_[i]->tasks.front());
    queues_[i]->tasks.pop_front();
    return true;
  }

  bool try_steal(std::size_t thief, Task& out) {
    for (std::size_t k = 1; k < queues_.size(); ++k) {
      auto& q = *queues_[(thief + k) % queues_.size()];
      std::lock_guard lock(q.mutex);
      if (q.tasks.empty()) continue;
      out = std::move(q.tasks.back());
      q.tasks.pop_back();
      return true;
    }
    return false;
  }

  void run(std::size_t index) {
    current_owner() = this;
    current_index() = index;
    while (true) {
      std::uint64_t seen;
      {
        std::lock_guard lock(sleep_mutex_);
        seen = generation_;
      }
      Task task;
      if (try_pop(index, task) || try_steal(index, task)) {
        try {
          task();
        } catch (...) {
          std::lock_guard lock(sleep_mutex_);
          if (!error_) error_ = std::current_exception();
        }
        if (pending_.fetch_sub(1, std::memory_order_acq_rel) == 1) {
          std::lock_guard lock(sleep_mutex_);
          done_.notify_all();
        }
        continue;
      }
      std::unique_lock lock(sleep_mutex_);
      wake_.wait(lock, [&] { return stopping_ || generation_ != seen; });
      if (stopping_) return;
    }
  }

  std::vector<std::unique_ptr<Queue>> queues_;
  std::vector<std::thread> workers_;
  std::atomic<std::size_t> pending_{0};
  std::atomic<std::size_t> next_{0};
  std::mutex sleep_mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  std::uint64_t generation_ = 0;
  bool stopping_ = false;
  std::exception_ptr error_;
};

}  // namespace hypercover
