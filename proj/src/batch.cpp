#include "reachsim/manifest.hpp"
#include "reachsim/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

namespace reachsim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t iteration_seed(std::uint64_t base_seed, Modality modality, std::string_view target, int iteration) {
  std::uint64_t h = fnv1a(to_string(modality));
  h = fnv1a("/", h);
  h = fnv1a(target, h);
  return splitmix64(splitmix64(base_seed) ^ h ^ splitmix64(static_cast<std::uint64_t>(iteration)));
}

std::string trajectory_file_name(Modality modality, std::string_view target, int iteration) {
  char idx[16];
  std::snprintf(idx, sizeof idx, "%03d", iteration);
  return "trajectories/" + std::string(to_string(modality)) + "_" + std::string(target) + "_" + idx + ".csv";
}

std::vector<IterationResult> run_batch(const TaskSpec& spec, const ArmConfig& arm, const SimParams& params,
                                       const BatchOptions& options, const std::filesystem::path& out_dir) {
  spec.validate();
  arm.validate();
  params.validate();
  const std::vector<std::string> targets = options.targets.empty() ? spec.reach_targets() : options.targets;
  for (const auto& t : targets) spec.target(t);

  struct Job {
    Modality modality;
    std::string target;
    int iteration;
  };
  std::vector<Job> jobs;
  for (Modality m : options.modalities) {
    for (const auto& t : targets) {
      for (int i = 0; i < spec.iterations; ++i) jobs.push_back({m, t, i});
    }
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir / "trajectories", ec);
  if (ec) throw std::runtime_error("cannot create " + (out_dir / "trajectories").string() + ": " + ec.message());

  std::vector<IterationResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr io_failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const Job& job = jobs[j];
      const std::uint64_t seed = iteration_seed(options.base_seed, job.modality, job.target, job.iteration);
      IterationResult r;
      try {
        const MotionScript script = default_script(spec, arm, params, job.target, job.modality);
        r = run_iteration(spec, arm, params, job.target, job.modality, script, seed);
      } catch (const std::exception& e) {
        r = IterationResult{};
        r.target = job.target;
        r.target_pos = spec.target(job.target);
        r.modality = job.modality;
        r.label = std::string(to_string(job.modality));
        r.seed = seed;
        r.error = e.what();
      }
      r.iteration = job.iteration;
      try {
        write_trajectory_csv(out_dir / trajectory_file_name(job.modality, job.target, job.iteration), r.trajectory);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!io_failure) io_failure = std::current_exception();
      }
      results[j] = std::move(r);
    }
  };

  unsigned n_threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  if (io_failure) std::rethrow_exception(io_failure);

  write_manifest(out_dir / "manifest.json", make_manifest(spec, arm, params, options.base_seed, results));
  return results;
}

}  // namespace reachsim
