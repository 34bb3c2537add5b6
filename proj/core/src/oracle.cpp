#include "hetstab/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "hetstab/error.hpp"

namespace hetstab {

namespace {

constexpr std::size_t kChunk = 1024;
// Once every coordinate is below -kDeep the orbit has plainly collapsed onto the
// cycle; stop before the next map overflows.
constexpr double kDeep = 1e200;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// splitmix64 stream keyed by (seed, level, sample), independent of scheduling.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t level, std::uint64_t sample) {
    std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ ((level + 1) * 0xd1b54a32d192ed03ULL));
    state_ = mix64(h ^ ((sample + 1) * 0x8cb92ba72f3d8dd7ULL));
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  // Uniform on (0, 1].
  double uniform() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Evaluates fn(chunk) for every chunk on up to `threads` workers. Results are
// returned in chunk order, so reductions over them are order-fixed.
template <typename T, typename F>
std::vector<T> run_chunks(std::size_t n_chunks, unsigned threads, F fn) {
  std::vector<T> out(n_chunks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t c; (c = next.fetch_add(1)) < n_chunks;) out[c] = fn(c);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = n_chunks;
    }
  };
  const auto n = static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1U), n_chunks));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

// Iterates the return map from the incoming section of node j with reusable
// buffers. Not thread-safe; give each worker its own copy.
class BasinTester {
 public:
  BasinTester(const MatrixCycle& cycle, std::size_t j, const EstimatorConfig& config)
      : log_delta_(std::log(config.delta)), turns_(config.max_full_turns) {
    const std::size_t m = cycle.node_count();
    for (std::size_t s = 0; s < m; ++s) {
      maps_.push_back(cycle.basic((j + s) % m));
      offsets_.push_back(cycle.offset((j + s) % m));
    }
    a_.resize(static_cast<Eigen::Index>(cycle.dimension()));
    b_.resize(a_.size());
    history_.reserve(turns_);
  }

  Eigen::Index dimension() const { return a_.size(); }

  bool operator()(const Eigen::VectorXd& eta0) {
    a_ = eta0;
    if (!a_.allFinite() || a_.maxCoeff() >= log_delta_) return false;
    history_.clear();
    for (std::size_t k = 0; k < turns_; ++k) {
      double turn_max = -std::numeric_limits<double>::infinity();
      for (std::size_t s = 0; s < maps_.size(); ++s) {
        b_.noalias() = maps_[s] * a_;
        b_ += offsets_[s];
        a_.swap(b_);
        if (!a_.allFinite()) return false;
        const double mx = a_.maxCoeff();
        if (mx >= log_delta_ || mx > kLogCap) return false;
        turn_max = std::max(turn_max, mx);
      }
      history_.push_back(turn_max);
      if (a_.minCoeff() < -kDeep) break;
    }
    return converging();
  }

 private:
  // Per-turn maxima must drop over the last quarter, by at least as much as
  // over the quarter before (up to rounding slack).
  bool converging() const {
    const std::size_t n = history_.size();
    const std::size_t q = n / 4;
    if (q == 0) return n > 0 && history_.back() < -kDeep;
    const double last = history_[n - 1 - q] - history_[n - 1];
    const double prev = history_[n - 1 - 2 * q] - history_[n - 1 - q];
    return last > 0.0 && last >= 0.999 * prev;
  }

  std::vector<Eigen::MatrixXd> maps_;
  std::vector<Eigen::VectorXd> offsets_;
  double log_delta_;
  std::size_t turns_;
  Eigen::VectorXd a_;
  Eigen::VectorXd b_;
  std::vector<double> history_;
};

struct ChunkTally {
  std::size_t hits = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
};

LevelEstimate to_level(double x, std::size_t n, std::size_t hits) {
  LevelEstimate e;
  e.epsilon = x;
  e.samples = n;
  e.hits = hits;
  e.fraction = static_cast<double>(hits) / static_cast<double>(n);
  e.std_error = std::sqrt(e.fraction * (1.0 - e.fraction) / static_cast<double>(n));
  return e;
}

std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

}  // namespace

void EstimatorConfig::validate() const {
  const auto bad = [](const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); };
  if (!(delta > 0.0) || !std::isfinite(delta)) bad("delta must be positive and finite");
  if (epsilon_ladder.empty()) bad("epsilon ladder is empty");
  for (std::size_t i = 0; i < epsilon_ladder.size(); ++i) {
    const double e = epsilon_ladder[i];
    if (!(e > 0.0) || !(e < delta)) bad("every epsilon must lie in (0, delta)");
    if (i > 0 && !(e < epsilon_ladder[i - 1])) bad("epsilon ladder must be strictly decreasing");
  }
  if (samples_per_level == 0) bad("samples_per_level must be positive");
  if (max_full_turns < 4) bad("max_full_turns must be at least 4");
}

std::vector<double> log_ladder(double first, double last, std::size_t n) {
  if (!(first > 0.0) || !(last > 0.0) || n == 0) {
    throw Error(ErrorKind::InvalidArgument, "log ladder needs positive endpoints and n >= 1");
  }
  if (n == 1) return {first};
  std::vector<double> out(n);
  const double a = std::log(first);
  const double b = std::log(last);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  out.front() = first;
  out.back() = last;
  return out;
}

unsigned resolve_threads(unsigned requested) {
  unsigned n = requested == 0 ? std::max(1U, std::thread::hardware_concurrency()) : requested;
  if (const char* env = std::getenv("HETSTAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

std::optional<Eigen::VectorXd> apply_log_map(const Eigen::MatrixXd& m, const Eigen::VectorXd& eta,
                                             const Eigen::VectorXd& f) {
  if (m.rows() != m.cols() || m.cols() != eta.size() || f.size() != eta.size()) {
    throw Error(ErrorKind::DimensionMismatch, "map and point sizes differ");
  }
  Eigen::VectorXd out = m * eta + f;
  if (!out.allFinite() || out.maxCoeff() > kLogCap) return std::nullopt;
  return out;
}

std::optional<Eigen::VectorXd> apply_matrix_map(const Eigen::MatrixXd& m, const Eigen::VectorXd& x,
                                                const Eigen::VectorXd& consts) {
  if (!((x.array() > 0.0).all()) || !((consts.array() > 0.0).all())) {
    throw Error(ErrorKind::NonPositiveInput, "point and constants must be positive");
  }
  auto eta = apply_log_map(m, x.array().log().matrix(), consts.array().log().matrix());
  if (!eta) return std::nullopt;
  return eta->array().exp().matrix();
}

bool in_delta_basin_log(const MatrixCycle& cycle, std::size_t j, const Eigen::VectorXd& eta,
                        const EstimatorConfig& config) {
  if (!(config.delta > 0.0) || config.max_full_turns < 4) {
    throw Error(ErrorKind::InvalidConfig, "delta must be positive and max_full_turns >= 4");
  }
  BasinTester test(cycle, j, config);
  if (eta.size() != test.dimension()) throw Error(ErrorKind::DimensionMismatch, "point size");
  return test(eta);
}

bool in_delta_basin(const MatrixCycle& cycle, std::size_t j, const Eigen::VectorXd& x,
                    const EstimatorConfig& config) {
  if (!((x.array() > 0.0).all())) {
    throw Error(ErrorKind::NonPositiveInput, "cross-section point must be positive");
  }
  return in_delta_basin_log(cycle, j, x.array().log().matrix(), config);
}

SlopeFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "line fit needs two or more points");
  }
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::InvalidArgument, "line fit needs distinct x values");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.points = x.size();
  return fit;
}

std::string_view to_string(EstimateStatus s) {
  switch (s) {
    case EstimateStatus::Fitted: return "fitted";
    case EstimateStatus::SaturatedInside: return "saturated-inside";
    case EstimateStatus::SaturatedOutside: return "saturated-outside";
    case EstimateStatus::InsufficientResolution: return "insufficient-resolution";
  }
  return "?";
}

BasinEstimate estimate_sigma_mc(const MatrixCycle& cycle, std::size_t j,
                                const EstimatorConfig& config) {
  config.validate();
  if (j >= cycle.node_count()) throw Error(ErrorKind::IndexOutOfRange, "node out of range");
  const unsigned threads = resolve_threads(config.threads);
  const std::size_t n = config.samples_per_level;
  const auto dim = static_cast<Eigen::Index>(cycle.dimension());
  const BasinTester prototype(cycle, j, config);

  BasinEstimate out;
  for (std::size_t level = 0; level < config.epsilon_ladder.size(); ++level) {
    const double log_eps = std::log(config.epsilon_ladder[level]);
    const auto tallies = run_chunks<ChunkTally>(chunk_count(n), threads, [&](std::size_t c) {
      BasinTester test = prototype;
      Eigen::VectorXd eta(dim);
      ChunkTally t;
      for (std::size_t s = c * kChunk; s < std::min(n, (c + 1) * kChunk); ++s) {
        SampleRng rng(config.seed, level, s);
        for (Eigen::Index i = 0; i < dim; ++i) eta(i) = log_eps + std::log(rng.uniform());
        if (test(eta)) ++t.hits;
      }
      return t;
    });
    std::size_t hits = 0;
    for (const auto& t : tallies) hits += t.hits;
    out.levels.push_back(to_level(config.epsilon_ladder[level], n, hits));
  }

  const bool all_in = std::all_of(out.levels.begin(), out.levels.end(),
                                  [](const LevelEstimate& e) { return e.hits == e.samples; });
  const bool all_out = std::all_of(out.levels.begin(), out.levels.end(),
                                   [](const LevelEstimate& e) { return e.hits == 0; });
  if (all_in) {
    out.status = EstimateStatus::SaturatedInside;
    out.sigma_hat = ExtendedReal::plus_infinity();
    return out;
  }
  if (all_out) {
    out.status = EstimateStatus::SaturatedOutside;
    out.sigma_hat = ExtendedReal::minus_infinity();
    return out;
  }

  std::vector<double> x, y_plus, y_minus;
  for (const auto& e : out.levels) {
    if (e.hits == 0 || e.hits == e.samples) continue;
    x.push_back(std::log(e.epsilon));
    y_plus.push_back(std::log1p(-e.fraction));
    y_minus.push_back(std::log(e.fraction));
  }
  if (x.size() < 2) {
    out.status = EstimateStatus::InsufficientResolution;
    return out;
  }
  out.fit_plus = fit_line(x, y_plus);
  out.fit_minus = fit_line(x, y_minus);
  out.status = EstimateStatus::Fitted;
  out.sigma_hat = ExtendedReal(out.fit_plus->slope - out.fit_minus->slope);
  return out;
}

FPlusEstimate estimate_fplus_mc(const AlphaVector& alpha, std::span<const double> r_ladder,
                                std::size_t samples, std::uint64_t seed, unsigned threads) {
  if (r_ladder.empty() || samples == 0) {
    throw Error(ErrorKind::InvalidConfig, "need at least one level and one sample");
  }
  for (double r : r_ladder) {
    if (!std::isfinite(r)) throw Error(ErrorKind::InvalidConfig, "R levels must be finite");
  }
  const auto a = alpha.components();
  const std::size_t dim = a.size();
  const auto kmin = static_cast<std::size_t>(std::min_element(a.begin(), a.end()) - a.begin());

  FPlusEstimate out;
  if (a[kmin] >= 0.0) {
    // alpha . eta < 0 on the whole negative cube: the complement is empty.
    for (double r : r_ladder) out.levels.push_back(to_level(r, samples, 0));
    out.raw_fraction.assign(r_ladder.size(), 0.0);
    out.status = EstimateStatus::SaturatedInside;
    out.f_plus_hat = ExtendedReal::plus_infinity();
    return out;
  }

  const double weight = -a[kmin];
  const unsigned workers = resolve_threads(threads);
  for (std::size_t level = 0; level < r_ladder.size(); ++level) {
    const double r = r_ladder[level];
    const auto tallies = run_chunks<ChunkTally>(chunk_count(samples), workers, [&](std::size_t c) {
      ChunkTally t;
      for (std::size_t s = c * kChunk; s < std::min(samples, (c + 1) * kChunk); ++s) {
        SampleRng rng(seed, level, s);
        double partial = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
          const double u = rng.uniform();
          if (i != kmin) partial += a[i] * (r + std::log(u));
        }
        // alpha . eta >= 0  <=>  eta_k <= partial / weight  <=>  u_k <= exp(partial/weight - r)
        const double p = std::min(1.0, std::exp(partial / weight - r));
        if (rng.uniform() <= p) ++t.hits;
        t.sum += p;
        t.sum_sq += p * p;
      }
      return t;
    });
    ChunkTally total;
    for (const auto& t : tallies) {
      total.hits += t.hits;
      total.sum += t.sum;
      total.sum_sq += t.sum_sq;
    }
    const auto n = static_cast<double>(samples);
    LevelEstimate e;
    e.epsilon = r;
    e.samples = samples;
    e.hits = total.hits;
    e.fraction = total.sum / n;
    const double var = std::max(0.0, total.sum_sq / n - e.fraction * e.fraction);
    e.std_error = std::sqrt(var / n);
    out.levels.push_back(e);
    out.raw_fraction.push_back(static_cast<double>(total.hits) / n);
  }

  std::vector<double> x, y;
  for (const auto& e : out.levels) {
    if (e.fraction > 0.0) {
      x.push_back(e.epsilon);
      y.push_back(std::log(e.fraction));
    }
  }
  if (x.size() < 2) {
    out.status = EstimateStatus::InsufficientResolution;
    return out;
  }
  out.fit = fit_line(x, y);
  out.status = EstimateStatus::Fitted;
  out.f_plus_hat = ExtendedReal(out.fit->slope);
  return out;
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Diverges: return "diverges";
    case Membership::DoesNotDiverge: return "does-not-diverge";
    case Membership::Indeterminate: return "indeterminate";
  }
  return "?";
}

Membership matrix_basin_membership(const Eigen::MatrixXd& m, const Eigen::VectorXd& y,
                                   std::size_t k_max) {
  if (m.rows() != m.cols() || m.cols() != y.size()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix and vector sizes differ");
  }
  if (!((y.array() < 0.0).all())) {
    throw Error(ErrorKind::InvalidArgument, "y must be strictly negative");
  }
  if (k_max < 4) throw Error(ErrorKind::InvalidArgument, "need at least 4 iterations");

  // Track direction u and log-norm separately so large k cannot overflow.
  Eigen::VectorXd u = y / y.norm();
  Eigen::VectorXd next(u.size());
  std::vector<double> log_norm{std::log(y.norm())};
  log_norm.reserve(k_max + 1);
  const std::size_t q = k_max / 4;
  // Oscillating signs (negative or complex subdominant modes) must not pass
  // on the parity of the last step, so every late iterate has to be negative.
  bool late_negative = true;
  for (std::size_t k = 0; k < k_max; ++k) {
    next.noalias() = m * u;
    const double nrm = next.norm();
    if (!(nrm > 0.0)) return Membership::DoesNotDiverge;
    u = next / nrm;
    log_norm.push_back(log_norm.back() + std::log(nrm));
    if (k + 1 > k_max - q) late_negative = late_negative && (u.array() < 0.0).all();
  }

  const double rate = (log_norm.back() - log_norm[k_max - q]) / static_cast<double>(q);
  constexpr double kFlat = 1e-3;
  if (rate < -kFlat) return Membership::DoesNotDiverge;
  if (rate <= kFlat) return Membership::Indeterminate;
  return late_negative ? Membership::Diverges : Membership::DoesNotDiverge;
}

}  // namespace hetstab
